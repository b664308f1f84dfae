"""
Instruments, POVMs, and measurement dilation
============================================

A measurement is more than its outcome statistics: the instrument also fixes
the post-measurement states. This walks through the projective (Luders)
instrument of a qubit observable, its statistics-only POVM shadow, and the
round trip instrument -> measuring process -> instrument.
"""

import numpy as np

import qmeasure as qm

sz = np.diag([1.0, -1.0])
plus = qm.DensityOperator.pure([1.0, 1.0])

inst = qm.luders_instrument(sz)
print("outcomes:", inst.outcomes)

dist = qm.outcome_probabilities(inst, plus)
print("probabilities on |+>:", dist.probabilities)

# conditioning on outcome +1 collapses |+> onto |0>
post = qm.post_state(inst, [1.0], plus)
print("post state given +1:\n", np.real(post.matrix))

# conditioning on the full outcome set applies the total channel
channel_out = qm.post_state(inst, inst.outcomes, plus)
print("unconditioned output (dephased):\n", np.real(channel_out.matrix))

# the POVM keeps the statistics and forgets the state change
povm = qm.povm_of(inst)
print("effects sum to identity:",
      np.allclose(sum(np.asarray(e) for e in povm.effects), np.eye(2)))

# every instrument comes from some measuring process. dilate() builds one
# with a pure probe and a meter read out after the interaction.
mp = qm.dilate(inst)
print("probe dimension:", mp.probe_dim)
back = qm.instrument_from_process(mp)
print("round-trip Choi distance:", qm.instrument_choi_distance(inst, back))

# repeatability: measuring twice gives the same outcome for projective
# instruments (residual at machine-precision scale)
report = qm.check_repeatability(inst, sz, plus, epsilon=0.0)
print("repeatable:", report.repeatable,
      " worst residual:", report.worst_residual)

# a random non-projective instrument generally is not repeatable
rng = qm.rng_from(42)
noisy = qm.random_cp_instrument(2, 2, rng)
report = qm.check_repeatability(noisy, sz, plus, epsilon=0.0)
print("random instrument repeatable:", report.repeatable,
      " worst residual:", round(report.worst_residual, 4))
