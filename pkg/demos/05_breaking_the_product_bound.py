"""
Where the naive error-disturbance bound fails and what replaces it
==================================================================

The product form eps * eta >= (1/2)|<[A,B]>| looks like the preparation
uncertainty relation but is not universally valid. Two corrected forms are:
with a correlation term (uedr) and with the state spreads (oedr). Random
finite-dimensional processes never violate the corrected forms, while
simple uncoupled meters already break the product form.
"""

import numpy as np

import qmeasure as qm

# an uncoupled meter: reads nothing about A (finite error), disturbs
# nothing (eta = 0), so the product is zero while the bound is not
sx = np.array([[0.0, 1.0], [1.0, 0.0]])
sy = np.array([[0.0, -1.0j], [1.0j, 0.0]])
sz = np.diag([1.0, -1.0])
ket0 = qm.DensityOperator.pure([1.0, 0.0])

idle = qm.MeasuringProcess(probe_state=qm.DensityOperator.pure([1.0, 0.0]),
                           unitary=np.eye(4), meter=sz)
rep = qm.edr_ledger(idle, sx, sy, ket0)
print("uncoupled meter: product =", rep.heisenberg_product,
      " bound =", rep.robertson)
print("  product form holds:", rep.heisenberg_holds)
print("  corrected (correlation) holds:", rep.uedr_holds,
      " lhs =", rep.uedr_lhs)
print("  corrected (spreads) holds:", rep.oedr_holds,
      " lhs =", round(rep.oedr_lhs, 6))

# Gaussian version: the zero-error linear model reads position exactly,
# so the product is exactly zero, below hbar/2
model = qm.build_model(qm.OZAWA_1988)
obj = qm.min_uncertainty_packet(0.0, 0.0, 1.0)
probe = qm.min_uncertainty_packet(0.0, 0.0, 1.0)
g = qm.model_edr(model, obj, probe)
print("zero-error model: eps =", g.epsilon, " eta =", round(g.eta, 6),
      " product =", g.product, " hbar/2 =", g.kennard_bound)

# random sweep: corrected forms never fail; a targeted uncoupled sweep
# racks up product-form violations
census, _ = qm.run_sweep(dims=(2, 4), trials=300, seed=7)
print("haar sweep:", census.as_dict())

census_id, _ = qm.run_sweep(dims=(2, 3), trials=60, seed=8,
                            interaction="identity")
print("uncoupled sweep:", census_id.as_dict())
print("product-form violations found:", census_id.heisenberg_violations)
