"""
Two exactly solvable position-measurement models
================================================

Both models couple an object particle to a probe particle through a linear
phase-space map and read the probe position afterwards. Moments propagate
exactly, so error and disturbance come out in closed form.

Model "von_neumann": the probe position shifts by the object position. Error
and disturbance trade off against each other and their product respects the
hbar/2 bound, saturating it for minimum-uncertainty probes.

Model "ozawa_1988": a contrived coupling that writes the object position
into the meter exactly (zero rms error) while still disturbing momentum by
a bounded amount.
"""

import numpy as np

import qmeasure as qm

obj = qm.min_uncertainty_packet(q_center=0.3, p_center=-0.1, q1=1.2)
probe = qm.min_uncertainty_packet(q_center=0.0, p_center=0.0, q1=0.7)

for model_id in (qm.VON_NEUMANN, qm.OZAWA_1988):
    model = qm.build_model(model_id)
    rep = qm.model_edr(model, obj, probe)
    print(f"--- {model_id}")
    print(f"  epsilon(q)      = {rep.epsilon:.6f}")
    print(f"  eta(p)          = {rep.eta:.6f}")
    print(f"  product         = {rep.product:.6f}")
    print(f"  hbar/2          = {rep.kennard_bound:.6f}")
    print(f"  below the bound : {rep.heisenberg_violated}")

# sweep the probe width for the shift model: narrow probes read position
# sharply but kick the momentum, wide probes do the opposite
print("--- error/disturbance trade-off (von_neumann)")
model = qm.build_model(qm.VON_NEUMANN)
for q1 in (0.25, 0.5, 1.0, 2.0, 4.0):
    p = qm.min_uncertainty_packet(0.0, 0.0, q1)
    rep = qm.model_edr(model, obj, p)
    print(f"  probe q1={q1:4.2f}  eps={rep.epsilon:.4f}  "
          f"eta={rep.eta:.4f}  product={rep.product:.4f}")

# meter output density vs the intrinsic position density of the object:
# the readout is the object density blurred by the probe width
grid = np.linspace(-4.0, 4.0, 9)
born = qm.position_density(obj, grid)
out = qm.output_distribution(model, obj, probe, grid)
print("--- output density vs position density")
for y, b, o in zip(grid, born, out):
    print(f"  y={y:+.1f}  born={b:.5f}  meter={o:.5f}")

# conditioning the object on the meter readout leaves a spread no larger
# than the rms error of the readout itself
spread = qm.conditional_position_spread(model, obj, probe)
rep = qm.model_edr(model, obj, probe)
print("conditional spread:", round(spread, 6), " rms error:",
      round(rep.epsilon, 6))
