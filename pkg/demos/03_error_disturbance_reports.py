"""
Root-mean-square error and disturbance ledgers
==============================================

For a measuring process (probe state, coupling unitary, meter), the noise
operator compares the evolved meter with the target observable and the
disturbance operator compares an observable before and after the coupling.
edr_ledger() collects the rms figures plus every term of the product-form,
correlation-corrected, and spread-corrected inequalities.
"""

import numpy as np

import qmeasure as qm

sx = np.array([[0.0, 1.0], [1.0, 0.0]])
sy = np.array([[0.0, -1.0j], [1.0j, 0.0]])
sz = np.diag([1.0, -1.0])

ket0 = qm.DensityOperator.pure([1.0, 0.0])
plus = qm.DensityOperator.pure([1.0, 1.0])

# a controlled-not coupling copies the sz value onto the probe
cnot = np.eye(4)
cnot[2:, 2:] = sx
copier = qm.MeasuringProcess(probe_state=ket0, unitary=cnot, meter=sz)


def show(tag, rep):
    print(f"--- {tag}")
    print(f"  epsilon={rep.epsilon:.6f}  eta={rep.eta:.6f}  "
          f"sigma_A={rep.sigma_a:.6f}  sigma_B={rep.sigma_b:.6f}")
    print(f"  bound={rep.robertson:.6f}")
    print(f"  product form : {rep.heisenberg_product:.6f}  "
          f"holds={rep.heisenberg_holds}")
    print(f"  + correlation: {rep.uedr_lhs:.6f}  holds={rep.uedr_holds}")
    print(f"  + spreads    : {rep.oedr_lhs:.6f}  holds={rep.oedr_holds}")


# measuring sz on |+> with the copier: zero error, but sx gets scrambled
show("copier, A=sz B=sx on |+>", qm.edr_ledger(copier, sz, sx, plus))

# same process, conjugate pair swapped roles
show("copier, A=sx B=sy on |0>", qm.edr_ledger(copier, sx, sy, ket0))

# meter read without any coupling: infinite ignorance about A, zero
# disturbance, and the naive product bound fails outright
idle = qm.MeasuringProcess(probe_state=ket0, unitary=np.eye(4), meter=sz)
show("uncoupled meter, A=sx B=sy on |0>", qm.edr_ledger(idle, sx, sy, ket0))

# the locally uniform figures take the worst case over the cyclic subspace
# generated from the state, so they dominate the plain rms figures
eps_bar = qm.locally_uniform_rms_error(copier, sz, plus)
eta_bar = qm.locally_uniform_rms_disturbance(copier, sx, plus)
print("locally uniform error:", round(eps_bar, 6),
      " disturbance:", round(eta_bar, 6))
