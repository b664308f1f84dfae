"""Joint probability distributions and measurement precision.

Two observables that commute in a state (on its support, not necessarily
as operators) admit a genuine joint probability distribution of outcomes.
For a measuring process the relevant pair is the target observable before
the interaction, A(0), and the meter after it, M(dt); when they commute in
rho x rho0 the Gauss rms of that joint distribution coincides with the
rms error. Without commutation one still has the weak joint distribution,
whose atoms may be complex or negative.

A process is precise in a state when the (weak) joint distribution is
concentrated on the diagonal x = y. theorem2_check evaluates the four
numerically checkable faces of that property: strong and weak diagonal
concentration, vanishing rms error across the cyclic subspace, and
probability reproducibility across the cyclic subspace. They are
equivalent, so the four flags must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edr import cyclic_subspace, noise_moment_operator
from .instruments import MeasuringProcess, born_distribution
from .operators import (
    DEFAULT_TOL,
    Tolerances,
    ValidationError,
    _as_observable_matrix,
    _as_state_matrix,
    hermitian_part,
    operator_distance,
    partial_trace,
    spectral_decompose,
)


def commute_in_state(x, y, rho, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether [P_i, Q_j] rho = 0 for all spectral projector pairs.

    Commutation in a state is weaker than operator commutation: it only
    constrains the support of rho.
    """
    xm = _as_observable_matrix(x, tol)
    ym = _as_observable_matrix(y, tol)
    rm = _as_state_matrix(rho, tol)
    dx = spectral_decompose(xm, tol)
    dy = spectral_decompose(ym, tol)
    for p in dx.projectors:
        for q in dy.projectors:
            if float(np.abs((p @ q - q @ p) @ rm).max()) > tol.eq_tol:
                return False
    return True


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome atoms of two observables commuting in a state.

    weights[i, j] = Tr[P_i Q_j rho], real with a -psd_tol floor, total 1.
    """

    x_atoms: np.ndarray
    y_atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.weights.shape != (len(self.x_atoms), len(self.y_atoms)):
            raise ValidationError("weights shape does not match atom counts")
        self.x_atoms.setflags(write=False)
        self.y_atoms.setflags(write=False)
        self.weights.setflags(write=False)

    def x_marginal(self) -> np.ndarray:
        return self.weights.sum(axis=1)

    def y_marginal(self) -> np.ndarray:
        return self.weights.sum(axis=0)


def joint_distribution(x, y, rho, tol: Tolerances = DEFAULT_TOL) -> JointDistribution:
    """The joint distribution of two observables commuting in a state.

    Raises if the pair fails commute_in_state, if any weight has an
    imaginary residue above eq_tol, if a weight falls below the psd_tol
    floor, or if a marginal strays from the Born distribution.
    """
    xm = _as_observable_matrix(x, tol)
    ym = _as_observable_matrix(y, tol)
    rm = _as_state_matrix(rho, tol)
    if not commute_in_state(xm, ym, rm, tol):
        raise ValidationError("observables do not commute in the state")
    dx = spectral_decompose(xm, tol)
    dy = spectral_decompose(ym, tol)
    w = np.zeros((len(dx.eigenvalues), len(dy.eigenvalues)))
    for i, p in enumerate(dx.projectors):
        for j, q in enumerate(dy.projectors):
            val = complex(np.trace(p @ q @ rm))
            if abs(val.imag) > tol.eq_tol:
                raise ValidationError(f"joint weight has imaginary residue {val.imag}")
            if val.real < tol.psd_tol:
                raise ValidationError(f"negative joint weight {val.real}")
            w[i, j] = max(val.real, 0.0)
    total = float(w.sum())
    if abs(total - 1.0) > max(tol.eq_tol, 1e-12 * w.size):
        raise ValidationError(f"joint weights sum to {total}")
    jd = JointDistribution(np.array(dx.eigenvalues), np.array(dy.eigenvalues), w)
    bx = born_distribution(xm, rm, tol)
    by = born_distribution(ym, rm, tol)
    if np.abs(jd.x_marginal() - np.array(bx.probabilities)).max() > max(tol.eq_tol, 1e-10):
        raise ValidationError("x marginal does not reproduce the Born distribution")
    if np.abs(jd.y_marginal() - np.array(by.probabilities)).max() > max(tol.eq_tol, 1e-10):
        raise ValidationError("y marginal does not reproduce the Born distribution")
    return jd


def gauss_rms(jd: JointDistribution) -> float:
    """Root-mean-square gauge sqrt(sum w_ij (y_j - x_i)^2) of a joint
    distribution, the classical rms deviation between the two outcomes."""
    dx = jd.y_atoms[None, :] - jd.x_atoms[:, None]
    return float(np.sqrt(max(float((jd.weights * dx ** 2).sum()), 0.0)))


@dataclass(frozen=True)
class WeakJointDistribution:
    """Quasi-joint distribution Tr[P_i E_j rho]; atoms may be complex."""

    x_atoms: np.ndarray
    y_atoms: np.ndarray
    weights: np.ndarray  # complex

    def __post_init__(self):
        if self.weights.shape != (len(self.x_atoms), len(self.y_atoms)):
            raise ValidationError("weights shape does not match atom counts")
        self.x_atoms.setflags(write=False)
        self.y_atoms.setflags(write=False)
        self.weights.setflags(write=False)

    def x_marginal(self) -> np.ndarray:
        return self.weights.sum(axis=1)

    def y_marginal(self) -> np.ndarray:
        return self.weights.sum(axis=0)


def weak_joint_distribution(mp: MeasuringProcess, a, rho,
                            tol: Tolerances = None) -> WeakJointDistribution:
    """Weak joint distribution of A(0) and M(dt) in rho x rho0.

    Always defined; real nonnegative exactly when the pair commutes in
    the state. Marginals are real and reproduce the Born distributions
    of A(0) and M(dt).
    """
    tol = tol or mp.tol
    am = _as_observable_matrix(a, tol)
    joint = mp.composite_state(rho)
    da = spectral_decompose(am, tol)
    dm = spectral_decompose(mp.evolved_meter(), tol)
    eye_k = np.eye(mp.probe_dim)
    w = np.zeros((len(da.eigenvalues), len(dm.eigenvalues)), dtype=complex)
    for i, p in enumerate(da.projectors):
        big_p = np.kron(p, eye_k)
        for j, e in enumerate(dm.projectors):
            w[i, j] = complex(np.trace(big_p @ e @ joint))
    total = complex(w.sum())
    if abs(total - 1.0) > max(tol.eq_tol, 1e-10):
        raise ValidationError(f"weak joint weights sum to {total}")
    wjd = WeakJointDistribution(np.array(da.eigenvalues), np.array(dm.eigenvalues), w)
    if np.abs(wjd.x_marginal().imag).max() > max(tol.eq_tol, 1e-10):
        raise ValidationError("x marginal of weak joint distribution is not real")
    if np.abs(wjd.y_marginal().imag).max() > max(tol.eq_tol, 1e-10):
        raise ValidationError("y marginal of weak joint distribution is not real")
    ba = born_distribution(am, _as_state_matrix(rho, tol), tol)
    if np.abs(wjd.x_marginal().real - np.array(ba.probabilities)).max() > max(tol.eq_tol, 1e-10):
        raise ValidationError("x marginal does not reproduce the Born distribution of A")
    bm_probs = np.array([np.trace(e @ joint).real for e in dm.projectors])
    if np.abs(wjd.y_marginal().real - bm_probs).max() > max(tol.eq_tol, 1e-10):
        raise ValidationError("y marginal does not reproduce the meter distribution")
    return wjd


def _diagonal_concentrated(x_atoms, y_atoms, weights, tol: Tolerances) -> bool:
    """True when every atom with |x - y| > eq_tol has |weight| <= eq_tol."""
    for i, xv in enumerate(x_atoms):
        for j, yv in enumerate(y_atoms):
            if abs(xv - yv) > tol.eq_tol and abs(weights[i, j]) > tol.eq_tol:
                return False
    return True


def is_precise(mp: MeasuringProcess, a, rho, mode: str = "strong",
               tol: Tolerances = None) -> bool:
    """Whether the process reproduces A exactly in the state rho.

    mode "strong": A(0) and M(dt) commute in rho x rho0 and their joint
    distribution sits on the diagonal. mode "weak": the weak joint
    distribution sits on the diagonal in modulus. Strong implies weak;
    for measurement precision the two agree (theorem2_check).
    """
    tol = tol or mp.tol
    if mode == "weak":
        wjd = weak_joint_distribution(mp, a, rho, tol)
        return _diagonal_concentrated(wjd.x_atoms, wjd.y_atoms, wjd.weights, tol)
    if mode != "strong":
        raise ValidationError(f"mode must be 'strong' or 'weak', got {mode!r}")
    am = _as_observable_matrix(a, tol)
    joint = mp.composite_state(rho)
    a0 = np.kron(am, np.eye(mp.probe_dim))
    mdt = mp.evolved_meter()
    if not commute_in_state(a0, mdt, joint, tol):
        return False
    jd = joint_distribution(a0, mdt, joint, tol)
    return _diagonal_concentrated(jd.x_atoms, jd.y_atoms, jd.weights, tol)


def is_nondisturbing(mp: MeasuringProcess, b, rho, tol: Tolerances = None) -> bool:
    """Whether B is left undisturbed in rho: B(0) and B(dt) commute in
    rho x rho0 with a diagonal-concentrated joint distribution."""
    tol = tol or mp.tol
    bm = _as_observable_matrix(b, tol)
    joint = mp.composite_state(rho)
    b0 = np.kron(bm, np.eye(mp.probe_dim))
    bdt = mp.evolved_system(bm)
    if not commute_in_state(b0, bdt, joint, tol):
        return False
    jd = joint_distribution(b0, bdt, joint, tol)
    return _diagonal_concentrated(jd.x_atoms, jd.y_atoms, jd.weights, tol)


def _cluster(values, tol: Tolerances):
    """Group sorted values into clusters separated by more than eq_tol."""
    out = []
    for v in sorted(values):
        if out and v - out[-1][-1] <= tol.eq_tol:
            out[-1].append(v)
        else:
            out.append([v])
    return out


def _process_povm(mp: MeasuringProcess, tol: Tolerances):
    """Meter outcome values with their POVM effects on the system."""
    dm = spectral_decompose(mp.evolved_meter(), tol)
    ref = np.kron(np.eye(mp.system_dim), mp.probe_state.matrix)
    effects = []
    for e in dm.projectors:
        eff = partial_trace(e @ ref, (mp.system_dim, mp.probe_dim), keep="first")
        effects.append(hermitian_part(eff))
    return list(dm.eigenvalues), effects


def probability_reproducible(mp: MeasuringProcess, a, rho, tol: Tolerances = None) -> bool:
    """Whether the meter statistics in rho reproduce the Born statistics
    of A in rho, matching outcome values within eq_tol."""
    tol = tol or mp.tol
    am = _as_observable_matrix(a, tol)
    rm = _as_state_matrix(rho, tol)
    ba = born_distribution(am, rm, tol)
    m_values, m_effects = _process_povm(mp, tol)
    m_probs = [float(np.trace(e @ rm).real) for e in m_effects]
    tagged = [(v, p, "a") for v, p in zip(ba.outcomes, ba.probabilities)]
    tagged += [(v, p, "m") for v, p in zip(m_values, m_probs)]
    prob_tol = max(tol.eq_tol, 1e-10)
    for cluster in _cluster([t[0] for t in tagged], tol):
        lo, hi = cluster[0], cluster[-1]
        pa = sum(p for v, p, side in tagged if lo <= v <= hi and side == "a")
        pm = sum(p for v, p, side in tagged if lo <= v <= hi and side == "m")
        if abs(pa - pm) > prob_tol:
            return False
    return True


@dataclass(frozen=True)
class PrecisionReport:
    """Four numerically checkable faces of measurement precision in a state.

    The underlying conditions are mathematically equivalent, so the flags
    agree whenever the numerical checks are conclusive.
    """

    strong_precise: bool
    weak_precise: bool
    eps_zero_on_cyclic: bool
    prob_repro_on_cyclic: bool

    def flags(self) -> tuple:
        return (self.strong_precise, self.weak_precise,
                self.eps_zero_on_cyclic, self.prob_repro_on_cyclic)

    @property
    def consistent(self) -> bool:
        return len(set(self.flags())) == 1


def theorem2_check(mp: MeasuringProcess, a, rho, tol: Tolerances = None) -> PrecisionReport:
    """Evaluate the four equivalent precision conditions independently.

    strong/weak: diagonal concentration of the (weak) joint distribution
    of A(0) and M(dt) in rho x rho0. eps_zero_on_cyclic: the noise second
    moment compressed to the cyclic subspace of (A, rho) has top
    eigenvalue at most eq_tol. prob_repro_on_cyclic: the process POVM and
    the spectral measure of A agree as quadratic forms on that subspace,
    outcome cluster by outcome cluster.
    """
    tol = tol or mp.tol
    am = _as_observable_matrix(a, tol)
    rm = _as_state_matrix(rho, tol)
    strong = is_precise(mp, am, rm, mode="strong", tol=tol)
    weak = is_precise(mp, am, rm, mode="weak", tol=tol)

    sub = cyclic_subspace(am, rm, tol)
    t_op = noise_moment_operator(mp, am)
    top = float(np.linalg.eigvalsh(hermitian_part(sub.compress(t_op))).max())
    eps_zero = bool(top <= tol.eq_tol)

    da = spectral_decompose(am, tol)
    m_values, m_effects = _process_povm(mp, tol)
    pc = sub.projector()
    tagged = [(v, p, "proj") for v, p in zip(da.eigenvalues, da.projectors)]
    tagged += [(v, e, "eff") for v, e in zip(m_values, m_effects)]
    repro = True
    for cluster in _cluster([t[0] for t in tagged], tol):
        lo, hi = cluster[0], cluster[-1]
        proj_sum = np.zeros_like(am)
        eff_sum = np.zeros_like(am)
        for v, op, side in tagged:
            if lo <= v <= hi:
                if side == "proj":
                    proj_sum = proj_sum + op
                else:
                    eff_sum = eff_sum + op
        gap = operator_distance(pc @ (eff_sum - proj_sum) @ pc, np.zeros_like(am))
        if gap > max(tol.eq_tol, 1e-9):
            repro = False
            break
    return PrecisionReport(
        strong_precise=bool(strong),
        weak_precise=bool(weak),
        eps_zero_on_cyclic=eps_zero,
        prob_repro_on_cyclic=bool(repro),
    )
