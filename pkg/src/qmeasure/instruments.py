"""Measuring processes, CP instruments, and POVMs.

A measuring process is the quadruple (probe space, probe state, coupling
unitary, meter observable). Reading the meter after the interaction
induces a completely positive instrument on the system: an outcome-indexed
family of CP maps summing to a trace-preserving channel. Every CP
instrument conversely arises this way, and dilate() constructs an explicit
realization with a pure probe.

Conventions: composite operators live on system x probe (kron order),
instrument outcomes are distinct reals sorted ascending, and instrument
equality is always judged on per-outcome Choi matrices, never on Kraus
lists (the Kraus gauge is not unique).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import (
    DEFAULT_TOL,
    DensityOperator,
    HermitianObservable,
    SpectralDecomposition,
    Tolerances,
    ValidationError,
    _as_matrix,
    _as_observable_matrix,
    _as_state_matrix,
    as_operator,
    dagger,
    hermitian_part,
    operator_distance,
    partial_trace,
    spectral_decompose,
    std_dev,
    tensor,
)


class ZeroProbabilityError(ValidationError):
    """Conditioning on an outcome set of (numerically) zero probability."""


@dataclass(frozen=True)
class OutcomeDistribution:
    """Real outcome values with their probabilities."""

    outcomes: tuple
    probabilities: tuple

    def __post_init__(self):
        if len(self.outcomes) != len(self.probabilities):
            raise ValidationError("outcomes and probabilities must have equal length")

    def as_dict(self) -> dict:
        return {"outcomes": list(self.outcomes), "probabilities": list(self.probabilities)}

    def mean(self) -> float:
        return float(sum(x * p for x, p in zip(self.outcomes, self.probabilities)))

    def variance(self) -> float:
        m = self.mean()
        return float(sum((x - m) ** 2 * p for x, p in zip(self.outcomes, self.probabilities)))


def _distribution(outcomes, probs, tol: Tolerances) -> OutcomeDistribution:
    cleaned = []
    for p in probs:
        p = float(np.real(p))
        if p < tol.psd_tol:
            raise ValidationError(f"negative probability {p}")
        cleaned.append(max(p, 0.0))
    total = sum(cleaned)
    if abs(total - 1.0) > max(tol.eq_tol, 1e-12 * len(cleaned)):
        raise ValidationError(f"probabilities sum to {total}, expected 1")
    return OutcomeDistribution(tuple(float(x) for x in outcomes), tuple(cleaned))


def born_distribution(a, rho, tol: Tolerances = DEFAULT_TOL) -> OutcomeDistribution:
    """Outcome statistics Pr{a_i} = Tr[P_i rho] of an observable in a state."""
    dec = spectral_decompose(a, tol)
    rm = _as_state_matrix(rho, tol)
    probs = [np.trace(p @ rm).real for p in dec.projectors]
    return _distribution(dec.eigenvalues, probs, tol)


class MeasuringProcess:
    """Probe state, coupling unitary, and meter observable.

    The system dimension is inferred from the unitary, which acts on
    system x probe. The meter acts on the probe alone.
    """

    def __init__(self, probe_state: DensityOperator, unitary, meter: HermitianObservable,
                 tol: Tolerances = DEFAULT_TOL):
        if not isinstance(probe_state, DensityOperator):
            probe_state = DensityOperator(probe_state, tol=tol)
        if not isinstance(meter, HermitianObservable):
            meter = HermitianObservable(meter, tol=tol)
        u = as_operator(unitary)
        if meter.dim != probe_state.dim:
            raise ValidationError("meter and probe state dimensions differ")
        if u.shape[0] % probe_state.dim != 0:
            raise ValidationError("unitary dimension is not a multiple of the probe dimension")
        if operator_distance(dagger(u) @ u, np.eye(u.shape[0])) > tol.eq_tol:
            raise ValidationError("coupling matrix is not unitary within eq_tol")
        self.probe_state = probe_state
        self.unitary = u
        self.meter = meter
        self.probe_dim = probe_state.dim
        self.system_dim = u.shape[0] // probe_state.dim
        self.tol = tol

    def composite_state(self, rho) -> np.ndarray:
        """rho x rho0 on system x probe."""
        rm = _as_state_matrix(rho, self.tol)
        if rm.shape[0] != self.system_dim:
            raise ValidationError("state dimension does not match the system")
        return np.kron(rm, self.probe_state.matrix)

    def embedded_system(self, a) -> np.ndarray:
        """A(0) = A x 1, the system observable before the interaction."""
        am = _as_observable_matrix(a, self.tol)
        if am.shape[0] != self.system_dim:
            raise ValidationError("observable dimension does not match the system")
        return np.kron(am, np.eye(self.probe_dim))

    def evolved_meter(self) -> np.ndarray:
        """M(dt) = U+ (1 x M) U, the meter after the interaction."""
        big = np.kron(np.eye(self.system_dim), self.meter.matrix)
        return hermitian_part(dagger(self.unitary) @ big @ self.unitary)

    def evolved_system(self, b) -> np.ndarray:
        """B(dt) = U+ (B x 1) U, the system observable after the interaction."""
        bm = _as_observable_matrix(b, self.tol)
        if bm.shape[0] != self.system_dim:
            raise ValidationError("observable dimension does not match the system")
        big = np.kron(bm, np.eye(self.probe_dim))
        return hermitian_part(dagger(self.unitary) @ big @ self.unitary)

    def __repr__(self):
        return f"MeasuringProcess(system_dim={self.system_dim}, probe_dim={self.probe_dim})"


def apply_kraus(kraus_ops, rho) -> np.ndarray:
    """Sum_j K_j rho K_j+ for one outcome's Kraus family."""
    rm = _as_matrix(rho)
    out = np.zeros_like(rm)
    for k in kraus_ops:
        out = out + k @ rm @ dagger(k)
    return out


def choi_matrix(kraus_ops, dim: int) -> np.ndarray:
    """Choi matrix C[(i,m),(j,n)] = Phi(|i><j|)[m,n] of one outcome's CP map."""
    c = np.zeros((dim * dim, dim * dim), dtype=complex)
    for k in kraus_ops:
        v = np.asarray(k, dtype=complex).T.reshape(-1)  # v[(i,m)] = K[m,i]
        c += np.outer(v, v.conj())
    return c


def kraus_from_choi(choi, dim: int, cutoff: float) -> list:
    """Kraus operators of a CP map from its Choi eigendecomposition.

    Eigenvalues at or below cutoff are discarded. Operators come out
    ordered by descending Choi eigenvalue.
    """
    w, v = np.linalg.eigh(hermitian_part(np.asarray(choi, dtype=complex)))
    ops = []
    for idx in range(len(w) - 1, -1, -1):
        lam = float(w[idx])
        if lam <= cutoff:
            break
        ops.append(np.sqrt(lam) * v[:, idx].reshape(dim, dim).T)
    return ops


class CPInstrument:
    """Outcome-indexed family of CP maps summing to a channel.

    outcomes are distinct reals; kraus is a per-outcome list of operator
    lists. The stacked family satisfies sum_{m,j} K+K = 1 within eq_tol.
    Outcomes (with their Kraus lists) are stored sorted ascending.
    """

    def __init__(self, outcomes, kraus, tol: Tolerances = DEFAULT_TOL):
        outcomes = [float(x) for x in outcomes]
        if len(outcomes) != len(kraus):
            raise ValidationError("need one Kraus list per outcome")
        if len(outcomes) == 0:
            raise ValidationError("instrument needs at least one outcome")
        if len(set(outcomes)) != len(outcomes):
            raise ValidationError("outcome values must be distinct")
        order = np.argsort(outcomes)
        fam = []
        dim = None
        for i in order:
            ops = []
            for k in kraus[i]:
                km = as_operator(k)
                if dim is None:
                    dim = km.shape[0]
                elif km.shape[0] != dim:
                    raise ValidationError("all Kraus operators must share one dimension")
                ops.append(km)
            fam.append(tuple(ops))
        if dim is None:
            raise ValidationError("instrument has no Kraus operators at all")
        total = np.zeros((dim, dim), dtype=complex)
        for ops in fam:
            for k in ops:
                total = total + dagger(k) @ k
        if operator_distance(total, np.eye(dim)) > max(tol.eq_tol, 1e-8):
            raise ValidationError("Kraus family is not trace-preserving: sum K+K != 1")
        self.outcomes = tuple(outcomes[i] for i in order)
        self.kraus = tuple(fam)
        self.dim = dim
        self.tol = tol

    def _select(self, outcome_set) -> list:
        """Indices of outcomes matching a value or iterable of values."""
        if np.isscalar(outcome_set):
            outcome_set = [outcome_set]
        idx = []
        for target in outcome_set:
            hits = [i for i, x in enumerate(self.outcomes) if abs(x - float(target)) <= self.tol.eq_tol]
            if not hits:
                raise ValidationError(f"outcome {target} not found in instrument")
            idx.extend(hits)
        return sorted(set(idx))

    def apply(self, rho, outcome_set=None) -> np.ndarray:
        """Unnormalized state change I(D)rho, D defaulting to all outcomes."""
        rm = _as_matrix(rho)
        idx = range(len(self.outcomes)) if outcome_set is None else self._select(outcome_set)
        out = np.zeros_like(rm, dtype=complex)
        for i in idx:
            out = out + apply_kraus(self.kraus[i], rm)
        return out

    def effect(self, i: int) -> np.ndarray:
        """POVM effect sum_j K+K of the i-th outcome."""
        e = np.zeros((self.dim, self.dim), dtype=complex)
        for k in self.kraus[i]:
            e = e + dagger(k) @ k
        return hermitian_part(e)

    def choi(self, i: int) -> np.ndarray:
        return choi_matrix(self.kraus[i], self.dim)

    def __repr__(self):
        return f"CPInstrument(outcomes={self.outcomes}, dim={self.dim})"


class POVM:
    """Positive effects, one per outcome, summing to the identity."""

    def __init__(self, outcomes, effects, tol: Tolerances = DEFAULT_TOL):
        outcomes = [float(x) for x in outcomes]
        if len(outcomes) != len(effects):
            raise ValidationError("need one effect per outcome")
        if len(set(outcomes)) != len(outcomes):
            raise ValidationError("outcome values must be distinct")
        order = np.argsort(outcomes)
        effs = []
        dim = None
        for i in order:
            e = as_operator(effects[i])
            if dim is None:
                dim = e.shape[0]
            elif e.shape[0] != dim:
                raise ValidationError("all effects must share one dimension")
            e = hermitian_part(e)
            if float(np.linalg.eigvalsh(e).min()) < tol.psd_tol:
                raise ValidationError("effect is not positive semidefinite")
            e.setflags(write=False)
            effs.append(e)
        total = sum(effs)
        if operator_distance(total, np.eye(dim)) > max(tol.eq_tol, 1e-8):
            raise ValidationError("effects do not sum to the identity")
        self.outcomes = tuple(outcomes[i] for i in order)
        self.effects = tuple(effs)
        self.dim = dim
        self.tol = tol

    def probabilities(self, rho, tol: Tolerances = None) -> OutcomeDistribution:
        tol = tol or self.tol
        rm = _as_state_matrix(rho, tol)
        probs = [np.trace(e @ rm).real for e in self.effects]
        return _distribution(self.outcomes, probs, tol)

    def __repr__(self):
        return f"POVM(outcomes={self.outcomes}, dim={self.dim})"


def instrument_from_process(mp: MeasuringProcess, tol: Tolerances = None) -> CPInstrument:
    """The CP instrument induced by reading the meter of a process.

    For each spectral value m of the meter with projector Q_m,
    I(m)rho = Tr_probe[(1 x Q_m) U (rho x rho0) U+ (1 x Q_m)], and the
    Kraus family of each outcome comes from the Choi factorization of
    that map with eigenvalue cutoff eq_tol.
    """
    tol = tol or mp.tol
    mdec = spectral_decompose(mp.meter, tol)
    d = mp.system_dim
    u = mp.unitary
    rho0 = mp.probe_state.matrix
    eye_s = np.eye(d)
    outcomes = []
    families = []
    for m_val, q in zip(mdec.eigenvalues, mdec.projectors):
        sandwich = np.kron(eye_s, q)

        def chan(x):
            big = u @ np.kron(x, rho0) @ dagger(u)
            big = sandwich @ big @ sandwich
            return partial_trace(big, (d, mp.probe_dim), keep="first")

        choi = np.zeros((d * d, d * d), dtype=complex)
        basis = np.zeros((d, d), dtype=complex)
        for i in range(d):
            for j in range(d):
                basis[i, j] = 1.0
                block = chan(basis)
                basis[i, j] = 0.0
                choi[i * d:(i + 1) * d, j * d:(j + 1) * d] = block  # C[(i,m),(j,n)] = Phi(E_ij)[m,n]
        ops = kraus_from_choi(choi, d, cutoff=tol.eq_tol)
        outcomes.append(float(m_val))
        families.append(ops)
    return CPInstrument(outcomes, families, tol=tol)


def povm_of(instrument: CPInstrument) -> POVM:
    """The outcome statistics of an instrument as a POVM."""
    effects = [instrument.effect(i) for i in range(len(instrument.outcomes))]
    return POVM(instrument.outcomes, effects, tol=instrument.tol)


def outcome_probabilities(instrument: CPInstrument, rho, tol: Tolerances = None) -> OutcomeDistribution:
    """Pr{m} = Tr[I(m) rho] for each outcome."""
    tol = tol or instrument.tol
    rm = _as_state_matrix(rho, tol)
    probs = [np.trace(apply_kraus(instrument.kraus[i], rm)).real
             for i in range(len(instrument.outcomes))]
    return _distribution(instrument.outcomes, probs, tol)


def post_state(instrument: CPInstrument, outcome_set, rho, tol: Tolerances = None) -> DensityOperator:
    """Normalized state after observing an outcome in outcome_set.

    Raises ZeroProbabilityError if the conditioning probability is at or
    below eq_tol (zero-probability condition).
    """
    tol = tol or instrument.tol
    rm = _as_state_matrix(rho, tol)
    unnorm = instrument.apply(rm, outcome_set)
    p = float(np.trace(unnorm).real)
    if p <= tol.eq_tol:
        raise ZeroProbabilityError(
            f"zero-probability condition: outcome set has probability {p}")
    return DensityOperator(hermitian_part(unnorm) / p, tol=tol)


def luders_instrument(a, tol: Tolerances = DEFAULT_TOL) -> CPInstrument:
    """The projective instrument rho -> P_i rho P_i of an observable."""
    dec = spectral_decompose(a, tol)
    return CPInstrument(list(dec.eigenvalues), [[p] for p in dec.projectors], tol=tol)


def dilate(instrument: CPInstrument, tol: Tolerances = None) -> MeasuringProcess:
    """An explicit measuring process realizing a CP instrument.

    The probe dimension is the total Kraus count r, with one block of
    size r_m per outcome. The coupling is the unitary completion of the
    isometry psi x e0 -> sum_{m,j} (K_{m,j} psi) x |m,j>, completed by
    Gram-Schmidt over canonical basis vectors in index order, so the
    construction is deterministic. The probe starts in the pure state
    |e0> (the first block vector) and the meter takes the value
    outcomes[m] on block m. Reading the meter of the resulting process
    reproduces the instrument (per-outcome Choi agreement).
    """
    tol = tol or instrument.tol
    d = instrument.dim
    counts = [len(ops) for ops in instrument.kraus]
    probe_dim = sum(counts)
    if probe_dim == 0:
        raise ValidationError("cannot dilate an instrument with no Kraus operators")
    n = d * probe_dim

    # isometry columns, placed at the probe index e0 = 0
    u = np.zeros((n, n), dtype=complex)
    for i in range(d):
        col = np.zeros(n, dtype=complex)
        b = 0
        for ops in instrument.kraus:
            for k in ops:
                col[b::probe_dim] = col[b::probe_dim] + k[:, i]  # component (s, b) at s*probe_dim + b
                b += 1
        u[:, i * probe_dim] = col

    filled = [i * probe_dim for i in range(d)]
    basis = u[:, filled]  # orthonormal up to eq_tol because sum K+K = 1
    free = [j for j in range(n) if j not in set(filled)]
    cursor = 0
    for k_idx in range(n):
        if cursor >= len(free):
            break
        e = np.zeros(n, dtype=complex)
        e[k_idx] = 1.0
        v = e - basis @ (dagger(basis) @ e)
        v = v - basis @ (dagger(basis) @ v)  # second pass for orthogonality
        nrm = np.linalg.norm(v)
        if nrm > 1e-6:
            v = v / nrm
            u[:, free[cursor]] = v
            basis = np.concatenate([basis, v[:, None]], axis=1)
            cursor += 1
    if cursor < len(free):
        raise ValidationError("unitary completion failed")

    meter_diag = np.concatenate([np.full(c, x) for x, c in zip(instrument.outcomes, counts) if c > 0])
    meter = HermitianObservable(np.diag(meter_diag), tol=tol)
    e0 = np.zeros(probe_dim)
    e0[0] = 1.0
    probe = DensityOperator.pure(e0, tol=tol)
    return MeasuringProcess(probe, u, meter, tol=tol)


def instrument_choi_distance(a: CPInstrument, b: CPInstrument, tol: Tolerances = None) -> float:
    """Max-abs distance between per-outcome Choi matrices of two instruments.

    Outcomes are matched by value within eq_tol; an outcome present on one
    side only is compared against the zero map.
    """
    tol = tol or a.tol
    if a.dim != b.dim:
        raise ValidationError("instruments act on different dimensions")
    zero = np.zeros((a.dim ** 2, a.dim ** 2), dtype=complex)
    values = sorted(set(a.outcomes) | set(b.outcomes))
    merged = []
    for v in values:
        if merged and v - merged[-1][-1] <= tol.eq_tol:
            merged[-1].append(v)
        else:
            merged.append([v])
    dist = 0.0
    for cluster in merged:
        ca = zero.copy()
        cb = zero.copy()
        for i, x in enumerate(a.outcomes):
            if any(abs(x - v) <= tol.eq_tol for v in cluster):
                ca = ca + a.choi(i)
        for i, x in enumerate(b.outcomes):
            if any(abs(x - v) <= tol.eq_tol for v in cluster):
                cb = cb + b.choi(i)
        dist = max(dist, operator_distance(ca, cb))
    return dist


@dataclass(frozen=True)
class RepeatabilityReport:
    """Residuals r(a) = sqrt(Tr[(A - a) rho_a (A - a)]) per observed outcome.

    repeatable means every residual is at most epsilon + eq_tol. The
    ar_bound_ok flag records the approximate-repeatability corollary
    sigma(A, rho_a) <= r(a) on each post-measurement state.
    """

    repeatable: bool
    worst_residual: float
    outcomes: tuple
    residuals: tuple
    post_std_devs: tuple
    ar_bound_ok: bool


def check_repeatability(instrument: CPInstrument, a, rho, epsilon: float,
                        tol: Tolerances = None) -> RepeatabilityReport:
    """Check epsilon-repeatability outcome by outcome.

    Outcomes with probability at or below eq_tol are skipped. The residual
    uses the raw outcome label even when it is not an eigenvalue of A.
    Residuals cannot be resolved below sqrt(machine eps) times the
    operator scale, so the repeatable flag and the AR comparison use that
    noise floor (or eq_tol, whichever is larger) as slack.
    """
    tol = tol or instrument.tol
    am = _as_observable_matrix(a, tol)
    rm = _as_state_matrix(rho, tol)
    scale = 1.0 + float(np.abs(am).max()) * am.shape[0]
    floor = max(tol.eq_tol, float(np.sqrt(np.finfo(float).eps)) * scale)
    outs, residuals, sds = [], [], []
    probs = outcome_probabilities(instrument, rm, tol)
    for i, (x, p) in enumerate(zip(probs.outcomes, probs.probabilities)):
        if p <= tol.eq_tol:
            continue
        rho_a = post_state(instrument, x, rm, tol)
        shifted = am - x * np.eye(instrument.dim)
        r2 = np.trace(shifted @ rho_a.matrix @ shifted).real
        outs.append(float(x))
        residuals.append(float(np.sqrt(max(r2, 0.0))))
        sds.append(std_dev(am, rho_a, tol))
    worst = max(residuals) if residuals else 0.0
    ar_ok = all(s <= r + floor for s, r in zip(sds, residuals))
    return RepeatabilityReport(
        repeatable=bool(worst <= epsilon + floor),
        worst_residual=worst,
        outcomes=tuple(outs),
        residuals=tuple(residuals),
        post_std_devs=tuple(sds),
        ar_bound_ok=bool(ar_ok),
    )
