"""Exactly solvable Gaussian position-measurement models.

Everything here is moment-level: a Gaussian state is a mean vector and a
2x2 covariance matrix for one canonical pair, and a measurement model is
a 4x4 symplectic matrix acting on the stacked variables (x, p_x, y, p_y),
object first, probe second, with the coupling-time product fixed so the
meter reads the object position in one shot.

Two built-in models:

- "von_neumann": x -> x, y -> x + y, p_x -> p_x - p_y, p_y -> p_y.
  The meter picks up the object position, the object momentum absorbs
  the probe momentum, and error times disturbance is bounded below by
  hbar/2, saturated by minimum-uncertainty probes.

- "ozawa_1988": x -> x - y, y -> x, p_x -> -p_y, p_y -> p_x + p_y.
  The meter reads the object position exactly (zero rms error), all
  back-action lands in the conjugate variables, and the error-disturbance
  product is identically zero, strictly below hbar/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import (
    DEFAULT_CONSTANTS,
    DEFAULT_TOL,
    PhysicalConstants,
    Tolerances,
    ValidationError,
)

VON_NEUMANN = "von_neumann"
OZAWA_1988 = "ozawa_1988"

# canonical symplectic form on (x, p_x, y, p_y)
_J = np.array([
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
])

_MODEL_MATRICES = {
    VON_NEUMANN: np.array([
        [1.0, 0.0, 0.0, 0.0],   # x(dt)   = x
        [0.0, 1.0, 0.0, -1.0],  # p_x(dt) = p_x - p_y
        [1.0, 0.0, 1.0, 0.0],   # y(dt)   = x + y
        [0.0, 0.0, 0.0, 1.0],   # p_y(dt) = p_y
    ]),
    OZAWA_1988: np.array([
        [1.0, 0.0, -1.0, 0.0],  # x(dt)   = x - y
        [0.0, 0.0, 0.0, -1.0],  # p_x(dt) = -p_y
        [1.0, 0.0, 0.0, 0.0],   # y(dt)   = x
        [0.0, 1.0, 0.0, 1.0],   # p_y(dt) = p_x + p_y
    ]),
}

_X, _PX, _Y, _PY = 0, 1, 2, 3


class GaussianState:
    """Mean (q, p) and 2x2 covariance of one canonical pair.

    Admissibility requires det(cov) >= (hbar/2)^2 - eq_tol, the
    uncertainty bound for Gaussian states.
    """

    def __init__(self, mean, cov, constants: PhysicalConstants = DEFAULT_CONSTANTS,
                 tol: Tolerances = DEFAULT_TOL):
        mean = np.asarray(mean, dtype=float).reshape(-1)
        cov = np.asarray(cov, dtype=float)
        if mean.shape != (2,):
            raise ValidationError("mean must be a pair (q, p)")
        if cov.shape != (2, 2):
            raise ValidationError("cov must be 2x2")
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(cov)):
            raise ValidationError("Gaussian moments must be finite")
        if abs(cov[0, 1] - cov[1, 0]) > tol.eq_tol:
            raise ValidationError("cov must be symmetric")
        cov = 0.5 * (cov + cov.T)
        if float(np.linalg.eigvalsh(cov).min()) < tol.psd_tol:
            raise ValidationError("cov must be positive semidefinite")
        bound = (constants.hbar / 2.0) ** 2
        if float(np.linalg.det(cov)) < bound - tol.eq_tol:
            raise ValidationError(
                f"cov violates the uncertainty bound: det {np.linalg.det(cov)} < {bound}")
        mean.setflags(write=False)
        cov.setflags(write=False)
        self.mean = mean
        self.cov = cov
        self.constants = constants

    @property
    def mean_q(self) -> float:
        return float(self.mean[0])

    @property
    def mean_p(self) -> float:
        return float(self.mean[1])

    @property
    def sigma_q(self) -> float:
        return float(np.sqrt(self.cov[0, 0]))

    @property
    def sigma_p(self) -> float:
        return float(np.sqrt(self.cov[1, 1]))

    def __repr__(self):
        return f"GaussianState(mean={tuple(self.mean)}, sigma_q={self.sigma_q:.4g}, sigma_p={self.sigma_p:.4g})"


def min_uncertainty_packet(q_center: float, p_center: float, q1: float,
                           constants: PhysicalConstants = DEFAULT_CONSTANTS) -> GaussianState:
    """The Gaussian packet of width parameter q1 centered at (q', p').

    Position variance q1^2/2, momentum variance hbar^2/(2 q1^2), no
    correlation, so sigma(q) sigma(p) = hbar/2 exactly.
    """
    if not q1 > 0:
        raise ValidationError("width parameter q1 must be positive")
    vqq = q1 * q1 / 2.0
    vpp = constants.hbar ** 2 / (2.0 * q1 * q1)
    return GaussianState((q_center, p_center), [[vqq, 0.0], [0.0, vpp]], constants=constants)


@dataclass(frozen=True)
class LinearModel:
    """A measurement interaction as a 4x4 symplectic matrix on
    (x, p_x, y, p_y). The form S J S^T = J must hold exactly."""

    model_id: str
    symplectic: np.ndarray

    def __post_init__(self):
        s = self.symplectic
        if s.shape != (4, 4):
            raise ValidationError("symplectic matrix must be 4x4")
        if not np.array_equal(s @ _J @ s.T, _J):
            raise ValidationError("matrix does not preserve the symplectic form exactly")
        s.setflags(write=False)


def build_model(model_id: str) -> LinearModel:
    """One of the built-in models by id: 'von_neumann' or 'ozawa_1988'."""
    if model_id not in _MODEL_MATRICES:
        raise ValidationError(f"unknown model id {model_id!r}; "
                              f"expected one of {sorted(_MODEL_MATRICES)}")
    return LinearModel(model_id, _MODEL_MATRICES[model_id].copy())


def joint_moments(obj: GaussianState, probe: GaussianState):
    """Mean vector and covariance of the product state on (x, p_x, y, p_y)."""
    mean = np.concatenate([obj.mean, probe.mean])
    cov = np.zeros((4, 4))
    cov[:2, :2] = obj.cov
    cov[2:, 2:] = probe.cov
    return mean, cov


def propagate(model: LinearModel, joint_mean, joint_cov, tol: Tolerances = DEFAULT_TOL):
    """Push joint moments through the interaction: (S m, S V S^T)."""
    m = np.asarray(joint_mean, dtype=float).reshape(-1)
    v = np.asarray(joint_cov, dtype=float)
    if m.shape != (4,):
        raise ValidationError("joint mean must have 4 components")
    if v.shape != (4, 4):
        raise ValidationError("joint covariance must be 4x4")
    if float(np.abs(v - v.T).max()) > tol.eq_tol:
        raise ValidationError("joint covariance must be symmetric")
    if float(np.linalg.eigvalsh(0.5 * (v + v.T)).min()) < tol.psd_tol:
        raise ValidationError("joint covariance must be positive semidefinite")
    s = model.symplectic
    out_cov = s @ v @ s.T
    return s @ m, 0.5 * (out_cov + out_cov.T)


def _second_moment_matrix(obj: GaussianState, probe: GaussianState) -> np.ndarray:
    mean, cov = joint_moments(obj, probe)
    return cov + np.outer(mean, mean)


@dataclass(frozen=True)
class ModelEDR:
    """Error-disturbance figures of one Gaussian model run.

    epsilon is the rms gap between the meter after the interaction and
    the object position before it; eta is the rms momentum kick. The
    kennard_bound is hbar/2, and heisenberg_violated records
    product < hbar/2 - 1e-12.
    """

    model_id: str
    epsilon: float
    eta: float
    product: float
    kennard_bound: float
    heisenberg_violated: bool


def model_edr(model: LinearModel, obj: GaussianState, probe: GaussianState,
              constants: PhysicalConstants = DEFAULT_CONSTANTS) -> ModelEDR:
    """Exact rms error and disturbance of a linear model on Gaussian inputs.

    Noise and disturbance are the linear combinations y(dt) - x(0) and
    p_x(dt) - p_x(0); their second moments come straight from the joint
    Gaussian moments, so an identically zero combination gives an exact
    0.0 (no rounding).
    """
    s = model.symplectic
    m2 = _second_moment_matrix(obj, probe)
    v_noise = s[_Y, :].copy()
    v_noise[_X] -= 1.0
    v_dist = s[_PX, :].copy()
    v_dist[_PX] -= 1.0
    eps = 0.0 if not v_noise.any() else float(np.sqrt(max(v_noise @ m2 @ v_noise, 0.0)))
    eta = 0.0 if not v_dist.any() else float(np.sqrt(max(v_dist @ m2 @ v_dist, 0.0)))
    product = eps * eta
    bound = constants.hbar / 2.0
    return ModelEDR(
        model_id=model.model_id,
        epsilon=eps,
        eta=eta,
        product=product,
        kennard_bound=bound,
        heisenberg_violated=bool(product < bound - 1e-12),
    )


def _gaussian_density(grid: np.ndarray, mean: float, var: float) -> np.ndarray:
    return np.exp(-((grid - mean) ** 2) / (2.0 * var)) / np.sqrt(2.0 * np.pi * var)


def _check_grid(grid) -> np.ndarray:
    g = np.asarray(grid, dtype=float).reshape(-1)
    if g.size == 0:
        raise ValidationError("grid must be non-empty")
    if g.size > 1 and not np.all(np.diff(g) > 0):
        raise ValidationError("grid must be strictly increasing")
    return g


def output_distribution(model: LinearModel, obj: GaussianState, probe: GaussianState,
                        grid) -> np.ndarray:
    """Meter reading density on a grid after the interaction.

    For the von Neumann model this is the convolution of the object
    position density with the probe position density; as the probe
    narrows it converges to the object's Born density.
    """
    g = _check_grid(grid)
    mean, cov = propagate(model, *joint_moments(obj, probe))
    var = float(cov[_Y, _Y])
    if var <= 0:
        raise ValidationError("meter variance is not positive")
    return _gaussian_density(g, float(mean[_Y]), var)


def position_density(state: GaussianState, grid) -> np.ndarray:
    """Born density of position for a Gaussian state, on a grid."""
    g = _check_grid(grid)
    return _gaussian_density(g, state.mean_q, float(state.cov[0, 0]))


def conditional_position_spread(model: LinearModel, obj: GaussianState,
                                probe: GaussianState) -> float:
    """Object position spread after conditioning on the meter reading.

    Gaussian conditioning of x(dt) on y(dt); for the von Neumann model
    this equals (1/Vxx + 1/Vyy)^(-1/2), which never exceeds the rms
    error, the approximate-repeatability property of the model.
    """
    _, cov = propagate(model, *joint_moments(obj, probe))
    var_meter = float(cov[_Y, _Y])
    if var_meter <= 0:
        raise ValidationError("meter variance is not positive")
    var = float(cov[_X, _X]) - float(cov[_X, _Y]) ** 2 / var_meter
    return float(np.sqrt(max(var, 0.0)))
