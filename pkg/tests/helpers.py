"""Shared fixtures-by-hand for the test suite: standard matrices and
constructed measuring processes with known exact behavior."""

import numpy as np

import qmeasure as qm

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)
EYE2 = np.eye(2, dtype=complex)

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_YPLUS = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)

CNOT = np.kron(P0, EYE2) + np.kron(P1, SX)


def cnot_process() -> qm.MeasuringProcess:
    """System-controlled CNOT onto a |0> probe read out with sigma_z."""
    return qm.MeasuringProcess(qm.DensityOperator(P0), CNOT, qm.HermitianObservable(SZ))


def trivial_process(system_dim=2, probe_dim=2) -> qm.MeasuringProcess:
    """No interaction, identity meter: the single-outcome identity instrument."""
    return qm.MeasuringProcess(
        qm.DensityOperator.maximally_mixed(probe_dim),
        np.eye(system_dim * probe_dim, dtype=complex),
        qm.HermitianObservable(np.eye(probe_dim)),
    )


def identity_coupling_process(meter, probe_state) -> qm.MeasuringProcess:
    """U = 1 with a chosen probe-side meter; disturbs nothing."""
    probe = probe_state if isinstance(probe_state, qm.DensityOperator) else qm.DensityOperator(probe_state)
    dim = 2 * probe.dim
    return qm.MeasuringProcess(probe, np.eye(dim, dtype=complex), qm.HermitianObservable(meter))


def independent_meter_process(a, rho) -> qm.MeasuringProcess:
    """Probe prepared in a copy of rho, meter a copy of A, no coupling.

    The meter outcome is then distributed exactly like A but statistically
    independent of it: probability reproducible, never precise (unless
    sigma(A, rho) = 0).
    """
    rho = rho if isinstance(rho, qm.DensityOperator) else qm.DensityOperator(rho)
    am = np.asarray(a, dtype=complex) if not isinstance(a, qm.HermitianObservable) else a.matrix
    dim = rho.dim * rho.dim
    return qm.MeasuringProcess(rho, np.eye(dim, dtype=complex), qm.HermitianObservable(am))


def dilated_luders(a) -> qm.MeasuringProcess:
    """Realization of the projective instrument of an observable."""
    return qm.dilate(qm.luders_instrument(a))


def shifted_meter(mp: qm.MeasuringProcess, c: float) -> qm.MeasuringProcess:
    """Same process with the meter displaced by a constant."""
    meter = qm.HermitianObservable(mp.meter.matrix + c * np.eye(mp.probe_dim))
    return qm.MeasuringProcess(mp.probe_state, mp.unitary, meter)
