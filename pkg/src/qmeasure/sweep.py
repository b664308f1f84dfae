"""Randomized universality sweeps over measuring-process instances.

Each trial draws dimensions, observables, a state, and a process from a
stream derived from (seed, trial index), evaluates the error-disturbance
ledger, the locally uniform variant, and the four-way precision check,
and tallies violations. The universally valid relations must never fail;
the Heisenberg-type product may, and the census counts how often.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edr import (
    EDR_SLACK,
    EDRReport,
    edr_ledger,
    locally_uniform_rms_disturbance,
    locally_uniform_rms_error,
)
from .jpd import PrecisionReport, theorem2_check
from .operators import (
    DEFAULT_CONSTANTS,
    DEFAULT_TOL,
    PhysicalConstants,
    Tolerances,
    ValidationError,
)
from .sampling import (
    random_density_operator,
    random_hermitian,
    random_measuring_process,
    random_pure_state,
    rng_from,
)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    system_dim: int
    probe_dim: int
    report: EDRReport
    lu_epsilon: float
    lu_eta: float
    lu_oedr_lhs: float
    lu_oedr_holds: bool
    precision: PrecisionReport


@dataclass(frozen=True)
class SweepCensus:
    trials: int
    uedr_failures: int
    oedr_failures: int
    lu_oedr_failures: int
    heisenberg_violations: int
    theorem2_disagreements: int

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "uedr_failures": self.uedr_failures,
            "oedr_failures": self.oedr_failures,
            "lu_oedr_failures": self.lu_oedr_failures,
            "heisenberg_violations": self.heisenberg_violations,
            "theorem2_disagreements": self.theorem2_disagreements,
        }

    @property
    def all_universal_hold(self) -> bool:
        return (self.uedr_failures == 0 and self.oedr_failures == 0
                and self.lu_oedr_failures == 0 and self.theorem2_disagreements == 0)


def run_sweep(dims=(2, 4), trials: int = 100, seed: int = 0, interaction: str = "haar",
              tol: Tolerances = DEFAULT_TOL, constants: PhysicalConstants = DEFAULT_CONSTANTS,
              collect: bool = False):
    """Run a seeded sweep; returns (census, records) with records None
    unless collect is set."""
    lo, hi = int(dims[0]), int(dims[1])
    if lo < 2 or hi < lo:
        raise ValidationError(f"dims range must satisfy 2 <= lo <= hi, got {dims}")
    if trials < 1:
        raise ValidationError("trials must be positive")
    uedr_failures = 0
    oedr_failures = 0
    lu_failures = 0
    heisenberg_violations = 0
    theorem2_disagreements = 0
    records = [] if collect else None
    for t in range(int(trials)):
        rng = rng_from(seed, t)
        ds = int(rng.integers(lo, hi + 1))
        dp = int(rng.integers(lo, hi + 1))
        a = random_hermitian(ds, rng, tol=tol)
        b = random_hermitian(ds, rng, tol=tol)
        rho = (random_pure_state(ds, rng, tol) if rng.integers(0, 2)
               else random_density_operator(ds, rng, tol))
        mp = random_measuring_process(ds, dp, rng, interaction=interaction, tol=tol)

        report = edr_ledger(mp, a, b, rho, constants=constants, tol=tol)
        lu_eps = locally_uniform_rms_error(mp, a, rho, tol)
        lu_eta = locally_uniform_rms_disturbance(mp, b, rho, tol)
        lu_lhs = lu_eps * lu_eta + lu_eps * report.sigma_b + report.sigma_a * lu_eta
        lu_holds = bool(lu_lhs >= report.robertson - EDR_SLACK)
        precision = theorem2_check(mp, a, rho, tol)

        if not report.uedr_holds:
            uedr_failures += 1
        if not report.oedr_holds:
            oedr_failures += 1
        if not lu_holds:
            lu_failures += 1
        if not report.heisenberg_holds:
            heisenberg_violations += 1
        if not precision.consistent:
            theorem2_disagreements += 1
        if collect:
            records.append(TrialRecord(
                trial=t, system_dim=ds, probe_dim=dp, report=report,
                lu_epsilon=lu_eps, lu_eta=lu_eta, lu_oedr_lhs=lu_lhs,
                lu_oedr_holds=lu_holds, precision=precision,
            ))
    census = SweepCensus(
        trials=int(trials),
        uedr_failures=uedr_failures,
        oedr_failures=oedr_failures,
        lu_oedr_failures=lu_failures,
        heisenberg_violations=heisenberg_violations,
        theorem2_disagreements=theorem2_disagreements,
    )
    return census, records
