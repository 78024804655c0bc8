"""Shared draw helpers for the randomized checks (fixed seeds everywhere)."""

import math

from qsatom import DriveConfig, PhaseShiftTable, ScatteringScalars


def random_scalars(rng) -> ScatteringScalars:
    """Scalar set with the l >= 1 norms consistent with some amplitude pair."""
    d0p, d0m = rng.uniform(-0.4, 0.4, 2)
    pgp, pgm = rng.uniform(0.0, 0.1, 2)
    lo = (math.sqrt(pgp) - math.sqrt(pgm)) ** 2
    hi = (math.sqrt(pgp) + math.sqrt(pgm)) ** 2
    pdg = rng.uniform(lo, hi)
    return ScatteringScalars(d0p, d0m, pgp, pgm, pdg, rng.uniform(-0.01, 0.01))


def random_drive(rng, gamma_min=0.0, eta_max=6.0) -> DriveConfig:
    return DriveConfig(rng.uniform(0.0, eta_max), rng.uniform(-8.0, 8.0),
                       rng.uniform(gamma_min, 1.5))


def random_table(rng, lmax=None) -> PhaseShiftTable:
    if lmax is None:
        lmax = int(rng.integers(0, 7))
    return PhaseShiftTable(rng.uniform(-1.0, 1.0, lmax + 1),
                           rng.uniform(-1.0, 1.0, lmax + 1))


def mirror(sc: ScatteringScalars, dc: DriveConfig):
    """Parameter flip (s -> -s, z -> -z) implemented at the input level."""
    return (ScatteringScalars(-sc.delta0_plus, -sc.delta0_minus,
                              sc.norm2_pg_plus, sc.norm2_pg_minus,
                              sc.norm2_pdg, -sc.eps_r),
            DriveConfig(dc.eta, -dc.ztilde, dc.gammatilde))
