"""Gyrotropic-medium dispersion and selective suppression of circular modes.

For on-axis propagation the two circular polarizations see refractive
indices squared  n2_pm = (eps1 +- eps2)(mu1 +- mu2); a sign choice of the
tensor parameters can make one of them negative (evanescent), and a finite
chamber additionally expels modes whose wave vector falls below pi / a.
Either mechanism removes one circular mode together with its zero-point
field, leaving an uncancelled vacuum phase.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .fock import vacuum_phase
from .geometry import SphericalAngles

__all__ = [
    "GyrotropicMedium",
    "ModeStatus",
    "NetVacuumPhase",
    "refractive_indices_squared",
    "mode_status",
    "casimir_cutoff",
    "effective_wave_vector",
    "net_vacuum_phase",
]


@dataclass(frozen=True)
class GyrotropicMedium:
    """Tensor parameters of a gyrotropic medium (dimensionless).

    eps3 and mu3 are carried for completeness; the on-axis dispersion along
    the third axis does not involve them.
    """

    eps1: float
    eps2: float
    eps3: float = 1.0
    mu1: float = 1.0
    mu2: float = 0.0
    mu3: float = 1.0

    def __post_init__(self):
        for name in ("eps1", "eps2", "eps3", "mu1", "mu2", "mu3"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


class ModeStatus(NamedTuple):
    n2_plus: float
    n2_minus: float
    plus_propagates: bool
    minus_propagates: bool


class NetVacuumPhase(NamedTuple):
    """Uncancelled zero-point phase and which circular modes survived."""

    phase: float
    plus_survives: bool
    minus_survives: bool

    @property
    def no_propagating_modes(self) -> bool:
        return not (self.plus_survives or self.minus_survives)


def refractive_indices_squared(medium: GyrotropicMedium):
    """(n2_plus, n2_minus) = ((eps1+eps2)(mu1+mu2), (eps1-eps2)(mu1-mu2))."""
    return (
        (medium.eps1 + medium.eps2) * (medium.mu1 + medium.mu2),
        (medium.eps1 - medium.eps2) * (medium.mu1 - medium.mu2),
    )


def mode_status(medium: GyrotropicMedium) -> ModeStatus:
    """Sign test of the two indices; n^2 = 0 counts as non-propagating."""
    n2p, n2m = refractive_indices_squared(medium)
    return ModeStatus(n2p, n2m, n2p > 0.0, n2m > 0.0)


def casimir_cutoff(k, chamber_length) -> bool:
    """True when a mode of wave vector ``k`` is expelled from the chamber.

    Inside a region of scale ``chamber_length`` = a, zero-point modes with
    k strictly below pi / a cannot form; k = pi / a exactly still propagates.
    """
    if k <= 0:
        raise ValueError(f"wave vector must be positive, got {k!r}")
    if chamber_length <= 0:
        raise ValueError(f"chamber_length must be positive, got {chamber_length!r}")
    return k < np.pi / chamber_length


def effective_wave_vector(medium: GyrotropicMedium, k0, polarization):
    """In-medium wave vector n_pm * k0, or None when the mode is evanescent."""
    if k0 <= 0:
        raise ValueError(f"k0 must be positive, got {k0!r}")
    n2p, n2m = refractive_indices_squared(medium)
    if polarization == +1:
        n2 = n2p
    elif polarization == -1:
        n2 = n2m
    else:
        raise ValueError(f"polarization must be +1 or -1, got {polarization!r}")
    if n2 <= 0.0:
        return None
    return float(np.sqrt(n2) * k0)


def _survives(medium: GyrotropicMedium, k0, chamber_length, polarization) -> bool:
    k_eff = effective_wave_vector(medium, k0, polarization)
    if k_eff is None:
        return False
    if chamber_length is None:
        return True
    return not casimir_cutoff(k_eff, chamber_length)


def net_vacuum_phase(
    medium: GyrotropicMedium,
    k0,
    angles: SphericalAngles,
    i: int | None = None,
    chamber_length=None,
) -> NetVacuumPhase:
    """Sum of the zero-point phases of the circular modes that survive.

    A mode survives when its index squared is positive and, if a chamber
    length is given, its in-medium wave vector is not expelled.  Both modes
    surviving gives exact cancellation (phase 0); exactly one surviving
    leaves +-W(t_i)/2; none surviving gives 0 with
    ``no_propagating_modes`` set.
    """
    if i is None:
        i = len(angles.times) - 1
    phase = 0.0
    surv = {}
    for pol in (+1, -1):
        surv[pol] = _survives(medium, k0, chamber_length, pol)
        if surv[pol]:
            phase += vacuum_phase(pol, angles, i)
    return NetVacuumPhase(phase=phase, plus_survives=surv[+1], minus_survives=surv[-1])
