"""Occupation-number and zero-point phases of the two circular modes.

The phase accumulated over a swept solid angle W is diagonal in the two-mode
occupation basis: the left-handed mode contributes -weight_L(n_L) * W and the
right-handed mode +weight_R(n_R) * W, where the weight per mode is n under
normal ordering and n + 1/2 under symmetric (Weyl) ordering.  The +-1/2
pieces are the zero-point contribution; they cancel in the sum, which is why
the per-mode operators are exposed separately and never only as a total.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .geometry import SphericalAngles, solid_angle_series

__all__ = [
    "Ordering",
    "FockLadder",
    "cyclic_phases",
    "quantal_geometric_phase",
    "vacuum_phase",
    "mode_weights",
    "fock_weight_operator",
    "mode_phase_operators",
    "number_operator",
    "phase_spectrum",
]


class Ordering(enum.Enum):
    """Operator-ordering choice for the mode weights."""

    NORMAL = "normal"        # weight(n) = n: zero-point term deleted
    SYMMETRIC = "symmetric"  # weight(n) = n + 1/2: zero-point term kept

    @classmethod
    def coerce(cls, value) -> "Ordering":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"ordering must be 'normal' or 'symmetric', got {value!r}") from None


def _weight(n, ordering: Ordering) -> float:
    if ordering is Ordering.SYMMETRIC:
        return n + 0.5
    return float(n)


def _check_occupation(n, name) -> int:
    if n != int(n) or n < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class FockLadder:
    """Two-mode (left/right circular) occupation space truncated at ``n_max``.

    Basis states |n_left, n_right> are indexed n_left * (n_max + 1) + n_right,
    giving dimension (n_max + 1)^2.  Truncation only bounds the sweep tables;
    the phase weights are exact in n.
    """

    n_max: int = 8
    ordering: Ordering = Ordering.SYMMETRIC

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        object.__setattr__(self, "ordering", Ordering.coerce(self.ordering))

    @property
    def dim(self) -> int:
        return (self.n_max + 1) ** 2

    def index(self, n_left: int, n_right: int) -> int:
        n_left = _check_occupation(n_left, "n_left")
        n_right = _check_occupation(n_right, "n_right")
        if n_left > self.n_max or n_right > self.n_max:
            raise ValueError(f"occupation exceeds truncation n_max={self.n_max}")
        return n_left * (self.n_max + 1) + n_right

    def labels(self):
        """(n_left, n_right) pairs in basis order."""
        per = self.n_max + 1
        return [(nl, nr) for nl in range(per) for nr in range(per)]


def cyclic_phases(n_left, n_right, cone_angle, ordering=Ordering.SYMMETRIC):
    """Per-mode phases after one full cone cycle of half-angle ``cone_angle``.

    Returns (phi_left, phi_right) with
    phi_left  = -weight(n_left)  * 2 pi (1 - cos cone_angle)
    phi_right = +weight(n_right) * 2 pi (1 - cos cone_angle).
    """
    n_left = _check_occupation(n_left, "n_left")
    n_right = _check_occupation(n_right, "n_right")
    if not 0.0 <= cone_angle <= np.pi:
        raise ValueError(f"cone_angle must lie in [0, pi], got {cone_angle!r}")
    ordering = Ordering.coerce(ordering)
    cycle = 2.0 * np.pi * (1.0 - np.cos(cone_angle))
    return -_weight(n_left, ordering) * cycle, +_weight(n_right, ordering) * cycle


def quantal_geometric_phase(n_left, n_right, angles: SphericalAngles, i: int | None = None):
    """Occupation-difference phase (n_right - n_left) * W(t_i).

    W is the cumulative swept solid angle of the trajectory; the zero-point
    halves cancel in this difference, so ordering does not enter.
    """
    n_left = _check_occupation(n_left, "n_left")
    n_right = _check_occupation(n_right, "n_right")
    series = (n_right - n_left) * solid_angle_series(angles)
    if i is None:
        return series
    return float(series[i])


def vacuum_phase(polarization, angles: SphericalAngles, i: int | None = None):
    """Zero-point phase sigma * W(t_i) / 2 of one circular mode.

    The two polarizations carry opposite halves, so their sum vanishes
    identically; isolating one of them is the point of the gyrotropic
    suppression scheme in :mod:`fiberphase.media`.
    """
    if polarization not in (-1, +1):
        raise ValueError(f"polarization must be +1 or -1, got {polarization!r}")
    series = polarization * 0.5 * solid_angle_series(angles)
    if i is None:
        return series
    return float(series[i])


def mode_weights(ladder: FockLadder):
    """Diagonal weight arrays (weight_left, weight_right) over the basis.

    Entry b of weight_left is weight(n_left(b)) and likewise for the right
    mode; under symmetric ordering each is its occupation plus one half.
    """
    per = ladder.n_max + 1
    occ = np.arange(per, dtype=float)
    w = occ + 0.5 if ladder.ordering is Ordering.SYMMETRIC else occ
    weight_left = np.repeat(w, per)
    weight_right = np.tile(w, per)
    return weight_left, weight_right


def mode_phase_operators(ladder: FockLadder):
    """Signed per-mode phase generators (G_left, G_right), diagonal.

    The phase of basis state |n_left, n_right> over a swept solid angle W is
    G_left * W for the left mode and G_right * W for the right one, i.e.
    G_left = -diag(weight_left) and G_right = +diag(weight_right).  At the
    vacuum state under symmetric ordering the entries are -1/2 and +1/2;
    keeping them separate is what stops the zero-point pieces from silently
    cancelling.
    """
    wl, wr = mode_weights(ladder)
    return np.diag(-wl), np.diag(+wr)


def fock_weight_operator(ladder: FockLadder) -> np.ndarray:
    """Combined phase generator: diag of weight_right - weight_left.

    The total phase over a swept solid angle W is this operator times W; use
    :func:`mode_phase_operators` when the zero-point halves must stay
    visible, since they cancel in this combination.
    """
    wl, wr = mode_weights(ladder)
    return np.diag(wr - wl)


def number_operator(ladder: FockLadder, mode: str) -> np.ndarray:
    """Diagonal occupation operator for mode 'left' or 'right' (exact integers)."""
    per = ladder.n_max + 1
    occ = np.arange(per, dtype=float)
    if mode == "left":
        return np.diag(np.repeat(occ, per))
    if mode == "right":
        return np.diag(np.tile(occ, per))
    raise ValueError(f"mode must be 'left' or 'right', got {mode!r}")


def phase_spectrum(ladder: FockLadder, cone_angle) -> np.ndarray:
    """Cyclic phases for every basis state, as a structured table.

    Columns: n_left, n_right, phi_left, phi_right, phi_total, in basis order
    (n_left outer, n_right inner).
    """
    rows = np.zeros(
        ladder.dim,
        dtype=[
            ("n_left", int),
            ("n_right", int),
            ("phi_left", float),
            ("phi_right", float),
            ("phi_total", float),
        ],
    )
    for b, (nl, nr) in enumerate(ladder.labels()):
        pl, pr = cyclic_phases(nl, nr, cone_angle, ladder.ordering)
        rows[b] = (nl, nr, pl, pr, pl + pr)
    return rows
