"""Spin transport along a wave-vector trajectory and phase bookkeeping.

The driving generator is  H(t) = (k x k_dot)/k^2 . S ; a state prepared in an
eigenstate of the spin projection k_hat . S stays in it exactly (the
projection solves the Liouville-von Neumann equation for this H), so the
projection is conserved and the accumulated phase splits into a dynamical
part -Int <H> dt (identically zero here, since the generator's coefficient
vector is orthogonal to k_hat) and a geometric remainder.

Polarization convention (receiver/optics handedness): ``polarization`` = +1
labels right-handed and -1 left-handed circular light, and the spin
projection onto k_hat of a polarization-sigma photon is **-sigma**.  With
this labeling a right-handed photon on a counterclockwise cone of half-angle
c gains +2 pi (1 - cos c) per cycle, matching the occupation-number phase
formulas in :mod:`fiberphase.fock`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .geometry import FiberPath, SphericalAngles, derivative_uniform, k_dot, rotation_vector, solid_angle_series
from .spin import SpinTriple, helicity_eigenstates, spin1_matrices

__all__ = [
    "HamiltonianSample",
    "SpinorTrajectory",
    "PhaseDecomposition",
    "OrthogonalPassageWarning",
    "hamiltonian_coefficients",
    "effective_hamiltonian",
    "hamiltonian_from_rotation",
    "evolve",
    "invariant_residual",
    "invariant_residual_series",
    "phase_decomposition",
    "analytic_noncyclic_phase",
    "helicity_expectations",
]

OVERLAP_FLOOR = 1e-9  # below this |<psi0|psi>|, the total phase is flagged


class OrthogonalPassageWarning(UserWarning):
    """The running state passed (nearly) orthogonal to the initial one."""


@dataclass(frozen=True)
class HamiltonianSample:
    """Generator at one sample: coefficient 3-vector h and the matrix h . S."""

    h: np.ndarray
    matrix: np.ndarray


@dataclass(frozen=True)
class SpinorTrajectory:
    """Evolved 3-component spinor along a path.

    ``polarization`` is the circular-polarization label (+1 right, -1 left);
    the conserved spin projection onto k_hat equals ``-polarization``.
    """

    times: np.ndarray
    states: np.ndarray
    polarization: int

    @property
    def spin_projection(self) -> int:
        return -self.polarization


@dataclass(frozen=True)
class PhaseDecomposition:
    """Unwrapped phase record along a trajectory (radians).

    total      : arg <psi(0)|psi(t)>, continuous branch
    dynamical  : -Int_0^t <psi|H|psi> dt'
    geometric  : total - dynamical
    flagged    : samples where |<psi(0)|psi(t)>| < OVERLAP_FLOOR; their phases
                 are interpolated from neighbours and untrustworthy
    """

    times: np.ndarray
    total: np.ndarray
    dynamical: np.ndarray
    geometric: np.ndarray
    flagged: np.ndarray


def hamiltonian_coefficients(path: FiberPath) -> np.ndarray:
    """Coefficient vectors h(t_i) = (k x k_dot)/k^2 at every sample, shape (n, 3)."""
    k = path.k_vectors()
    return np.cross(k, k_dot(path)) / path.k_mag**2


def effective_hamiltonian(path: FiberPath, spin: SpinTriple, i: int) -> HamiltonianSample:
    """Generator (k x k_dot)/k^2 . S at sample ``i``."""
    n = path.n_samples
    if not 0 <= i < n:
        raise IndexError(f"sample index {i} out of range [0, {n})")
    h = hamiltonian_coefficients(path)[i]
    return HamiltonianSample(h=h, matrix=spin.along(h))


def hamiltonian_from_rotation(path: FiberPath, spin: SpinTriple, i: int) -> np.ndarray:
    """Generator built from the finite rotation between samples i and i+1.

    Returns (theta_i / dt) . S with theta_i the infinitesimal rotation vector;
    agrees with :func:`effective_hamiltonian` to first order in dt.
    """
    theta = rotation_vector(path, i)
    return spin.along(theta / path.dt)


def evolve(path: FiberPath, spin: SpinTriple | None = None, polarization: int = +1) -> SpinorTrajectory:
    """Propagate a circularly polarized photon spinor along the path.

    The initial state is the gauge-fixed eigenstate of k_hat(t0) . S with
    eigenvalue ``-polarization`` (receiver handedness convention).  Each step
    applies the exact unitary exp(-i H_mid dt) with H_mid built from the
    midpoint-interpolated coefficient vector and exponentiated through its
    spectral decomposition, so norms are preserved to rounding.
    """
    if polarization not in (-1, +1):
        raise ValueError(
            f"polarization must be +1 (right) or -1 (left), got {polarization!r}; "
            "helicity-0 photon states are unphysical for transverse light"
        )
    if spin is None:
        spin = spin1_matrices()
    h = hamiltonian_coefficients(path)
    h_mid = 0.5 * (h[:-1] + h[1:])
    smat = spin.as_array()
    mats = np.einsum("si,sjk->ijk", h_mid.T, smat)
    w, v = np.linalg.eigh(mats)
    phases = np.exp(-1j * w * path.dt)
    steps = np.einsum("nij,nj,nkj->nik", v, phases, v.conj())

    states = np.empty((path.n_samples, 3), dtype=complex)
    states[0] = helicity_eigenstates(path.k_hat[0], spin).state(-polarization)
    for i in range(path.n_samples - 1):
        states[i + 1] = steps[i] @ states[i]
    return SpinorTrajectory(times=path.times, states=states, polarization=polarization)


def invariant_residual(path: FiberPath, spin: SpinTriple, i: int) -> float:
    """Frobenius norm of  dI/dt + (1/i)[I, H]  at interior sample ``i``.

    I(t) = k_hat(t) . S is differentiated by central differences and H is the
    effective generator at the same sample; the combination vanishes to
    discretization order because that H solves the equation exactly.
    """
    n = path.n_samples
    if not 1 <= i <= n - 2:
        raise IndexError(f"invariant residual needs an interior sample, got {i} of {n}")
    return float(invariant_residual_series(path, spin)[i - 1])


def invariant_residual_series(path: FiberPath, spin: SpinTriple | None = None, scale: float = 1.0) -> np.ndarray:
    """Residuals at all interior samples (length n-2); ``scale`` multiplies H.

    ``scale`` != 1 is a negative control: any generator other than the
    effective one leaves an O(1) residual.
    """
    if spin is None:
        spin = spin1_matrices()
    smat = spin.as_array()
    inv = np.einsum("si,sjk->ijk", path.k_hat.T, smat)
    ham = np.einsum("si,sjk->ijk", (scale * hamiltonian_coefficients(path)).T, smat)
    d_inv = (inv[2:] - inv[:-2]) / (2.0 * path.dt)
    comm = inv[1:-1] @ ham[1:-1] - ham[1:-1] @ inv[1:-1]
    return np.linalg.norm(d_inv + comm / 1j, axis=(1, 2))


def helicity_expectations(traj: SpinorTrajectory, path: FiberPath, spin: SpinTriple | None = None) -> np.ndarray:
    """<psi | k_hat . S | psi> at every sample; conserved at -polarization."""
    if spin is None:
        spin = spin1_matrices()
    smat = spin.as_array()
    ops = np.einsum("si,sjk->ijk", path.k_hat.T, smat)
    return np.real(np.einsum("nj,njk,nk->n", traj.states.conj(), ops, traj.states))


def _unwrap_with_flags(overlaps: np.ndarray):
    """Continuously unwrapped arg of the overlaps, interpolating flagged dips."""
    flagged = np.abs(overlaps) < OVERLAP_FLOOR
    if flagged.all():
        raise ValueError("every overlap is numerically zero; cannot define a phase")
    good = ~flagged
    idx = np.arange(len(overlaps))
    unwrapped_good = np.unwrap(np.angle(overlaps[good]))
    total = np.interp(idx, idx[good], unwrapped_good)
    if flagged.any():
        warnings.warn(
            f"{int(flagged.sum())} sample(s) passed within {OVERLAP_FLOOR:g} of orthogonality; "
            "their total phase is interpolated from neighbours",
            OrthogonalPassageWarning,
            stacklevel=3,
        )
    return total, flagged


def phase_decomposition(traj: SpinorTrajectory, path: FiberPath, spin: SpinTriple | None = None) -> PhaseDecomposition:
    """Split the accumulated phase into total, dynamical and geometric parts.

    The total is the unwrapped overlap phase arg <psi(0)|psi(t)>; the
    dynamical part integrates -<H> by the trapezoidal rule on the shared
    grid; the geometric part is their difference.  Samples passing nearly
    orthogonal to the initial state are flagged and bridged by interpolation
    (an :class:`OrthogonalPassageWarning` is emitted).
    """
    if traj.states.shape[0] != path.n_samples:
        raise ValueError("trajectory and path do not share a time grid")
    if spin is None:
        spin = spin1_matrices()
    overlaps = traj.states @ traj.states[0].conj()
    total, flagged = _unwrap_with_flags(overlaps)
    total = total - total[0]

    smat = spin.as_array()
    ham = np.einsum("si,sjk->ijk", hamiltonian_coefficients(path).T, smat)
    energy = np.real(np.einsum("nj,njk,nk->n", traj.states.conj(), ham, traj.states))
    dt = path.dt
    dynamical = np.empty_like(energy)
    dynamical[0] = 0.0
    np.cumsum((energy[1:] + energy[:-1]) * (-0.5 * dt), out=dynamical[1:])

    return PhaseDecomposition(
        times=path.times,
        total=total,
        dynamical=dynamical,
        geometric=total - dynamical,
        flagged=flagged,
    )


def analytic_noncyclic_phase(angles: SphericalAngles, polarization: int, i: int | None = None):
    """Closed-form transport phase  sigma * Int_0^t azimuth_rate (1 - cos polar) dt'.

    Returns the value at sample ``i``, or the whole series when ``i`` is None.
    Reduces to sigma * 2 pi (1 - cos c) per full cycle of a cone of
    half-angle c.
    """
    if polarization not in (-1, +1):
        raise ValueError(f"polarization must be +1 or -1, got {polarization!r}")
    series = polarization * solid_angle_series(angles)
    if i is None:
        return series
    return float(series[i])
