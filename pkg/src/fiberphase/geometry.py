"""Wave-vector trajectories on the unit sphere and their discrete calculus.

A trajectory is a uniformly sampled unit-vector path k_hat(t) together with a
constant wave-vector magnitude.  Everything downstream (transport, phases)
consumes the sampled form, whether the path was generated analytically or
loaded from a file.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FiberPath",
    "SphericalAngles",
    "helix_path",
    "spherical_angles",
    "k_dot",
    "motion_residual",
    "rotation_vector",
    "load_path",
    "solid_angle_series",
    "derivative_uniform",
]

POLE_SIN_TOL = 1e-9  # below this sin(polar), the azimuth is held constant


@dataclass(frozen=True)
class FiberPath:
    """Sampled wave-vector direction trajectory with constant magnitude.

    times      : strictly increasing, uniformly spaced sample instants
    k_hat      : (n, 3) array of unit vectors
    k_mag      : positive wave-vector magnitude (inverse length)
    """

    times: np.ndarray
    k_hat: np.ndarray
    k_mag: float

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        kh = np.asarray(self.k_hat, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "k_hat", kh)
        if t.ndim != 1 or len(t) < 3:
            raise ValueError("path needs at least 3 samples")
        if kh.shape != (len(t), 3):
            raise ValueError(f"k_hat shape {kh.shape} does not match {len(t)} samples")
        if self.k_mag <= 0:
            raise ValueError("k_mag must be positive")
        dt = np.diff(t)
        if np.any(dt <= 0):
            raise ValueError("times must be strictly increasing")
        if np.max(np.abs(dt - dt[0])) > 1e-6 * dt[0]:
            raise ValueError("time grid must be uniform")
        norms = np.linalg.norm(kh, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-9:
            raise ValueError("k_hat samples must be unit vectors (within 1e-9)")
        steps = np.linalg.norm(np.diff(kh, axis=0), axis=1)
        if np.max(steps) >= 0.5:
            raise ValueError(
                "adjacent k_hat samples differ by >= 0.5; grid too coarse for finite differencing"
            )

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def n_samples(self) -> int:
        return len(self.times)

    def k_vectors(self) -> np.ndarray:
        """Full wave vectors k_mag * k_hat, shape (n, 3)."""
        return self.k_mag * self.k_hat


@dataclass(frozen=True)
class SphericalAngles:
    """Polar/azimuthal decomposition of a direction trajectory.

    polar   : angle from the +z axis, in [0, pi]
    azimuth : unwrapped azimuthal angle (continuous branch, jump < pi per step)
    times   : the originating sample grid
    """

    times: np.ndarray
    polar: np.ndarray
    azimuth: np.ndarray


def helix_path(cone_angle, omega, k_mag, n_cycles, n_steps) -> FiberPath:
    """Uniform helix: k_hat(t) = (sin c cos wt, sin c sin wt, cos c).

    ``n_steps`` counts time steps (n_steps + 1 samples) over ``n_cycles`` full
    turns of the azimuth; at least 16 steps per cycle are required.  ``omega``
    may be negative for clockwise winding.
    """
    if not 0.0 <= cone_angle <= np.pi:
        raise ValueError(f"cone_angle must lie in [0, pi], got {cone_angle!r}")
    if omega == 0:
        raise ValueError("omega must be nonzero")
    if n_cycles <= 0:
        raise ValueError("n_cycles must be positive")
    n_steps = int(n_steps)
    if n_steps < 16 * n_cycles:
        raise ValueError("need at least 16 steps per cycle")
    duration = 2.0 * np.pi * n_cycles / abs(omega)
    t = np.linspace(0.0, duration, n_steps + 1)
    s, c = np.sin(cone_angle), np.cos(cone_angle)
    kh = np.stack([s * np.cos(omega * t), s * np.sin(omega * t), np.full_like(t, c)], axis=1)
    return FiberPath(times=t, k_hat=kh, k_mag=float(k_mag))


def spherical_angles(path: FiberPath) -> SphericalAngles:
    """Polar angle and continuously unwrapped azimuth of the path.

    At samples where the direction is (anti)parallel to z within
    ``POLE_SIN_TOL`` the azimuth is held at its previous value (0 before the
    first off-pole sample); elsewhere the branch nearest the previous sample
    is taken, so steps stay below pi.
    """
    kh = path.k_hat
    polar = np.arccos(np.clip(kh[:, 2], -1.0, 1.0))
    raw = np.arctan2(kh[:, 1], kh[:, 0])
    off_pole = np.hypot(kh[:, 0], kh[:, 1]) >= POLE_SIN_TOL
    azimuth = np.empty_like(raw)
    previous = 0.0
    for i in range(len(raw)):
        if off_pole[i]:
            previous = raw[i] + 2.0 * np.pi * np.round((previous - raw[i]) / (2.0 * np.pi))
        azimuth[i] = previous
    return SphericalAngles(times=path.times, polar=polar, azimuth=azimuth)


def derivative_uniform(values, dt) -> np.ndarray:
    """Second-order derivative on a uniform grid along axis 0.

    Central differences at interior samples, one-sided three-point stencils at
    the two ends.
    """
    y = np.asarray(values, dtype=float)
    if len(y) < 3:
        raise ValueError("need at least 3 samples to differentiate")
    d = np.empty_like(y)
    d[1:-1] = (y[2:] - y[:-2]) / (2.0 * dt)
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dt)
    d[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * dt)
    return d


def k_dot(path: FiberPath) -> np.ndarray:
    """Time derivative of the full wave vector k(t), shape (n, 3)."""
    return derivative_uniform(path.k_vectors(), path.dt)


def motion_residual(path: FiberPath) -> np.ndarray:
    """Per-sample norm of  k_dot + k x ((k x k_dot)/k^2).

    The bracket is an identity for any constant-magnitude path, so this
    measures only the discretization error of the derivative; it vanishes to
    stencil order under grid refinement.
    """
    k = path.k_vectors()
    kd = k_dot(path)
    k2 = path.k_mag**2
    return np.linalg.norm(kd + np.cross(k, np.cross(k, kd)) / k2, axis=1)


def rotation_vector(path: FiberPath, i: int) -> np.ndarray:
    """Infinitesimal rotation vector (k_i x k_{i+1}) / k^2 between samples i, i+1.

    Its direction is the rotation axis taking k_hat(t_i) into k_hat(t_{i+1})
    and its norm approximates the angle between them to third order in dt.
    """
    n = path.n_samples
    if not 0 <= i < n - 1:
        raise IndexError(f"sample index {i} out of range [0, {n - 1})")
    k = path.k_vectors()
    return np.cross(k[i], k[i + 1]) / path.k_mag**2


def solid_angle_series(angles: SphericalAngles) -> np.ndarray:
    """Cumulative swept solid angle  Int_0^t  d(azimuth)/dt' (1 - cos polar) dt'.

    Trapezoidal rule with the azimuth rate from ``derivative_uniform``; this is
    the common kernel of the transport, occupation-number and vacuum phases.
    """
    dt = float(angles.times[1] - angles.times[0])
    rate = derivative_uniform(angles.azimuth, dt)
    integrand = rate * (1.0 - np.cos(angles.polar))
    out = np.empty_like(integrand)
    out[0] = 0.0
    np.cumsum((integrand[1:] + integrand[:-1]) * (0.5 * dt), out=out[1:])
    return out


def load_path(filename) -> FiberPath:
    """Read a trajectory from a line-oriented text file.

    Each record holds four whitespace-separated floats ``t kx ky kz``;
    ``#`` starts a comment.  The magnitude is inferred from the first record
    and every subsequent vector norm must match it within 1e-6 (relative).
    """
    times, vecs = [], []
    with open(filename) as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split()
            if len(parts) != 4:
                raise ValueError(f"{filename}:{lineno}: expected 4 fields 't kx ky kz', got {len(parts)}")
            try:
                rec = [float(p) for p in parts]
            except ValueError as exc:
                raise ValueError(f"{filename}:{lineno}: {exc}") from None
            times.append(rec[0])
            vecs.append(rec[1:])
    if len(times) < 3:
        raise ValueError(f"{filename}: path needs at least 3 samples, got {len(times)}")
    vecs = np.asarray(vecs, dtype=float)
    norms = np.linalg.norm(vecs, axis=1)
    k_mag = norms[0]
    if k_mag <= 0:
        raise ValueError(f"{filename}: first sample has zero wave vector")
    if np.max(np.abs(norms - k_mag)) > 1e-6 * k_mag:
        j = int(np.argmax(np.abs(norms - k_mag)))
        raise ValueError(
            f"{filename}: |k| varies along the path (sample {j}: {norms[j]!r} vs {k_mag!r}); "
            "only constant-magnitude trajectories are supported"
        )
    return FiberPath(times=np.asarray(times), k_hat=vecs / norms[:, None], k_mag=float(k_mag))
