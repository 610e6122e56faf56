"""Circularly polarized vacuum modes in a periodic box.

Wave vectors live on the lattice k = 2*pi*n/L with integer n != 0. Each mode
carries a polarization handedness gamma = +-1, a random global phase zeta and
a random polarization phase phi, entering through the unit amplitude
a = e^{i zeta} e^{i gamma phi}.

Field convention (fixed by requiring the closed-form mode observables below):
the vector potential of one mode is the real part of the complex carrier

    F(r, t) = sqrt(hbar / (V*omega)) * (-i) * eps_gamma * a * e^{i(k.r - omega t)}

with V = L^3, and

    A = Re F,    E = -dA/dt = -omega * Im F,    B = curl A = -k x Im F.

Energy density is (|E|^2 + c^2 |B|^2)/2, momentum density E x B, and the
angular momentum integrand E x A. Under this convention a single mode carries

    H = hbar*omega/2,    P = (hbar*omega / 2c) khat,    J = gamma*(hbar/2) khat,

which the quadrature in mode_observables verifies rather than assumes.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from itertools import product

import numpy as np

from .constants import NATURAL, PhysicalConstants
from .errors import ResolutionError

__all__ = [
    "Triad",
    "Mode",
    "ZpfRealization",
    "FieldSample",
    "ModeObservables",
    "build_triad",
    "polarization_vector",
    "wave_vector",
    "make_mode",
    "mode_keys",
    "sample_realization",
    "sample_zeta_ensemble",
    "field_at",
    "sample_fields",
    "resolution_floor",
    "mode_observables",
    "analytic_mode_observables",
    "realization_totals",
]


@dataclass(frozen=True, eq=False)
class Triad:
    """Right-handed orthonormal frame with e3 along the wave vector."""

    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray


@dataclass(frozen=True)
class Mode:
    n: tuple[int, int, int]
    gamma: int
    zeta: float
    phi: float
    omega: float

    @property
    def amplitude(self) -> complex:
        """a = e^{i zeta} e^{i gamma phi}; unit modulus by construction."""
        return cmath.exp(1j * (self.zeta + self.gamma * self.phi))


@dataclass(frozen=True)
class ZpfRealization:
    L: float
    modes: tuple[Mode, ...]
    seed: int | None = None


@dataclass(frozen=True, eq=False)
class FieldSample:
    A: np.ndarray
    E: np.ndarray
    B: np.ndarray


@dataclass(frozen=True, eq=False)
class ModeObservables:
    H: float
    P: np.ndarray
    J: np.ndarray


def build_triad(n) -> Triad:
    """Deterministic polarization frame for lattice vector n.

    e3 = khat; e1 is the coordinate axis h with the smallest |khat| component
    (ties broken in x, y, z order) projected orthogonal to khat and
    normalized; e2 = e3 x e1. Axis-aligned n therefore give axis-aligned
    triads, e.g. n = (0, 0, 1) -> (x, y, z).
    """
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise ValueError("wave-vector index must be a 3-vector")
    norm = float(np.linalg.norm(n))
    if norm == 0.0:
        raise ValueError("zero wave vector has no propagation direction")
    e3 = n / norm
    h = np.zeros(3)
    h[int(np.argmin(np.abs(e3)))] = 1.0
    e1 = h - np.dot(h, e3) * e3
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(e3, e1)
    return Triad(e1=e1, e2=e2, e3=e3)


def polarization_vector(triad: Triad, gamma: int) -> np.ndarray:
    """Complex unit polarization vector; eps_{gamma}* . eps_{gamma'} = delta."""
    if gamma == 1:
        return (triad.e1 + 1j * triad.e2) / np.sqrt(2.0)
    if gamma == -1:
        return 1j * (triad.e1 - 1j * triad.e2) / np.sqrt(2.0)
    raise ValueError(f"polarization index must be +1 or -1, got {gamma!r}")


def wave_vector(n, L: float) -> np.ndarray:
    return 2.0 * np.pi * np.asarray(n, dtype=float) / L


def make_mode(
    n, gamma: int, zeta: float, phi: float, L: float, constants: PhysicalConstants = NATURAL
) -> Mode:
    n = tuple(int(c) for c in n)
    if len(n) != 3:
        raise ValueError("wave-vector index must be a 3-vector")
    if n == (0, 0, 0):
        raise ValueError("zero wave vector is not a mode")
    if gamma not in (1, -1):
        raise ValueError(f"polarization index must be +1 or -1, got {gamma!r}")
    if not L > 0:
        raise ValueError("box size must be positive")
    omega = constants.c * float(np.linalg.norm(wave_vector(n, L)))
    return Mode(n=n, gamma=gamma, zeta=float(zeta), phi=float(phi), omega=omega)


def mode_keys(n_max: int) -> list[tuple[tuple[int, int, int], int]]:
    """All (n, gamma) with 0 < |n|_inf <= n_max, in a fixed deterministic order."""
    if int(n_max) != n_max or n_max < 1:
        raise ValueError("n_max must be a positive integer")
    n_max = int(n_max)
    keys = []
    for n in product(range(-n_max, n_max + 1), repeat=3):
        if n == (0, 0, 0):
            continue
        for gamma in (1, -1):
            keys.append((n, gamma))
    return keys


def _draw_phases(rng: np.random.Generator, count: int) -> tuple[np.ndarray, np.ndarray]:
    # zeta block first, then phi block; the ensemble sampler relies on this order
    zetas = rng.uniform(0.0, 2.0 * np.pi, count)
    phis = rng.uniform(0.0, 2.0 * np.pi, count)
    return zetas, phis


def sample_realization(
    L: float, n_max: int, seed, constants: PhysicalConstants = NATURAL
) -> ZpfRealization:
    """Draw one realization: i.i.d. uniform zeta and phi for every mode.

    The same seed always produces the same realization. seed may be an int or
    a numpy SeedSequence (the ensemble sampler passes spawned children).
    """
    if not L > 0:
        raise ValueError("box size must be positive")
    keys = mode_keys(n_max)
    rng = np.random.default_rng(seed)
    zetas, phis = _draw_phases(rng, len(keys))
    modes = tuple(
        make_mode(n, gamma, zetas[i], phis[i], L, constants)
        for i, (n, gamma) in enumerate(keys)
    )
    return ZpfRealization(L=float(L), modes=modes, seed=seed if isinstance(seed, int) else None)


def sample_zeta_ensemble(n_max: int, count: int, seed: int):
    """zeta draws for `count` independent realizations, one child stream each.

    Row i holds exactly the zeta block that sample_realization would draw for
    SeedSequence(seed).spawn(count)[i]. Returns (mode_keys, matrix) with the
    matrix of shape (count, n_modes).
    """
    if count < 1:
        raise ValueError("ensemble size must be at least 1")
    keys = mode_keys(n_max)
    children = np.random.SeedSequence(seed).spawn(count)
    out = np.empty((count, len(keys)))
    for i, child in enumerate(children):
        out[i], _ = _draw_phases(np.random.default_rng(child), len(keys))
    return keys, out


def _mode_field_arrays(mode: Mode, L: float, points: np.ndarray, t: float, constants):
    """A, E, B of one mode at points of shape (..., 3)."""
    triad = build_triad(mode.n)
    eps = polarization_vector(triad, mode.gamma)
    k = wave_vector(mode.n, L)
    omega = constants.c * float(np.linalg.norm(k))
    V = L**3
    theta = points @ k - omega * t
    carrier = (
        np.sqrt(constants.hbar / (V * omega))
        * (-1j)
        * mode.amplitude
        * np.exp(1j * theta)
    )
    F = carrier[..., np.newaxis] * eps
    A = F.real
    imF = F.imag
    E = -omega * imF
    B = -np.cross(np.broadcast_to(k, imF.shape), imF)
    return A, E, B


def _check_in_box(points: np.ndarray, L: float):
    if np.any(points < 0.0) or np.any(points >= L):
        raise ValueError("evaluation points must lie in [0, L)^3")


def sample_fields(
    real: ZpfRealization, points, t: float, constants: PhysicalConstants = NATURAL
):
    """Total A, E, B at an array of points (..., 3) inside the box."""
    points = np.asarray(points, dtype=float)
    if points.shape[-1] != 3:
        raise ValueError("points must have a trailing axis of length 3")
    _check_in_box(points, real.L)
    shape = points.shape[:-1] + (3,)
    A = np.zeros(shape)
    E = np.zeros(shape)
    B = np.zeros(shape)
    for mode in real.modes:
        a, e, b = _mode_field_arrays(mode, real.L, points, t, constants)
        A += a
        E += e
        B += b
    return A, E, B


def field_at(
    real: ZpfRealization, r, t: float, constants: PhysicalConstants = NATURAL
) -> FieldSample:
    """Fields at a single point; an empty realization gives exact zeros."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError("r must be a 3-vector")
    A, E, B = sample_fields(real, r[np.newaxis, :], t, constants)
    return FieldSample(A=A[0], E=E[0], B=B[0])


def resolution_floor(n) -> int:
    """Minimum per-axis grid points for reliable quadrature of mode n."""
    return 4 * max(max(abs(int(c)) for c in n), 1)


def mode_observables(
    mode: Mode,
    L: float,
    grid: int,
    constants: PhysicalConstants = NATURAL,
    t: float = 0.0,
) -> ModeObservables:
    """H, P, J of one mode by trapezoidal quadrature on the periodic grid.

    With periodic sampling at grid^3 points the trapezoidal rule reduces to
    the grid mean times the volume, which is spectrally exact for the
    band-limited integrands here once grid >= resolution_floor(mode.n).
    """
    grid = int(grid)
    floor = resolution_floor(mode.n)
    if grid < floor:
        raise ResolutionError(
            f"grid {grid} is below the resolution floor {floor} for n={mode.n}"
        )
    axis = np.arange(grid) * (L / grid)
    X, Y, Z = np.meshgrid(axis, axis, axis, indexing="ij")
    points = np.stack([X, Y, Z], axis=-1)
    A, E, B = _mode_field_arrays(mode, L, points, t, constants)
    V = L**3
    c2 = constants.c**2
    u = 0.5 * (np.sum(E * E, axis=-1) + c2 * np.sum(B * B, axis=-1))
    H = float(np.mean(u) * V)
    P = np.mean(np.cross(E, B).reshape(-1, 3), axis=0) * V
    J = np.mean(np.cross(E, A).reshape(-1, 3), axis=0) * V
    return ModeObservables(H=H, P=P, J=J)


def analytic_mode_observables(
    mode: Mode, L: float, constants: PhysicalConstants = NATURAL
) -> ModeObservables:
    """Closed-form single-mode observables under the module's field convention."""
    k = wave_vector(mode.n, L)
    norm = float(np.linalg.norm(k))
    khat = k / norm
    omega = constants.c * norm
    H = constants.hbar * omega / 2.0
    P = (constants.hbar * omega / (2.0 * constants.c)) * khat
    J = mode.gamma * (constants.hbar / 2.0) * khat
    return ModeObservables(H=H, P=P, J=J)


def realization_totals(
    real: ZpfRealization, constants: PhysicalConstants = NATURAL
) -> ModeObservables:
    """Sum of per-mode analytic observables.

    Modes are accumulated in an order that places exactly cancelling partners
    adjacently (n with -n, gamma with -gamma), so totals over sets closed
    under those reflections vanish exactly in floating point, not just to
    rounding.
    """
    groups: dict = {}
    for mode in real.modes:
        canon = max(mode.n, tuple(-c for c in mode.n))
        groups.setdefault(canon, []).append(mode)
    rank = {(True, 1): 0, (True, -1): 1, (False, 1): 2, (False, -1): 3}
    H = 0.0
    P = np.zeros(3)
    J = np.zeros(3)
    for canon in sorted(groups):
        for mode in sorted(groups[canon], key=lambda m: rank[(m.n == canon, m.gamma)]):
            obs = analytic_mode_observables(mode, real.L, constants)
            H += obs.H
            P = P + obs.P
            J = J + obs.J
    return ModeObservables(H=H, P=P, J=J)
