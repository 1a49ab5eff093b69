"""Beam-splitter arrays that distribute one photon into a W state.

A chain of N-1 splitters, the j-th (0-based) mixing modes (j, j+1) with
angle theta_j, maps the single photon injected in mode 0 to the amplitude
pattern

    alpha_j = sin(theta_j) * prod_{i<j} cos(theta_i),   j < N-1
    alpha_{N-1} = prod_i cos(theta_i),

optionally followed by per-mode phase shifters multiplying alpha_j by
exp(-i phi_j).  ``angles_from_coefficients`` inverts this map, so any
normalized coefficient vector is reachable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .fock import FockSpace, PureState, apply_phase_shift, apply_two_mode_unitary, fock_state


@dataclass(frozen=True)
class WCoefficients:
    """Normalized amplitudes alpha_j of a single photon spread over N modes.

    Phases are carried in the coefficients themselves (alpha_j e^{-i phi_j}
    is just another complex alpha_j).
    """

    alphas: tuple[complex, ...]

    def __post_init__(self) -> None:
        alphas = tuple(complex(a) for a in self.alphas)
        if len(alphas) < 2:
            raise ValueError("need at least two modes")
        norm = sum(abs(a) ** 2 for a in alphas)
        if abs(norm - 1.0) > TOL.norm * len(alphas):
            raise ValueError(f"coefficients are not normalized (norm^2 = {norm})")
        object.__setattr__(self, "alphas", alphas)

    def __len__(self) -> int:
        return len(self.alphas)


def splitter(theta: float) -> np.ndarray:
    """Chain splitter: reflects with sin(theta) to the earlier mode.

    Acting on (a_j, a_{j+1}) it leaves amplitude sin(theta) behind at mode j
    and forwards cos(theta) to mode j+1.
    """
    s, c = math.sin(theta), math.cos(theta)
    return np.array([[s, -c], [c, s]])


def bell_splitter(theta: float) -> np.ndarray:
    """Measurement splitter: transmits with cos(theta).

    The balanced case theta = pi/4 sends a photon pair |1,1> to
    (|0,2> - |2,0>)/sqrt(2), the two-photon interference dip.
    """
    s, c = math.sin(theta), math.cos(theta)
    return np.array([[c, s], [-s, c]])


@dataclass(frozen=True)
class SplitterAngles:
    """Angles for an N-mode preparation chain: N-1 splitters, N phases.

    thetas[j] is the angle of the splitter on modes (j, j+1); phis[j] is the
    phase shifter on mode j (defaults to all zeros).
    """

    thetas: tuple[float, ...]
    phis: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        thetas = tuple(float(t) for t in self.thetas)
        if len(thetas) < 1:
            raise ValueError("need at least one splitter angle")
        for t in thetas:
            if not 0.0 <= t <= math.pi / 2 + 1e-12:
                raise ValueError(f"splitter angle {t} outside [0, pi/2]")
        object.__setattr__(self, "thetas", thetas)
        if self.phis is None:
            object.__setattr__(self, "phis", (0.0,) * (len(thetas) + 1))
        else:
            phis = tuple(float(p) for p in self.phis)
            if len(phis) != len(thetas) + 1:
                raise ValueError("need one phase per mode")
            object.__setattr__(self, "phis", phis)

    @property
    def num_modes(self) -> int:
        return len(self.thetas) + 1


def symmetric_angles(num_modes: int) -> SplitterAngles:
    """Angles producing the symmetric W state, |alpha_j| = 1/sqrt(N).

    Splitter j must peel off 1/(N-j) of the photon flux still travelling,
    hence theta_j = arcsin(1/sqrt(N-j)).
    """
    if num_modes < 2:
        raise ValueError("a W state needs at least two modes")
    return SplitterAngles(
        tuple(math.asin(1.0 / math.sqrt(num_modes - j)) for j in range(num_modes - 1))
    )


def coefficients_from_angles(angles: SplitterAngles) -> WCoefficients:
    """Closed-form amplitudes alpha_j produced by the chain."""
    n = angles.num_modes
    out = [0j] * n
    running = 1.0
    for j, theta in enumerate(angles.thetas):
        out[j] = running * math.sin(theta)
        running *= math.cos(theta)
    out[n - 1] = running
    for j in range(n):
        out[j] *= cmath.exp(-1j * angles.phis[j])
    return WCoefficients(tuple(out))


def _as_coefficients(alphas) -> WCoefficients:
    if isinstance(alphas, WCoefficients):
        return alphas
    return WCoefficients(tuple(alphas))


def angles_from_coefficients(alphas) -> SplitterAngles:
    """Invert the chain: angles and phases realizing the given amplitudes.

    Once the leading amplitudes exhaust the norm, the remaining angles are
    exactly zero (the photon never reaches those splitters, so their
    setting is immaterial).
    """
    w = _as_coefficients(alphas)
    n = len(w)
    thetas = []
    remaining = 1.0
    for j in range(n - 1):
        mag = abs(w.alphas[j])
        if remaining <= TOL.support:
            thetas.append(0.0)
            continue
        ratio = min(1.0, mag / math.sqrt(remaining))
        thetas.append(math.asin(ratio))
        remaining = max(0.0, remaining - mag * mag)
    # the + 0.0 normalizes -0.0 so emitted settings round-trip byte-identically
    phis = tuple(-cmath.phase(a) + 0.0 if abs(a) > TOL.support else 0.0 for a in w.alphas)
    return SplitterAngles(tuple(thetas), phis)


def generate_w(angles: SplitterAngles) -> PureState:
    """Run the chain on |1, 0, ..., 0> and apply the phase shifters."""
    space = FockSpace(angles.num_modes)
    state = fock_state(space, (1,) + (0,) * (angles.num_modes - 1))
    for j, theta in enumerate(angles.thetas):
        state = apply_two_mode_unitary(state, (j, j + 1), splitter(theta))
    for j, phi in enumerate(angles.phis):
        if phi != 0.0:
            state = apply_phase_shift(state, j, phi)
    return state


def w_state_from_coefficients(alphas) -> PureState:
    """Single-photon state sum_j alpha_j |0...1_j...0> built directly."""
    w = _as_coefficients(alphas)
    n = len(w)
    space = FockSpace(n)
    amps = {}
    for j, a in enumerate(w.alphas):
        if a != 0:
            occ = [0] * n
            occ[j] = 1
            amps[tuple(occ)] = a
    return PureState(space, amps)
