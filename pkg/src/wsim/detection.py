"""Nonideal photodetectors: POVM elements, conditioning, and measured moments.

A detector with quantum efficiency eta registers each arriving photon
independently with probability eta.  Its outcome statistics on a number
state are binomial, which makes every POVM element here diagonal in the
photon-number basis.  Three consequences are used throughout:

* conditioning on an outcome is an entrywise square-root weighting,
* the measured count is a binomial thinning of the ideal count, so
  mean_meas = eta * mean and var_meas = eta^2 * var + eta(1-eta) * mean_n,
* an equivalent physical model is a beam splitter of transmittance eta in
  front of a perfect detector (kept here as an independent cross-check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .circuits import bell_splitter, splitter
from .config import TOL
from .fock import (
    DensityOperator,
    FockSpace,
    _condition_raw,
    apply_phase_shift,
    apply_two_mode_unitary,
    tensor,
    vacuum_state,
)


@dataclass(frozen=True)
class DetectorModel:
    """Photodetector with quantum efficiency eta in [0, 1]."""

    eta: float

    def __post_init__(self) -> None:
        eta = float(self.eta)
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"efficiency {eta} outside [0, 1]")
        object.__setattr__(self, "eta", eta)


@dataclass(frozen=True)
class PovmElement:
    """Single-mode POVM element, diagonal in the number basis.

    entries[l] is the probability of this outcome given l photons arrive.
    """

    entries: tuple[float, ...]
    label: str

    def __post_init__(self) -> None:
        entries = tuple(float(e) for e in self.entries)
        if not entries:
            raise ValueError("a POVM element needs at least the vacuum entry")
        for e in entries:
            if e < -TOL.povm or e > 1.0 + TOL.povm:
                raise ValueError(f"POVM entry {e} outside [0, 1]")
        object.__setattr__(self, "entries", entries)

    @property
    def cutoff(self) -> int:
        return len(self.entries) - 1


def povm_number(k: int, det: DetectorModel, cutoff: int = 2) -> PovmElement:
    """Outcome "exactly k photons counted" for a number-resolving detector.

    Given l arriving photons the count is Binomial(l, eta), so the diagonal
    entry at l is C(l, k) eta^k (1-eta)^(l-k); the family k = 0..cutoff sums
    to the identity on the truncated space.
    """
    k = int(k)
    if k < 0 or k > cutoff:
        raise ValueError(f"count {k} outside the detector cutoff {cutoff}")
    eta = det.eta
    entries = []
    for l in range(cutoff + 1):
        if l < k:
            entries.append(0.0)
        else:
            entries.append(math.comb(l, k) * eta**k * (1.0 - eta) ** (l - k))
    return PovmElement(tuple(entries), label=f"count={k}")


def povm_onoff(on: bool, det: DetectorModel, cutoff: int = 2) -> PovmElement:
    """Outcome of a detector that only separates vacuum from "some photons".

    off is the k = 0 number outcome; on is its complement 1 - (1-eta)^l.
    """
    eta = det.eta
    off = tuple((1.0 - eta) ** l for l in range(cutoff + 1))
    if on:
        return PovmElement(tuple(1.0 - e for e in off), label="some")
    return PovmElement(off, label="off")


def condition(rho: DensityOperator, assignments: Mapping[int, PovmElement]) -> DensityOperator:
    """Post-select on detector outcomes and trace out the measured modes.

    Returns sqrt(Pi) rho sqrt(Pi) reduced to the unmeasured modes; its trace
    is the outcome probability.  Measuring every mode leaves the zero-mode
    space whose single entry is that probability.  Mode keys must be
    distinct (guaranteed by the mapping) and in range.
    """
    if not assignments:
        raise ValueError("no detector outcomes assigned")
    space = rho.space
    for mode in assignments:
        if not 0 <= mode < space.num_modes:
            raise ValueError(f"mode {mode} out of range")
    weights = np.ones(space.dim)
    for i, occ in enumerate(space.basis):
        w = 1.0
        for mode, elem in assignments.items():
            n = occ[mode]
            if n > elem.cutoff:
                raise ValueError("POVM cutoff below the state's occupation")
            w *= elem.entries[n]
        weights[i] = w
    keep = tuple(m for m in range(space.num_modes) if m not in assignments)
    out_space, out = _condition_raw(space, rho.matrix, weights, keep)
    return DensityOperator(out_space, out)


def _require_two_mode_normalized(rho2: DensityOperator) -> None:
    if rho2.space.num_modes != 2:
        raise ValueError("expected a two-mode state")
    if abs(rho2.trace() - 1.0) > TOL.trace:
        raise ValueError("expected a normalized state")


def _difference_statistics(rho2: DensityOperator, phi: float) -> tuple[float, float, float]:
    """Ideal photon-number-difference readout behind a balanced splitter.

    A phase phi on the second mode followed by a balanced splitter turns the
    count difference n_c - n_d into 2J_x (phi = 0) or 2J_y (phi = pi/2).
    Returns (mean difference, variance of difference, mean total count).
    """
    probe = apply_phase_shift(rho2, 1, phi)
    probe = apply_two_mode_unitary(probe, (0, 1), bell_splitter(math.pi / 4))
    diag = np.real(np.diag(probe.matrix))
    d_vals = np.array([occ[0] - occ[1] for occ in probe.space.basis], dtype=float)
    n_vals = np.array([occ[0] + occ[1] for occ in probe.space.basis], dtype=float)
    mean_d = float(diag @ d_vals)
    var_d = float(diag @ d_vals**2) - mean_d**2
    return mean_d, var_d, float(diag @ n_vals)


def lossy_moments(rho2: DensityOperator, det: DetectorModel) -> tuple[float, float, float]:
    """Measured (var J_x, var J_y, <N_+>) for detectors of efficiency eta.

    Ideal statistics come from the explicit interferometer readout; the
    binomial thinning of each detector's count then gives the measured
    difference moments var(D_eta) = eta^2 var(D) + eta(1-eta)<N_+> and
    <N_+>_eta = eta <N_+>, quoted here per J component (a factor 1/4).
    """
    _require_two_mode_normalized(rho2)
    eta = det.eta
    _, var_dx, n_plus = _difference_statistics(rho2, 0.0)
    _, var_dy, _ = _difference_statistics(rho2, math.pi / 2)
    var_jx = (eta**2 * var_dx + eta * (1.0 - eta) * n_plus) / 4.0
    var_jy = (eta**2 * var_dy + eta * (1.0 - eta) * n_plus) / 4.0
    return var_jx, var_jy, eta * n_plus


def lossy_moments_ancilla(rho2: DensityOperator, det: DetectorModel) -> tuple[float, float, float]:
    """Same triple as lossy_moments via the physical loss model.

    Each interferometer output is mixed with a vacuum ancilla on a splitter
    of transmittance eta and a perfect detector reads the transmitted beam;
    no moment transform is applied.  Kept as an independent oracle for
    lossy_moments.
    """
    _require_two_mode_normalized(rho2)
    theta_loss = math.acos(math.sqrt(det.eta))
    ancillas = vacuum_state(FockSpace(2)).to_density()
    out = []
    n_plus_meas = 0.0
    for phi in (0.0, math.pi / 2):
        probe = apply_phase_shift(rho2, 1, phi)
        probe = apply_two_mode_unitary(probe, (0, 1), bell_splitter(math.pi / 4))
        big = tensor(probe, ancillas)
        # transmitted beams land on the ancilla slots 2 and 3
        big = apply_two_mode_unitary(big, (0, 2), splitter(theta_loss))
        big = apply_two_mode_unitary(big, (1, 3), splitter(theta_loss))
        diag = np.real(np.diag(big.matrix))
        d_vals = np.array([occ[2] - occ[3] for occ in big.space.basis], dtype=float)
        n_vals = np.array([occ[2] + occ[3] for occ in big.space.basis], dtype=float)
        mean_d = float(diag @ d_vals)
        out.append((float(diag @ d_vals**2) - mean_d**2) / 4.0)
        if phi == 0.0:
            n_plus_meas = float(diag @ n_vals)
    return out[0], out[1], n_plus_meas


def povm_moments(
    rho2: DensityOperator, det: DetectorModel, kind: str = "number"
) -> tuple[float, float, float]:
    """Same triple as lossy_moments via the joint POVM outcome distribution.

    kind selects the detector back-end: "number" counts photons (and must
    agree with lossy_moments to rounding), "onoff" registers clicks valued
    0/1 (and agrees whenever at most one photon can arrive per output).
    """
    _require_two_mode_normalized(rho2)
    if kind == "number":
        outcomes = [(povm_number(k, det), float(k)) for k in range(3)]
    elif kind == "onoff":
        outcomes = [(povm_onoff(False, det), 0.0), (povm_onoff(True, det), 1.0)]
    else:
        raise ValueError(f"unknown detector back-end {kind!r}")
    variances = []
    n_plus_meas = 0.0
    for phi in (0.0, math.pi / 2):
        probe = apply_phase_shift(rho2, 1, phi)
        probe = apply_two_mode_unitary(probe, (0, 1), bell_splitter(math.pi / 4))
        diag = np.real(np.diag(probe.matrix))
        mean_d = mean_d2 = mean_n = 0.0
        for elem_c, val_c in outcomes:
            for elem_d, val_d in outcomes:
                weights = np.array(
                    [elem_c.entries[occ[0]] * elem_d.entries[occ[1]] for occ in probe.space.basis]
                )
                p = float(diag @ weights)
                d = val_c - val_d
                mean_d += p * d
                mean_d2 += p * d * d
                mean_n += p * (val_c + val_d)
        variances.append((mean_d2 - mean_d**2) / 4.0)
        if phi == 0.0:
            n_plus_meas = mean_n
    return variances[0], variances[1], n_plus_meas
