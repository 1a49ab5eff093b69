"""What changes when detectors only tell "click" from "no click".

An on-off counter cannot distinguish one photon from two, so detection
events that should reject photon bunching leak extra vacuum into the
heralded state. The entanglement witness is immune (its states never
hold two photons in one mode), but teleportation pays a price.
"""

import math

import numpy as np

from wsim import (
    DetectorModel,
    TeleportParams,
    averaged_fidelity_probability,
    coefficients_from_angles,
    critical_eta,
    povm_moments,
    reduced_pair,
    symmetric_angles,
)


def main():
    print("Witness moments, number-resolving vs on-off, balanced N = 3 pair:")
    w = coefficients_from_angles(symmetric_angles(3))
    rho = reduced_pair(w, 0, 1)
    det = DetectorModel(0.7)
    for kind in ("number", "onoff"):
        vx, vy, np_meas = povm_moments(rho, det, kind=kind)
        print(f"  {kind:>7}: var_jx = {vx:.12f}, var_jy = {vy:.12f}")
    print("  identical, because at most one photon ever reaches a counter.\n")

    n, m, eta = 3, 1, 0.8
    print(f"Teleportation (N = {n}, m = {m}, eta = {eta}): fidelity by angle.")
    print(f"{'theta':>8} {'number':>10} {'on-off':>10} {'penalty':>10}")
    for theta in np.linspace(0.15, math.pi / 2 - 0.15, 6):
        f_num = averaged_fidelity_probability(
            TeleportParams(n, m, eta, float(theta))
        ).avg_fidelity
        f_onoff = averaged_fidelity_probability(
            TeleportParams(n, m, eta, float(theta), detector_kind="onoff")
        ).avg_fidelity
        print(
            f"{theta:>8.4f} {f_num:>10.6f} {f_onoff:>10.6f} "
            f"{f_num - f_onoff:>10.6f}"
        )

    print("\nThe efficiency threshold moves up accordingly:")
    for mm in (0, 1):
        num = critical_eta(3, mm)
        onoff = critical_eta(3, mm, detector_kind="onoff")
        print(
            f"  N = 3, m = {mm}: number-resolving {num:.10f}  "
            f"on-off {onoff:.10f}"
        )


if __name__ == "__main__":
    main()
