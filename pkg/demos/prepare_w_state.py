"""Prepare single-photon W states with a chain of beam splitters.

One photon enters the first splitter of a chain; each splitter peels off
the amplitude for one output mode. Choosing the angles right makes the
photon equally likely to end up in any mode.
"""

import math

from wsim import (
    WCoefficients,
    angles_from_coefficients,
    coefficients_from_angles,
    generate_w,
    symmetric_angles,
)


def show(label, angles):
    coeffs = coefficients_from_angles(angles)
    state = generate_w(angles)
    n = angles.num_modes
    print(f"\n{label}")
    print(f"  splitter angles: {[round(t, 6) for t in angles.thetas]}")
    for j in range(n):
        occ = tuple(1 if k == j else 0 for k in range(n))
        amp = complex(state.amplitudes.get(occ, 0.0))
        print(f"  mode {j}: target {coeffs.alphas[j]:.6f}  simulated {amp:.6f}")


def main():
    print("Balanced W states: every mode holds the photon with weight 1/N.")
    for n in (2, 3, 4):
        show(f"N = {n} (uniform target 1/sqrt({n}) = {1 / math.sqrt(n):.6f})",
             symmetric_angles(n))

    print("\nArbitrary targets work too: solve for the angles, then replay them.")
    target = WCoefficients((0.6, 0.0, 0.8))
    angles = angles_from_coefficients(target)
    show("lopsided three-mode state (0.6, 0, 0.8)", angles)

    round_trip = coefficients_from_angles(angles)
    error = max(
        abs(a - b) for a, b in zip(target.alphas, round_trip.alphas)
    )
    print(f"\n  round-trip error through the angle solver: {error:.3e}")


if __name__ == "__main__":
    main()
