"""Scalar optimization helpers: golden-section maximization and bisection.

Both routines are deterministic and take explicit absolute tolerances on
the argument, which is what the verification claims pin down.
"""

import math

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    """Maximize a unimodal function on [lo, hi].

    Args:
        f: scalar function of one real argument.
        lo, hi: bracket endpoints, lo < hi.
        tol: absolute tolerance on the argument of the maximum.

    Returns:
        (x_star, f(x_star)) with the bracket shrunk below tol.
    """
    a, b = float(lo), float(hi)
    if not a < b:
        raise ValueError("need lo < hi")
    h = b - a
    if h <= tol:
        x = (a + b) / 2.0
        return x, f(x)
    n = int(math.ceil(math.log(tol / h) / math.log(_INV_PHI)))
    c = a + _INV_PHI_SQ * h
    d = a + _INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(n):
        if yc > yd:
            b = d
            d, yd = c, yc
            h *= _INV_PHI
            c = a + _INV_PHI_SQ * h
            yc = f(c)
        else:
            a = c
            c, yc = d, yd
            h *= _INV_PHI
            d = a + _INV_PHI * h
            yd = f(d)
    x = (a + d) / 2.0 if yc > yd else (c + b) / 2.0
    return x, f(x)


def bisect_root(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign."""
    a, b = float(lo), float(hi)
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError("root not bracketed")
    while b - a > tol:
        mid = (a + b) / 2.0
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            b = mid
        else:
            a, fa = mid, fm
    return (a + b) / 2.0
