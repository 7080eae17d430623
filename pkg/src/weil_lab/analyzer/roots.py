"""Complex roots with a posteriori error disks."""
from __future__ import annotations

import mpmath

from ..errors import ConvergenceError, ValidationError


def _eval(coeffs, z):
    acc = mpmath.mpc(0)
    for c in coeffs:
        acc = acc * z + c
    return acc


def inclusion_radii(coeffs, roots):
    """Radius r_i = n |P(z_i)| / |prod_{j != i} (z_i - z_j)| around each z_i.

    For a monic degree-n polynomial the union of these disks contains all
    roots and every connected component holds as many roots as centres.
    """
    n = len(roots)
    out = []
    for i, z in enumerate(roots):
        den = mpmath.mpf(1)
        for j, y in enumerate(roots):
            if j != i:
                den *= abs(z - y)
        if den == 0:
            return None
        out.append(n * abs(_eval(coeffs, z)) / den)
    return out


def complex_roots(P, precision_bits=192, with_radii=False):
    """All 2g roots of P at the requested binary precision.

    Ordered as lambda_1..lambda_g (upper half plane, increasing argument)
    followed by their conjugates in reverse, so root k and root 2g-1-k are
    a conjugate pair, matching the symbol order 1..g, g~..1~.
    """
    if precision_bits < 64:
        raise ValidationError("precision_bits must be at least 64")
    coeffs = list(P.coefficients)
    n = len(coeffs) - 1
    with mpmath.workprec(precision_bits + 64):
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=50 + 4 * precision_bits,
                                     extraprec=2 * precision_bits, cleanup=True)
        except mpmath.libmp.NoConvergence as exc:
            raise ConvergenceError(f"no convergence at {precision_bits} bits") from exc
        radii = inclusion_radii(coeffs, roots)
        if radii is None:
            raise ConvergenceError("coincident root approximations (repeated root?)")
        tol = mpmath.mpf(2) ** (-precision_bits // 2)
        order = sorted(range(n), key=lambda k: (roots[k].imag <= 0, mpmath.arg(roots[k])))
        upper = [k for k in order if roots[k].imag > 0]
        if any(r > tol for r in radii):
            raise ConvergenceError("error bound too large; retry with more precision")
        if 2 * len(upper) != n:
            raise ValidationError("real roots are not supported by the relation analysis")
        ordered = [roots[k] for k in upper] + [mpmath.conj(roots[k]) for k in reversed(upper)]
        if with_radii:
            rad = [radii[k] for k in upper]
            return ordered, rad + rad[::-1]
        return ordered
