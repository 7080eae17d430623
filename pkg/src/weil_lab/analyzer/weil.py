"""Integer Weil polynomials and their q-Newton polygons."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ValidationError
from ..labels import prime_of
from ..weights import NewtonPolygon


@dataclass(frozen=True)
class WeilPolynomial:
    """Monic P(T) = sum a_i T^(2g-i), coefficients stored as a_0 = 1, ..., a_2g."""

    g: int
    p: int
    q: int
    coefficients: tuple

    def __post_init__(self):
        a = tuple(int(x) for x in self.coefficients)
        object.__setattr__(self, "coefficients", a)
        g, q = self.g, self.q
        if len(a) != 2 * g + 1:
            raise ValidationError(f"need {2 * g + 1} coefficients for g={g}")
        if a[0] != 1:
            raise ValidationError("polynomial must be monic")
        if prime_of(q) != self.p:
            raise ValidationError(f"q={q} is not a power of p={self.p}")
        for i in range(g + 1):
            if a[2 * g - i] != q ** (g - i) * a[i]:
                raise ValidationError(
                    f"functional equation fails: a_{2 * g - i} != q^{g - i} a_{i}")

    @classmethod
    def from_half(cls, g, q, half, p=None):
        """Complete a_1..a_g by the functional equation."""
        half = [int(x) for x in half]
        if len(half) != g:
            raise ValidationError(f"need {g} coefficients a_1..a_g")
        a = [1] + half
        a += [q ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
        return cls(g, prime_of(q) if p is None else p, q, tuple(a))

    @property
    def trailing(self):
        return self.coefficients[-1]

    def sympy_poly(self):
        import sympy
        T = sympy.Symbol("T")
        return sympy.Poly(list(self.coefficients), T)

    def __str__(self):
        terms = []
        n = 2 * self.g
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            e = n - i
            mono = "" if e == 0 else ("T" if e == 1 else f"T^{e}")
            coef = str(abs(c)) if (abs(c) != 1 or e == 0) else ""
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + mono))
        s = "".join(f" {sg} {t}" for sg, t in terms).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def parse_weil(coefficients=None, p=None, q=None, label=None):
    """Build a WeilPolynomial from a label or from coefficients.

    ``coefficients`` may be the full list a_0..a_2g (a_0 = 1) or just
    a_1..a_g, in which case the rest follows from the functional equation.
    """
    if label is not None:
        from ..labels import decode_label
        P = decode_label(label)
        if q is not None and int(q) != P.q:
            raise ValidationError("q does not match the label")
        return P
    if coefficients is None or q is None:
        raise ValidationError("need coefficients and q")
    q = int(q)
    coeffs = [int(c) for c in coefficients]
    pp = prime_of(q)
    if p is not None and int(p) != pp:
        raise ValidationError(f"q={q} is not a power of p={p}")
    if len(coeffs) % 2 == 1 and len(coeffs) >= 3 and coeffs[0] == 1:
        g = (len(coeffs) - 1) // 2
        return WeilPolynomial(g, pp, q, tuple(coeffs))
    return WeilPolynomial.from_half(len(coeffs), q, coeffs, pp)


def _vp(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def lower_hull(points):
    """Lower convex hull (monotone chain) of points sorted by x."""
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon_of(P: WeilPolynomial) -> NewtonPolygon:
    k = _vp(P.q, P.p)
    pts = [(i, Fraction(_vp(abs(a), P.p), k)) for i, a in enumerate(P.coefficients) if a != 0]
    hull = lower_hull(pts)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = (y2 - y1) / (x2 - x1)
        slopes += [s] * (x2 - x1)
    return NewtonPolygon(tuple(slopes))
