"""Newton polygons and weight functions on the 2g paired symbols."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

import numpy as np

from .errors import ValidationError


def parse_fraction(tok) -> Fraction:
    try:
        return Fraction(str(tok).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational number: {tok!r}") from exc


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class NewtonPolygon:
    """Slope multiset of a q-Newton polygon, sorted ascending."""

    slopes: tuple

    def __post_init__(self):
        s = tuple(sorted(Fraction(x) for x in self.slopes))
        object.__setattr__(self, "slopes", s)
        if not s or len(s) % 2:
            raise ValidationError("a Newton polygon needs an even, positive number of slopes")
        if any(x < 0 or x > 1 for x in s):
            raise ValidationError("slopes must lie in [0, 1]")
        counts = Counter(s)
        for x, k in counts.items():
            if counts.get(1 - x, 0) != k:
                raise ValidationError(
                    f"symmetry violated: slope {format_fraction(x)} occurs {k} times "
                    f"but {format_fraction(1 - x)} occurs {counts.get(1 - x, 0)} times")
            if k % x.denominator:
                raise ValidationError(
                    f"integrality violated: slope {format_fraction(x)} has multiplicity {k}, "
                    f"not divisible by {x.denominator}")

    @classmethod
    def parse(cls, text):
        toks = [t for t in str(text).replace(" ", "").split(",") if t]
        return cls(tuple(parse_fraction(t) for t in toks))

    @classmethod
    def from_segments(cls, segments):
        return cls(tuple(s for s, n in segments for _ in range(n)))

    @property
    def g(self):
        return len(self.slopes) // 2

    def segments(self):
        """(slope, horizontal length) per distinct slope, ascending."""
        return sorted(Counter(self.slopes).items())

    @property
    def is_supersingular(self):
        return all(s == Fraction(1, 2) for s in self.slopes)

    @property
    def is_ordinary(self):
        return all(s in (0, 1) for s in self.slopes)

    def __str__(self):
        return ",".join(format_fraction(s) for s in self.slopes)

    def pretty(self):
        parts = []
        for s, n in self.segments():
            parts.append(format_fraction(s) + (f"^{n}" if n > 1 else ""))
        return "[" + ", ".join(parts) + "]"


def all_newton_polygons(g):
    """Every valid slope multiset for dimension g, in a fixed order.

    A polygon is fixed by its slopes below 1/2 (multiplicity of a/d a
    multiple of d) plus the number of slope-1/2 pairs.
    """
    cands = sorted({Fraction(a, d) for d in range(1, 2 * g + 1) for a in range(0, d)
                    if Fraction(a, d) < Fraction(1, 2)})
    out = []

    def rec(i, left, chosen):
        if i == len(cands):
            lower = [s for s, n in chosen for _ in range(n)]
            rest = g - len(lower)
            slopes = lower + [Fraction(1, 2)] * (2 * rest) + [1 - s for s in lower]
            out.append(NewtonPolygon(tuple(slopes)))
            return
        s = cands[i]
        d = s.denominator
        for n in range(0, left + 1, d):
            rec(i + 1, left - n, chosen + ([(s, n)] if n else []))

    rec(0, g, [])
    return sorted(out, key=lambda p: p.slopes)


def gcd_simplicity_criterion(np_: NewtonPolygon) -> bool:
    """True iff the segment lengths of distinct slopes have gcd 1."""
    return gcd(*(n for _, n in np_.segments())) == 1


@dataclass(frozen=True)
class WeightFunction:
    """Values on the 0-based symbol slots ``1..g, g~..1~``."""

    g: int
    values: tuple

    def __post_init__(self):
        g = self.g
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != 2 * g:
            raise ValidationError(f"weight function needs {2 * g} values")
        for i in range(g):
            if vals[i] + vals[2 * g - 1 - i] != 1:
                raise ValidationError(f"w({i + 1}) + w({i + 1}~) must equal 1")
            if vals[i] < 0 or vals[2 * g - 1 - i] < 0:
                raise ValidationError("weights must be nonnegative")
        for i in range(g - 1):
            if vals[i] > vals[i + 1]:
                raise ValidationError("weights must be nondecreasing on 1..g")
        NewtonPolygon(vals)

    @classmethod
    def from_newton(cls, np_: NewtonPolygon) -> "WeightFunction":
        g = np_.g
        lower = np_.slopes[:g]
        barred = [1 - lower[g - 1 - j] for j in range(g)]
        return cls(g, tuple(lower) + tuple(barred))

    @property
    def newton(self):
        return NewtonPolygon(self.values)

    @cached_property
    def scale(self):
        """Common denominator L so that L*w is integral."""
        return lcm(*(v.denominator for v in self.values))

    @cached_property
    def scaled(self):
        arr = np.array([int(v * self.scale) for v in self.values], dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def __call__(self, x):
        return self.values[x]


def weight_from_newton(slopes) -> WeightFunction:
    if not isinstance(slopes, NewtonPolygon):
        slopes = NewtonPolygon(tuple(slopes))
    return WeightFunction.from_newton(slopes)
