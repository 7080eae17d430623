"""LMFDB isogeny-class labels ``g.q.c1_c2_..._cg``.

Each coefficient is written in base 26 with digits a=0 .. z=25, most
significant first.  A negative value is the letter ``a`` followed by the
encoding of its absolute value; nonnegative values never start with a
redundant ``a`` except for 0 itself, so the two cases cannot collide.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import sympy

from .errors import ValidationError

_ALPHA = "abcdefghijklmnopqrstuvwxyz"


def encode_int(n: int) -> str:
    if n < 0:
        return "a" + encode_int(-n)
    if n == 0:
        return "a"
    out = []
    while n:
        n, r = divmod(n, 26)
        out.append(_ALPHA[r])
    return "".join(reversed(out))


def decode_int(s: str) -> int:
    if not s or not re.fullmatch(r"[a-z]+", s):
        raise ValidationError(f"bad coefficient code {s!r}")
    if len(s) > 1 and s[0] == "a":
        return -decode_int(s[1:])
    n = 0
    for ch in s:
        n = 26 * n + _ALPHA.index(ch)
    return n


def prime_of(q: int) -> int:
    """The prime p with q = p^k, or a ValidationError."""
    if q < 2:
        raise ValidationError(f"{q} is not a prime power")
    f = sympy.factorint(q)
    if len(f) != 1:
        raise ValidationError(f"{q} is not a prime power")
    return next(iter(f))


@dataclass(frozen=True)
class IsogenyLabel:
    g: int
    q: int
    coded_coefficients: tuple

    @classmethod
    def parse(cls, label: str) -> "IsogenyLabel":
        m = re.fullmatch(r"(\d+)\.(\d+)\.([a-z_]+)", label.strip())
        if not m:
            raise ValidationError(f"malformed label {label!r}")
        g, q = int(m.group(1)), int(m.group(2))
        codes = tuple(m.group(3).split("_"))
        if g < 1 or len(codes) != g:
            raise ValidationError(f"label {label!r} should carry {g} coefficients")
        prime_of(q)
        for c in codes:
            decode_int(c)
        return cls(g, q, codes)

    @property
    def coefficients(self):
        """a_1 .. a_g."""
        return tuple(decode_int(c) for c in self.coded_coefficients)

    @classmethod
    def from_coefficients(cls, g, q, coeffs):
        return cls(g, q, tuple(encode_int(int(a)) for a in coeffs[:g]))

    def __str__(self):
        return f"{self.g}.{self.q}.{'_'.join(self.coded_coefficients)}"


def decode_label(label: str):
    """WeilPolynomial for an LMFDB label."""
    from .analyzer.weil import WeilPolynomial
    lab = IsogenyLabel.parse(label)
    return WeilPolynomial.from_half(lab.g, lab.q, lab.coefficients)
