"""Exact-rational polynomials in the bath size N."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact coefficient required, got {type(x).__name__}")


class PolynomialInN:
    """Polynomial with :class:`~fractions.Fraction` coefficients, ascending degree.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> PolynomialInN:
        return cls([c])

    @classmethod
    def variable(cls) -> PolynomialInN:
        return cls([0, 1])

    @classmethod
    def interpolate(cls, points) -> PolynomialInN:
        """Unique polynomial of degree < len(points) through exact (x, y) pairs.

        Newton divided differences followed by expansion to monomials.
        """
        xs = [_frac(x) for x, _ in points]
        dd = [_frac(y) for _, y in points]
        n = len(xs)
        if len(set(xs)) != n:
            raise ValueError("interpolation nodes must be distinct")
        for level in range(1, n):
            for i in range(n - 1, level - 1, -1):
                dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
        # Horner in Newton form: p = dd[n-1]; p = p*(x - xs[i]) + dd[i]
        poly = [dd[-1]]
        for i in range(n - 2, -1, -1):
            shifted = [Fraction(0)] + poly
            for d in range(len(poly)):
                shifted[d] -= xs[i] * poly[d]
            shifted[0] += dd[i]
            poly = shifted
        return cls(poly)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else Fraction(0)

    def __call__(self, n):
        if isinstance(n, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * n + float(c)
            return acc
        x = _frac(n)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> PolynomialInN:
        if isinstance(other, PolynomialInN):
            return other
        return PolynomialInN([_frac(other)])

    def __add__(self, other):
        o = self._coerce(other)
        m = max(len(self.coeffs), len(o.coeffs))
        return PolynomialInN([self.coeff(i) + o.coeff(i) for i in range(m)])

    __radd__ = __add__

    def __neg__(self):
        return PolynomialInN([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return PolynomialInN()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return PolynomialInN(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = _frac(other)
        return PolynomialInN([c / d for c in self.coeffs])

    def __pow__(self, k: int):
        out = PolynomialInN([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, PolynomialInN):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolynomialInN([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items) -> PolynomialInN:
        return cls([Fraction(s) for s in items])

    def __repr__(self):
        return f"PolynomialInN({self.to_strings()!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if d == 0 else ("N" if d == 1 else f"N^{d}")
            mag = abs(c)
            body = str(mag) if (mag != 1 or d == 0) else ""
            if body and mono:
                body = f"{body}*{mono}" if mag.denominator != 1 else f"{body}{mono}"
            else:
                body = body or mono
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
