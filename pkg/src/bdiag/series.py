"""Truncated power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Sequence


class SeriesQ:
    """Coefficients c_0..c_T of an ordinary power series, truncated at order T.

    ``egf`` only records how the series is meant to be read; arithmetic is on
    the ordinary coefficients.
    """

    __slots__ = ("coeffs", "egf")

    def __init__(self, coeffs: Sequence, order: int | None = None, egf: bool = False):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        self.coeffs = cs
        self.egf = egf

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_egf(cls, values: Sequence[int], order: int | None = None) -> "SeriesQ":
        """Series sum values[n] z^n / n!."""
        return cls([Fraction(v, factorial(n)) for n, v in enumerate(values)], order, egf=True)

    def egf_values(self) -> list[Fraction]:
        return [c * factorial(n) for n, c in enumerate(self.coeffs)]

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        return isinstance(other, SeriesQ) and self.coeffs == other.coeffs

    def _coerce(self, other) -> "SeriesQ":
        if isinstance(other, SeriesQ):
            if other.order != self.order:
                raise ValueError("truncation orders differ")
            return other
        return SeriesQ([other], self.order)

    def __add__(self, other) -> "SeriesQ":
        o = self._coerce(other)
        return SeriesQ([a + b for a, b in zip(self.coeffs, o.coeffs)], egf=self.egf)

    __radd__ = __add__

    def __neg__(self) -> "SeriesQ":
        return SeriesQ([-a for a in self.coeffs], egf=self.egf)

    def __sub__(self, other) -> "SeriesQ":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SeriesQ":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SeriesQ":
        if not isinstance(other, SeriesQ):
            return SeriesQ([a * Fraction(other) for a in self.coeffs], egf=self.egf)
        o = self._coerce(other)
        T = self.order
        out = [Fraction(0)] * (T + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(T + 1 - i):
                    out[i + j] += a * o.coeffs[j]
        return SeriesQ(out, egf=self.egf)

    __rmul__ = __mul__

    def derivative(self) -> "SeriesQ":
        """Formal derivative, padded with a zero at the top order."""
        return SeriesQ([n * c for n, c in enumerate(self.coeffs)][1:] + [Fraction(0)])

    def exp(self) -> "SeriesQ":
        """exp(f) for f with f(0) = 0, via g' = f' g."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term")
        T = self.order
        g = [Fraction(0)] * (T + 1)
        g[0] = Fraction(1)
        for n in range(1, T + 1):
            g[n] = sum(k * self.coeffs[k] * g[n - k] for k in range(1, n + 1)) / n
        return SeriesQ(g, egf=self.egf)

    def log(self) -> "SeriesQ":
        """log(f) for f with f(0) = 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        T = self.order
        f = self.coeffs
        h = [Fraction(0)] * (T + 1)
        for n in range(1, T + 1):
            h[n] = f[n] - sum(k * h[k] * f[n - k] for k in range(1, n)) / n
        return SeriesQ(h, egf=self.egf)

    def pow(self, alpha) -> "SeriesQ":
        """f^alpha for f(0) = 1 and rational alpha, via f g' = alpha f' g."""
        alpha = Fraction(alpha)
        f = self.coeffs
        if f[0] != 1:
            raise ValueError("pow needs constant term 1")
        T = self.order
        g = [Fraction(0)] * (T + 1)
        g[0] = Fraction(1)
        for n in range(1, T + 1):
            s = sum((alpha * k - (n - k)) * f[k] * g[n - k] for k in range(1, n + 1))
            g[n] = s / n
        return SeriesQ(g, egf=self.egf)

    def compose(self, inner: "SeriesQ") -> "SeriesQ":
        """self(inner(z)) for inner with zero constant term (Horner scheme)."""
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        T = self.order
        out = SeriesQ([0], T)
        for c in reversed(self.coeffs):
            out = out * inner + SeriesQ([c], T)
        return out

    def __repr__(self) -> str:
        return f"SeriesQ({[str(c) for c in self.coeffs]})"


def exp_z(a, order: int) -> SeriesQ:
    """exp(a z)."""
    a = Fraction(a)
    return SeriesQ([a ** n / factorial(n) for n in range(order + 1)])


def solve_ode(rhs: Callable[[SeriesQ], SeriesQ], f0, order: int) -> SeriesQ:
    """Coefficientwise solution of f' = rhs(f) with f(0) = f0."""
    coeffs = [Fraction(f0)] + [Fraction(0)] * order
    for n in range(order):
        f = SeriesQ(coeffs, order)
        coeffs[n + 1] = rhs(f).coeffs[n] / (n + 1)
    return SeriesQ(coeffs)
