"""Dense univariate polynomials with exact rational coefficients.

Poincare series in this package are polynomials in ``t``; every coefficient
is a :class:`fractions.Fraction` so no rounding ever happens.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]

#: Degree reported for the zero polynomial.
ZERO_DEGREE = -1


class Poly:
    """Immutable polynomial ``c[0] + c[1] t + ... + c[d] t^d``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Poly":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def one(cls) -> "Poly":
        return cls([1])

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1 if self._c else ZERO_DEGREE

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._c)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._c)

    def to_list(self) -> list:
        """Coefficient array; integers when every coefficient is integral."""
        if self.is_integral():
            return [int(c) for c in self._c]
        return [str(c) for c in self._c]

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self._c])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return Poly([c / other for c in self._c])
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = Poly.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by ``t**k``."""
        if not self._c or k == 0:
            return self
        return Poly([0] * k + list(self._c))

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dc = divisor._c
        lead = dc[-1]
        dd = len(dc) - 1
        if len(rem) - 1 < dd:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            q = rem[k] / lead
            if q:
                quot[k - dd] = q
                for j, y in enumerate(dc):
                    rem[k - dd + j] -= q * y
        return Poly(quot), Poly(rem[:dd])

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient, raising :class:`ArithmeticError` on a nonzero remainder."""
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {divisor}; remainder {r}")
        return q

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._c == o._c

    def __hash__(self):
        return hash(self._c)

    def render(self, var: str = "t") -> str:
        """Human form such as ``1 + 2*t + 5*t^4``."""
        if not self._c:
            return "0"
        parts = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly({self.to_list()!r})"


def prod(polys: Iterable[Poly]) -> Poly:
    out = Poly.one()
    for p in polys:
        out = out * p
    return out


def parse(text: str, var: str = "t") -> Poly:
    """Inverse of :meth:`Poly.render` (also accepts ``t**k``)."""
    s = text.replace(" ", "").replace("**", "^")
    if s in ("", "0"):
        return Poly()
    if s[0] not in "+-":
        s = "+" + s
    terms, cur = [], ""
    for ch in s:
        if ch in "+-" and cur:
            terms.append(cur)
            cur = ""
        cur += ch
    terms.append(cur)
    out: dict[int, Fraction] = {}
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term[1:]
        if var in body:
            coeff_s, _, mono = body.partition(var)
            coeff_s = coeff_s.rstrip("*")
            coeff = Fraction(coeff_s) if coeff_s else Fraction(1)
            exp = int(mono[1:]) if mono.startswith("^") else 1
        else:
            coeff, exp = Fraction(body), 0
        out[exp] = out.get(exp, Fraction(0)) + sign * coeff
    top = max(out)
    return Poly([out.get(k, 0) for k in range(top + 1)])
