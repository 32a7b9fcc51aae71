"""Dense polynomials in ``q`` with arbitrary-precision integer coefficients."""

from __future__ import annotations

from typing import Iterable, Sequence, Union


class InexactDivision(ArithmeticError):
    """Raised by :meth:`QPoly.exact_div` when the divisor does not divide."""

    def __init__(self, num, den, remainder):
        super().__init__(f"{den} does not divide {num}: remainder {remainder}")
        self.remainder = remainder


def _trim(coeffs: Sequence[int]) -> tuple:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class QPoly:
    """Immutable polynomial ``a0 + a1*q + ...``; ``coeffs[k]`` is the q^k coefficient.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim([int(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "QPoly":
        # coeffs must already be trimmed
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "QPoly":
        if degree < 0:
            raise ValueError("negative exponents are not supported")
        if coeff == 0:
            return ZERO
        return cls._raw((0,) * degree + (coeff,))

    @classmethod
    def const(cls, c: int) -> "QPoly":
        return cls._raw((c,)) if c else ZERO

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("QPoly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"QPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    # ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        elif not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return QPoly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        elif not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly._raw(_trim(out))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: int) -> "QPoly":
        if c == 0:
            return ZERO
        return QPoly._raw(tuple(c * x for x in self.coeffs))

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k."""
        if not self.coeffs:
            return ZERO
        return QPoly._raw((0,) * k + self.coeffs)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, den: "QPoly"):
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = den.degree
        lead = den.coeffs[-1]
        if len(rem) <= dd:
            return ZERO, self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            if c % lead:
                # not divisible over Z; leave the rest as remainder
                return QPoly(quot), QPoly(rem)
            t = c // lead
            quot[k - dd] = t
            for j, d in enumerate(den.coeffs):
                rem[k - dd + j] -= t * d
        return QPoly(quot), QPoly(rem)

    def exact_div(self, den: "QPoly") -> "QPoly":
        quot, rem = self.divmod(den)
        if rem:
            raise InexactDivision(self, den, rem)
        return quot

    def is_nonneg(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_json(self) -> list:
        return list(self.coeffs)


ZERO = QPoly._raw(())
ONE = QPoly._raw((1,))
Q = QPoly._raw((0, 1))

PolyLike = Union[QPoly, int]


def as_qpoly(x: PolyLike) -> QPoly:
    return x if isinstance(x, QPoly) else QPoly.const(int(x))
