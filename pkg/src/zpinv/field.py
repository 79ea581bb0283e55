"""Prime-field scalars.

Scalars carry their prime so mixed-field arithmetic fails loudly.  The
heavy numeric paths in the package keep coefficients as plain reduced
ints; :class:`FpScalar` is the value type at the API boundary
(coefficients of lead terms, matrix entries and the like).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbientMismatchError

MAX_PRIME = 1 << 16

_prime_cache: dict[int, bool] = {}


def is_prime(n: int) -> bool:
    """Trial-division primality test; plenty for p < 2^16."""
    if n in _prime_cache:
        return _prime_cache[n]
    if n < 2:
        result = False
    else:
        result = True
        d = 2
        while d * d <= n:
            if n % d == 0:
                result = False
                break
            d += 1
    _prime_cache[n] = result
    return result


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
    if p >= MAX_PRIME:
        raise ValueError(f"p must be < 2^16, got {p}")
    return p


@dataclass(frozen=True)
class FpScalar:
    """A fully reduced residue in F_p with field arithmetic."""

    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "FpScalar":
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise AmbientMismatchError(
                    f"cannot mix F_{self.p} and F_{other.p} scalars"
                )
            return other
        if isinstance(other, int):
            return FpScalar(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FpScalar(pow(self.value, exponent, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, FpScalar):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpScalar({self.value}, p={self.p})"
