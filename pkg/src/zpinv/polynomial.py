"""Sparse polynomials over F_p keyed by exponent-vector monomials.

Coefficients are stored as plain ints, always reduced into ``[1, p-1]``
(zero terms are dropped), so equality is term-map equality.  The field
scalar type shows up at the API boundary: `lead_term` and
`coefficient` return :class:`~zpinv.field.FpScalar`.
"""

from __future__ import annotations

from .errors import AmbientMismatchError, ZeroPolynomialError
from .field import FpScalar
from .modspec import ModuleSpec, VariableId
from .monomial import Monomial


class Polynomial:
    __slots__ = ("spec", "_terms", "_sorted")

    def __init__(self, spec: ModuleSpec, terms=None, _normalized=False):
        self.spec = spec
        self._sorted = None
        if terms is None:
            self._terms = {}
        elif _normalized:
            self._terms = terms
        else:
            clean: dict[Monomial, int] = {}
            for mon, c in terms.items() if isinstance(terms, dict) else terms:
                c = int(c) % spec.p
                if c == 0:
                    continue
                if mon.spec != spec:
                    raise AmbientMismatchError(
                        f"monomial {mon} does not live in {spec}"
                    )
                acc = (clean.get(mon, 0) + c) % spec.p
                if acc:
                    clean[mon] = acc
                else:
                    clean.pop(mon, None)
            self._terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec: ModuleSpec) -> "Polynomial":
        return cls(spec, {}, _normalized=True)

    @classmethod
    def one(cls, spec: ModuleSpec) -> "Polynomial":
        return cls.constant(spec, 1)

    @classmethod
    def constant(cls, spec: ModuleSpec, c: int) -> "Polynomial":
        c = int(c) % spec.p
        if c == 0:
            return cls.zero(spec)
        return cls(spec, {Monomial.one(spec): c}, _normalized=True)

    @classmethod
    def variable(cls, spec: ModuleSpec, var: VariableId) -> "Polynomial":
        mon = Monomial.from_pairs(spec, [(var, 1)])
        return cls(spec, {mon: 1}, _normalized=True)

    @classmethod
    def from_monomial(cls, mon: Monomial, c: int = 1) -> "Polynomial":
        return cls(mon.spec, {mon: c})

    # -- inspection ------------------------------------------------------------

    def terms(self):
        """Terms as (monomial, int coefficient), descending grevlex."""
        if self._sorted is None:
            self._sorted = tuple(
                sorted(self._terms.items(), key=lambda t: t[0].sort_key(), reverse=True)
            )
        return self._sorted

    def coefficient(self, mon: Monomial) -> FpScalar:
        return FpScalar(self._terms.get(mon, 0), self.spec.p)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def lead_term(self) -> tuple[Monomial, FpScalar]:
        """Maximal monomial under grevlex, with its coefficient."""
        if not self._terms:
            raise ZeroPolynomialError("the zero polynomial has no lead term")
        mon = max(self._terms, key=Monomial.sort_key)
        return mon, FpScalar(self._terms[mon], self.spec.p)

    def lead_monomial(self) -> Monomial:
        return self.lead_term()[0]

    def degree(self):
        """Max term degree; None for the zero polynomial."""
        if not self._terms:
            return None
        return max(m.degree for m in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {m.degree for m in self._terms}
        return len(degrees) <= 1

    def multidegree(self):
        """Common multidegree of all terms, or None if mixed or zero."""
        mds = {m.multidegree for m in self._terms}
        if len(mds) == 1:
            return next(iter(mds))
        return None

    def components_by_multidegree(self) -> dict[tuple[int, ...], "Polynomial"]:
        parts: dict[tuple[int, ...], dict[Monomial, int]] = {}
        for mon, c in self._terms.items():
            parts.setdefault(mon.multidegree, {})[mon] = c
        return {
            mu: Polynomial(self.spec, terms, _normalized=True)
            for mu, terms in sorted(parts.items())
        }

    # -- ring arithmetic ----------------------------------------------------

    def _check_ambient(self, other: "Polynomial"):
        if self.spec != other.spec:
            raise AmbientMismatchError(
                f"polynomials from different specs: {self.spec} vs {other.spec}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.spec, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ambient(other)
        p = self.spec.p
        out = dict(self._terms)
        for mon, c in other._terms.items():
            acc = (out.get(mon, 0) + c) % p
            if acc:
                out[mon] = acc
            else:
                out.pop(mon, None)
        return Polynomial(self.spec, out, _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return Polynomial(
            self.spec, {m: p - c for m, c in self._terms.items()}, _normalized=True
        )

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.spec, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        c = int(c) % self.spec.p
        if c == 0:
            return Polynomial.zero(self.spec)
        if c == 1:
            return self
        p = self.spec.p
        return Polynomial(
            self.spec, {m: (c * v) % p for m, v in self._terms.items()}, _normalized=True
        )

    def __mul__(self, other):
        if isinstance(other, (int, FpScalar)):
            return self.scale(int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ambient(other)
        p = self.spec.p
        out: dict[Monomial, int] = {}
        if len(other._terms) < len(self._terms):
            a, b = other, self
        else:
            a, b = self, other
        for m1, c1 in a._terms.items():
            for m2, c2 in b._terms.items():
                mon = m1 * m2
                acc = (out.get(mon, 0) + c1 * c2) % p
                if acc:
                    out[mon] = acc
                else:
                    out.pop(mon, None)
        return Polynomial(self.spec, out, _normalized=True)

    def __rmul__(self, other):
        if isinstance(other, (int, FpScalar)):
            return self.scale(int(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self) -> "Polynomial":
        """Scale so the lead coefficient is 1."""
        _, c = self.lead_term()
        return self.scale(pow(int(c), -1, self.spec.p))

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.spec, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.spec == other.spec and self._terms == other._terms

    def __hash__(self):
        return hash((self.spec, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for mon, c in self.terms():
            if mon.degree == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(repr(mon))
            else:
                parts.append(f"{c}*{mon!r}")
        return " + ".join(parts)


def poly_arith(f: Polynomial, g: Polynomial, op: str, c: int | None = None) -> Polynomial:
    """Functional face of the ring arithmetic: op in {add, mul, scalar_mul}."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        if c is None:
            raise ValueError("scalar_mul needs the scalar c")
        return f.scale(c)
    raise ValueError(f"unknown op {op!r}")


def lead_term(f: Polynomial) -> tuple[Monomial, FpScalar]:
    return f.lead_term()
