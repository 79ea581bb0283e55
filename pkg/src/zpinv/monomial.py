"""Monomials with the graded reverse lexicographic order.

A monomial stores its exponent tuple over the ascending variable list of
its ambient spec.  Grevlex comparison: higher total degree wins; on
ties, scan variables in ascending order and at the first position where
the exponents differ the monomial with the *smaller* exponent is the
larger monomial.  Equivalently the sort key is
``(degree, negated exponent tuple)`` under lexicographic comparison.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import AmbientMismatchError
from .modspec import ModuleSpec, VariableId


class Monomial:
    __slots__ = ("spec", "exps", "_degree", "_multidegree", "_hash")

    def __init__(self, spec: ModuleSpec, exps):
        self.spec = spec
        exps = tuple(int(e) for e in exps)
        if len(exps) != spec.dim:
            raise ValueError(
                f"expected {spec.dim} exponents for {spec}, got {len(exps)}"
            )
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        self.exps = exps
        self._degree = sum(exps)
        self._multidegree = None
        self._hash = hash(exps)

    @classmethod
    def one(cls, spec: ModuleSpec) -> "Monomial":
        return cls(spec, (0,) * spec.dim)

    @classmethod
    def from_pairs(cls, spec: ModuleSpec, pairs) -> "Monomial":
        """Build from ``{VariableId: exponent}`` or an iterable of pairs."""
        if isinstance(pairs, dict):
            pairs = pairs.items()
        exps = [0] * spec.dim
        for var, e in pairs:
            exps[spec.var_index(var)] += int(e)
        return cls(spec, exps)

    # -- cached grading ------------------------------------------------------

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def multidegree(self) -> tuple[int, ...]:
        """Per-summand degree vector."""
        if self._multidegree is None:
            md = []
            for i in range(1, self.spec.k + 1):
                sl = self.spec.summand_slice(i)
                md.append(sum(self.exps[sl]))
            self._multidegree = tuple(md)
        return self._multidegree

    # -- order ----------------------------------------------------------------

    def sort_key(self):
        return (self._degree, tuple(-e for e in self.exps))

    def _check_ambient(self, other: "Monomial"):
        if self.spec is not other.spec and self.spec != other.spec:
            raise AmbientMismatchError(
                f"monomials from different specs: {self.spec} vs {other.spec}"
            )

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps and self.spec == other.spec

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        self._check_ambient(other)
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        self._check_ambient(other)
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        self._check_ambient(other)
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        self._check_ambient(other)
        return self.sort_key() >= other.sort_key()

    # -- arithmetic -------------------------------------------------------------

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check_ambient(other)
        return Monomial(self.spec, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        self._check_ambient(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        self._check_ambient(other)
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.spec, tuple(a - b for a, b in zip(self.exps, other.exps)))

    def exponent(self, var: VariableId) -> int:
        return self.exps[self.spec.var_index(var)]

    def support(self):
        """Variables with positive exponent, ascending."""
        return tuple(
            v for v, e in zip(self.spec.variables, self.exps) if e > 0
        )

    def __repr__(self):
        if self._degree == 0:
            return "1"
        parts = []
        # display largest variable first
        for v, e in reversed(tuple(zip(self.spec.variables, self.exps))):
            if e == 1:
                parts.append(v.name)
            elif e > 1:
                parts.append(f"{v.name}^{e}")
        return "*".join(parts)


# -- enumeration ------------------------------------------------------------


@lru_cache(maxsize=None)
def chain_exponents(n: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree over n variables.

    Positions are listed smallest variable first and the tuples come out
    in ascending lexicographic order, which is descending grevlex order
    for the monomials they encode.
    """
    if n == 0:
        return ((),) if degree == 0 else ()
    if n == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree + 1):
        for rest in chain_exponents(n - 1, degree - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def chain_exponent_array(n: int, degree: int) -> np.ndarray:
    """`chain_exponents` as a read-only (count, n) int64 array."""
    mons = chain_exponents(n, degree)
    arr = np.array(mons, dtype=np.int64).reshape(len(mons), n)
    arr.setflags(write=False)
    return arr


def monomial_count(spec: ModuleSpec, degree=None, multidegree=None) -> int:
    """Closed-form count matching `enumerate_monomials`."""
    from math import comb

    if multidegree is not None:
        if len(multidegree) != spec.k:
            raise ValueError("multidegree length must equal the summand count")
        count = 1
        for d_i, mu_i in zip(spec.blocks, multidegree):
            count *= comb(mu_i + d_i - 1, d_i - 1)
        return count
    if spec.dim == 0:
        return 1 if degree == 0 else 0
    return comb(degree + spec.dim - 1, spec.dim - 1)


def compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All tuples of `parts` non-negative ints summing to `total`, lex order."""
    if parts == 0:
        return ((),) if total == 0 else ()
    return tuple(
        (first,) + rest
        for first in range(total + 1)
        for rest in compositions(total - first, parts - 1)
    )


def enumerate_monomials(spec: ModuleSpec, degree=None, multidegree=None):
    """All monomials of a total degree or multidegree, descending grevlex.

    Exactly one of the two constraints must be given.
    """
    if (degree is None) == (multidegree is None):
        raise ValueError("give exactly one of degree / multidegree")
    if multidegree is not None:
        multidegree = tuple(int(m) for m in multidegree)
        if len(multidegree) != spec.k:
            raise ValueError("multidegree length must equal the summand count")
        if any(m < 0 for m in multidegree):
            raise ValueError("multidegree entries must be >= 0")
        pieces = [chain_exponents(d_i, mu_i) for d_i, mu_i in zip(spec.blocks, multidegree)]
        out = [()]
        for piece in pieces:
            out = [head + tail for head in out for tail in piece]
        return [Monomial(spec, exps) for exps in out]
    if degree < 0:
        raise ValueError("degree must be >= 0")
    return [Monomial(spec, exps) for exps in chain_exponents(spec.dim, degree)]
