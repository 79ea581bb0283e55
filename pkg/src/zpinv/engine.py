"""Graded pieces of the invariant ring by exact kernel linear algebra.

The action preserves the per-summand multidegree, so every computation
is blocked: a multidegree block carries the monomials of one multidegree
vector, the matrix of sigma on the block is the Kronecker product of
per-summand matrices, and invariants are the kernel of (sigma - 1).

Decomposable invariants in a block are spanned by products g * f where
g runs over the *new generators* found in strictly smaller blocks and f
over the invariant basis of the complementary block; this spans the same
space as all pairwise products of invariants (peel one factor at a time)
and keeps the row count small.  New generators at a block are the
invariant basis vectors that survive reduction against that span.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from itertools import product as iter_product

import numpy as np

from .action import sigma, sigma_power
from .errors import PreconditionError, SizeBudgetError
from .linalg import Echelon, rank_mod, kernel_rows
from .modspec import ModuleSpec
from .monomial import (
    Monomial,
    chain_exponent_array,
    chain_exponents,
    compositions,
    enumerate_monomials,
)
from .polynomial import Polynomial

DEFAULT_COLUMN_CAP = 20000


# -- per-summand sigma matrices ------------------------------------------------


@lru_cache(maxsize=None)
def _chain_sigma_images(p: int, n: int, degree: int):
    """sigma images of all degree-`degree` monomials of one chain summand,
    as dicts keyed by exponent tuple (positions: deepest variable first)."""
    if degree == 0:
        zero = (0,) * n
        return {zero: {zero: 1}}
    prev = _chain_sigma_images(p, n, degree - 1)
    out = {}
    for m in chain_exponents(n, degree):
        j0 = next(j for j in range(n) if m[j])
        parent = m[:j0] + (m[j0] - 1,) + m[j0 + 1 :]
        base = prev[parent]
        img: dict[tuple, int] = {}
        # sigma(v at position j) = v + next-deeper variable (position j-1)
        targets = (j0, j0 - 1) if j0 else (j0,)
        for t, coef in base.items():
            for j in targets:
                t2 = t[:j] + (t[j] + 1,) + t[j + 1 :]
                acc = (img.get(t2, 0) + coef) % p
                if acc:
                    img[t2] = acc
                else:
                    img.pop(t2, None)
        out[m] = img
    return out


@lru_cache(maxsize=None)
def _chain_sigma_matrix(p: int, n: int, degree: int) -> np.ndarray:
    """Matrix of sigma on one summand block: [r, c] = coeff of mon r in sigma(mon c)."""
    mons = chain_exponents(n, degree)
    index = {m: i for i, m in enumerate(mons)}
    S = np.zeros((len(mons), len(mons)), dtype=np.int64)
    images = _chain_sigma_images(p, n, degree)
    for col, m in enumerate(mons):
        for t, coef in images[m].items():
            S[index[t], col] = coef
    S.setflags(write=False)
    return S


# -- multidegree blocks -----------------------------------------------------------


class _Block:
    """Monomials of one multidegree, ordered descending grevlex.

    The row order is the nested per-summand order (summand 1 outermost),
    which matches both global grevlex and the Kronecker index convention.
    Monomial identity is also packed into a single int64 code so that
    monomial multiplication becomes integer addition.
    """

    __slots__ = ("spec", "mu", "sizes", "size", "_powers", "_E", "_codes", "_sorted", "_perm")

    def __init__(self, spec: ModuleSpec, mu: tuple[int, ...], powers: np.ndarray):
        self.spec = spec
        self.mu = mu
        self.sizes = [len(chain_exponents(d, m)) for d, m in zip(spec.blocks, mu)]
        self.size = int(np.prod(self.sizes)) if self.sizes else 1
        self._powers = powers
        self._E = None
        self._codes = None
        self._sorted = None
        self._perm = None

    @property
    def exponents(self) -> np.ndarray:
        if self._E is None:
            nvars = self.spec.dim
            E = np.zeros((self.size, nvars), dtype=np.int64)
            stride = self.size
            col = 0
            for i, (d, m) in enumerate(zip(self.spec.blocks, self.mu)):
                arr = chain_exponent_array(d, m)
                stride //= self.sizes[i]
                idx = (np.arange(self.size) // stride) % self.sizes[i]
                E[:, col : col + d] = arr[idx]
                col += d
            self._E = E
        return self._E

    @property
    def codes(self) -> np.ndarray:
        if self._codes is None:
            self._codes = self.exponents @ self._powers
        return self._codes

    def lookup(self, codes: np.ndarray) -> np.ndarray:
        """Row indices of the given packed codes (must all belong to the block)."""
        if self._sorted is None:
            self._perm = np.argsort(self.codes, kind="stable")
            self._sorted = self.codes[self._perm]
        pos = np.searchsorted(self._sorted, codes)
        pos = np.minimum(pos, self.size - 1)
        if not np.array_equal(self._sorted[pos], codes):
            raise AssertionError(f"codes outside block {self.mu}")
        return self._perm[pos]

    def monomial(self, row: int) -> Monomial:
        return Monomial(self.spec, tuple(int(e) for e in self.exponents[row]))


# -- the engine ----------------------------------------------------------------


class InvariantEngine:
    """Cached per-multidegree invariant/decomposable data for one spec."""

    def __init__(self, spec: ModuleSpec, column_cap: int = DEFAULT_COLUMN_CAP):
        self.spec = spec
        self.column_cap = column_cap
        nvars = max(spec.dim, 1)
        bits = min(16, 62 // nvars)
        self._bits = bits
        self._max_exponent = (1 << bits) - 1
        self._powers = np.array(
            [(1 << (bits * j)) for j in range(spec.dim)], dtype=np.int64
        )
        self._blocks: dict[tuple, _Block] = {}
        self._inv: dict[tuple, np.ndarray] = {}
        self._dec_rank: dict[tuple, int] = {}
        self._dec_ech: dict[tuple, Echelon | None] = {}
        self._gens: dict[tuple, np.ndarray] = {}
        self._lock = threading.RLock()

    # -- blocks and invariant bases -------------------------------------

    def _check_mu(self, mu) -> tuple[int, ...]:
        mu = tuple(int(m) for m in mu)
        if len(mu) != self.spec.k or any(m < 0 for m in mu):
            raise ValueError(f"bad multidegree {mu} for {self.spec}")
        if sum(mu) > self._max_exponent:
            raise SizeBudgetError(
                f"degree {sum(mu)} exceeds the exponent packing range "
                f"({self._max_exponent}) for {self.spec.dim} variables"
            )
        return mu

    def block(self, mu) -> _Block:
        mu = self._check_mu(mu)
        blk = self._blocks.get(mu)
        if blk is None:
            blk = _Block(self.spec, mu, self._powers)
            if blk.size > self.column_cap:
                raise SizeBudgetError(
                    f"multidegree block {mu} of {self.spec} has {blk.size} "
                    f"columns, over the column cap {self.column_cap}"
                )
            self._blocks[mu] = blk
        return blk

    def _sigma_matrix(self, mu) -> np.ndarray:
        mats = [
            _chain_sigma_matrix(self.spec.p, d, m)
            for d, m in zip(self.spec.blocks, mu)
        ]
        if not mats:
            return np.ones((1, 1), dtype=np.int64)
        return reduce(lambda A, B: np.kron(A, B) % self.spec.p, mats)

    def inv_rows(self, mu) -> np.ndarray:
        """Echelonized invariant basis vectors of the block (int8 rows)."""
        mu = self._check_mu(mu)
        rows = self._inv.get(mu)
        if rows is None:
            with self._lock:
                rows = self._inv.get(mu)
                if rows is None:
                    blk = self.block(mu)
                    S = self._sigma_matrix(mu)
                    K = np.mod(S - np.eye(blk.size, dtype=np.int64), self.spec.p)
                    rows = kernel_rows(K, self.spec.p).astype(np.int8)
                    self._inv[mu] = rows
        return rows

    def inv_dim(self, mu) -> int:
        return self.inv_rows(mu).shape[0]

    # -- decomposables and new generators --------------------------------

    def _proper_subdegrees(self, mu):
        subs = [
            alpha
            for alpha in iter_product(*(range(m + 1) for m in mu))
            if alpha != mu and any(alpha)
        ]
        subs.sort(key=lambda a: (sum(a), a))
        return subs

    def _ensure(self, mu):
        mu = self._check_mu(mu)
        if mu in self._dec_rank:
            return
        with self._lock:
            if mu in self._dec_rank:
                return
            for alpha in self._proper_subdegrees(mu):
                if alpha not in self._dec_rank:
                    self._ensure(alpha)
            blk = self.block(mu)
            inv = self.inv_rows(mu)
            cap = inv.shape[0]
            ech = Echelon(self.spec.p, blk.size)
            if sum(mu) >= 2 and cap > 0:
                for alpha in self._proper_subdegrees(mu):
                    G = self._gens[alpha]
                    if G.shape[0] == 0:
                        continue
                    beta = tuple(m - a for m, a in zip(mu, alpha))
                    F = self.inv_rows(beta)
                    if F.shape[0] == 0:
                        continue
                    self._add_products(ech, alpha, G, beta, F, blk, cap)
                    if ech.rank >= cap:
                        break
            dec_rank = ech.rank
            self._dec_rank[mu] = dec_rank
            if cap == 0 or dec_rank == cap:
                self._gens[mu] = np.zeros((0, blk.size), dtype=np.int8)
                self._dec_ech[mu] = None  # saturated: Dec equals Inv here
            else:
                self._dec_ech[mu] = ech.copy()
                ech.add(inv)
                self._gens[mu] = ech.rows[dec_rank:].astype(np.int8)

    def _add_products(self, ech, alpha, G, beta, F, blk_mu, cap):
        p = self.spec.p
        blk_a = self.block(alpha)
        blk_b = self.block(beta)
        F64 = F.astype(np.int64)
        for g in G:
            g64 = g.astype(np.int64)
            sup = np.flatnonzero(g64)
            cols = blk_mu.lookup(blk_a.codes[sup][:, None] + blk_b.codes[None, :])
            out = np.zeros((F64.shape[0], blk_mu.size), dtype=np.int64)
            for t in range(len(sup)):
                out[:, cols[t]] += int(g64[sup[t]]) * F64
            ech.add(np.mod(out, p), rank_cap=cap)
            if ech.rank >= cap:
                return

    def dec_dim(self, mu) -> int:
        mu = self._check_mu(mu)
        self._ensure(mu)
        return self._dec_rank[mu]

    def gen_rows(self, mu) -> np.ndarray:
        mu = self._check_mu(mu)
        self._ensure(mu)
        return self._gens[mu]

    def indec_dim(self, mu) -> int:
        return self.gen_rows(mu).shape[0]

    def in_decomposable_span(self, mu, vec: np.ndarray) -> bool:
        """Membership in Dec for a vector already known to be invariant."""
        mu = self._check_mu(mu)
        self._ensure(mu)
        ech = self._dec_ech[mu]
        if ech is None:
            # block saturated: every invariant of the block is decomposable
            return True
        return ech.contains(vec)

    # -- degree aggregation --------------------------------------------------

    def degree_dims(self, d: int) -> tuple[int, int, int, int]:
        """(dim of polynomials, invariants, decomposables, indecomposables)."""
        tot = inv = dec = 0
        for mu in compositions(d, self.spec.k):
            blk = self.block(mu)
            tot += blk.size
            inv += self.inv_dim(mu)
            dec += self.dec_dim(mu)
        return tot, inv, dec, inv - dec

    # -- conversion between polynomials and block vectors ----------------------

    def vector_of(self, f: Polynomial, mu) -> np.ndarray:
        mu = self._check_mu(mu)
        blk = self.block(mu)
        vec = np.zeros(blk.size, dtype=np.int64)
        if not f:
            return vec
        if f.multidegree() != mu:
            raise PreconditionError(
                f"polynomial is not homogeneous of multidegree {mu}"
            )
        terms = f.terms()
        codes = np.array(
            [m.exps for m, _ in terms], dtype=np.int64
        ) @ self._powers
        vec[blk.lookup(codes)] = [c for _, c in terms]
        return vec

    def poly_from_row(self, mu, row: np.ndarray) -> Polynomial:
        blk = self.block(self._check_mu(mu))
        sup = np.flatnonzero(row)
        terms = {blk.monomial(int(j)): int(row[j]) for j in sup}
        return Polynomial(self.spec, terms)


_engines: dict[tuple[ModuleSpec, int], InvariantEngine] = {}
_engines_lock = threading.Lock()


def engine_for(spec: ModuleSpec, column_cap: int = DEFAULT_COLUMN_CAP) -> InvariantEngine:
    """Shared engine cache so repeated queries reuse block computations."""
    key = (spec, column_cap)
    with _engines_lock:
        eng = _engines.get(key)
        if eng is None:
            eng = InvariantEngine(spec, column_cap)
            _engines[key] = eng
        return eng


# -- public operations -------------------------------------------------------------


@dataclass
class GradedInvariantBasis:
    """Echelonized basis of the invariant space in one (multi)degree."""

    spec: ModuleSpec
    degree: int | None
    multidegree: tuple[int, ...] | None
    basis: list[Polynomial]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def invariant_basis(
    spec: ModuleSpec,
    degree: int | None = None,
    multidegree=None,
    column_cap: int = DEFAULT_COLUMN_CAP,
) -> GradedInvariantBasis:
    """Invariants of one total degree or one multidegree.

    Basis polynomials are echelonized against the descending monomial
    list: distinct lead monomials, pivot coefficient 1.  A total-degree
    query concatenates the multidegree blocks and sorts by lead monomial.
    """
    if (degree is None) == (multidegree is None):
        raise ValueError("give exactly one of degree / multidegree")
    eng = engine_for(spec, column_cap)
    polys: list[Polynomial] = []
    if multidegree is not None:
        mu = tuple(int(m) for m in multidegree)
        for row in eng.inv_rows(mu):
            polys.append(eng.poly_from_row(mu, row))
        return GradedInvariantBasis(spec, None, mu, polys)
    if degree < 0:
        raise ValueError("degree must be >= 0")
    for mu in compositions(degree, spec.k):
        for row in eng.inv_rows(mu):
            polys.append(eng.poly_from_row(mu, row))
    polys.sort(key=lambda f: f.lead_monomial().sort_key(), reverse=True)
    return GradedInvariantBasis(spec, degree, None, polys)


def _bases_by_degree(bases) -> dict[int, list[Polynomial]]:
    out: dict[int, list[Polynomial]] = {}
    if isinstance(bases, dict):
        items = bases.items()
    else:
        items = [(b.degree, b) for b in bases]
    for d, b in items:
        polys = b.basis if isinstance(b, GradedInvariantBasis) else list(b)
        out[int(d)] = polys
    return out


def decomposable_dimension(
    spec: ModuleSpec, d: int, bases, with_spanning: bool = False
):
    """Rank of the span of products f*g over basis_e x basis_{d-e}, e <= d/2.

    ``bases`` maps each degree 1..d-1 to its invariant basis (a
    GradedInvariantBasis or a plain list of polynomials).  This is the
    direct product-span computation, kept independent of the engine's
    generator-product shortcut so the two can be cross-checked.
    """
    if d <= 1:
        return (0, []) if with_spanning else 0
    table = _bases_by_degree(bases)
    missing = [e for e in range(1, d) if e not in table]
    if missing:
        raise PreconditionError(f"missing invariant bases for degrees {missing}")
    mons = enumerate_monomials(spec, degree=d)
    index = {m: i for i, m in enumerate(mons)}
    ech = Echelon(spec.p, len(mons))
    spanning: list[Polynomial] = []
    for e in range(1, d // 2 + 1):
        for i, f in enumerate(table[e]):
            for j, g in enumerate(table[d - e]):
                if 2 * e == d and j < i:
                    continue
                prod = f * g
                vec = np.zeros(len(mons), dtype=np.int64)
                for mon, c in prod.terms():
                    vec[index[mon]] = c
                if ech.add(vec):
                    spanning.append(prod)
    rank = ech.rank
    return (rank, spanning) if with_spanning else rank


def is_indecomposable(
    spec: ModuleSpec, f: Polynomial, column_cap: int = DEFAULT_COLUMN_CAP
) -> bool:
    """True iff the invariant f is outside the span of products of
    lower-degree invariants in its degree."""
    if f.spec != spec:
        raise PreconditionError("polynomial does not live in the given spec")
    if not f:
        raise PreconditionError("the zero polynomial is neither")
    if not f.is_homogeneous():
        raise PreconditionError("need a homogeneous polynomial")
    if f.degree() < 1:
        raise PreconditionError("need positive degree")
    if sigma(f) != f:
        raise PreconditionError("polynomial is not invariant")
    eng = engine_for(spec, column_cap)
    for mu, comp in f.components_by_multidegree().items():
        vec = eng.vector_of(comp, mu)
        if not eng.in_decomposable_span(mu, vec):
            return True
    return False


# -- Noether number ---------------------------------------------------------------


@dataclass
class NoetherReport:
    """Per-degree dimension table and the computed Noether number."""

    spec_text: str
    p: int
    blocks: list[int]
    reduced_blocks: list[int]
    search_bound: int
    coinvariant_bound: int | None
    beta: int
    table: list[dict]
    note: str = ""
    expected: int | None = None
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec_text,
            "p": self.p,
            "blocks": list(self.blocks),
            "reduced_blocks": list(self.reduced_blocks),
            "beta": self.beta,
            "bound": self.search_bound,
            "coinvariant_bound": self.coinvariant_bound,
            "table": [dict(row) for row in self.table],
            "note": self.note,
            "expected": self.expected,
            "timings": dict(self.timings),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NoetherReport":
        return cls(
            spec_text=d["spec"],
            p=d["p"],
            blocks=list(d["blocks"]),
            reduced_blocks=list(d["reduced_blocks"]),
            search_bound=d["bound"],
            coinvariant_bound=d["coinvariant_bound"],
            beta=d["beta"],
            table=[dict(row) for row in d["table"]],
            note=d.get("note", ""),
            expected=d.get("expected"),
            timings=dict(d.get("timings", {})),
        )

    def indecomposable_dims(self) -> dict[int, int]:
        return {row["degree"]: row["dim_indec"] for row in self.table}


def search_bound(spec: ModuleSpec) -> tuple[int, int | None]:
    """(search bound, closed-form coinvariant bound or None).

    The closed-form bound k(p-1)+p-2 covers transfers; generators may
    also sit in the orbit-product degree p, which exceeds it only for a
    single reduced V_2 block at p = 2, so the scan goes to the max of
    the two.  An all-trivial module is generated in degree 1.
    """
    reduced = spec.reduced()
    if reduced.k == 0:
        return 1, None
    coinv_bound = reduced.k * (spec.p - 1) + spec.p - 2
    return max(coinv_bound, spec.p), coinv_bound


def noether_number(
    spec: ModuleSpec, column_cap: int = DEFAULT_COLUMN_CAP
) -> NoetherReport:
    """Scan every degree up to the search bound and report the largest
    degree carrying indecomposable invariants.

    Trivial summands are stripped first (they do not change the Noether
    number); the table refers to the reduced module.
    """
    if spec.k == 0:
        raise PreconditionError("empty module spec")
    t0 = time.perf_counter()
    reduced = spec.reduced()
    bound, coinv_bound = search_bound(spec)
    note = ""
    if reduced.k == 0:
        work = spec
        note = (
            "all summands are trivial: the invariant ring is the full "
            "polynomial ring, generated in degree 1; the closed-form rules "
            "for reduced modules do not apply"
        )
    else:
        work = reduced
        if coinv_bound is not None and bound > coinv_bound:
            note = (
                f"search bound raised to the orbit-product degree p={spec.p} "
                f"(above the coinvariant bound {coinv_bound})"
            )
    eng = engine_for(work, column_cap)
    table = []
    per_degree = []
    for d in range(1, bound + 1):
        td = time.perf_counter()
        tot, inv, dec, indec = eng.degree_dims(d)
        per_degree.append(round(time.perf_counter() - td, 6))
        table.append(
            {
                "degree": d,
                "dim_poly": tot,
                "dim_inv": inv,
                "dim_dec": dec,
                "dim_indec": indec,
            }
        )
    beta = max((row["degree"] for row in table if row["dim_indec"] > 0), default=0)
    return NoetherReport(
        spec_text=spec.to_text(),
        p=spec.p,
        blocks=list(spec.blocks),
        reduced_blocks=list(reduced.blocks),
        search_bound=bound,
        coinvariant_bound=coinv_bound,
        beta=beta,
        table=table,
        note=note,
        timings={
            "total_seconds": round(time.perf_counter() - t0, 6),
            "per_degree_seconds": per_degree,
        },
    )


# -- unblocked brute-force oracle ------------------------------------------------


def invariant_dimension_bruteforce(spec: ModuleSpec, d: int) -> int:
    """Kernel dimension of (sigma - 1) on the full unblocked degree-d
    monomial basis, with sigma applied polynomial-by-polynomial.

    Independent of the blocked engine; used as the cross-check oracle.
    """
    mons = enumerate_monomials(spec, degree=d)
    index = {m: i for i, m in enumerate(mons)}
    n = len(mons)
    M = np.zeros((n, n), dtype=np.int64)
    for col, m in enumerate(mons):
        f = Polynomial.from_monomial(m)
        diff = sigma_power(f, 1) - f
        for mon, c in diff.terms():
            M[index[mon], col] = c
    return n - rank_mod(M, spec.p)
