"""The Hilbert ideal, the coinvariant algebra and its top degree.

Two independent pipelines bound the top degree of F_p[W] modulo the
ideal generated by positive-degree invariants:

* the dimension pipeline computes the ideal degreewise by exact rank
  (an ideal recursion: degree-d part = variables times the degree-(d-1)
  part plus the degree-d invariants) and reads off the Hilbert function
  of the quotient;
* the lead-term pipeline certifies explicit lead terms (the degree
  (p-1) monomials of the non-terminal subalgebra via the F construction,
  and the generator p-th powers via orbit products) and rederives the
  bound combinatorially from the staircase of surviving monomials.

Their conclusions must agree; a discrepancy raises
:class:`~zpinv.errors.TheoremViolationError`.
"""

from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass, field

import numpy as np

from .action import a_monomials, build_F, is_in_A, orbit_product
from .engine import (
    DEFAULT_COLUMN_CAP,
    InvariantEngine,
    _bases_by_degree,
    engine_for,
)
from .errors import PreconditionError, SizeBudgetError, TheoremViolationError
from .linalg import Echelon
from .modspec import ModuleSpec
from .monomial import (
    Monomial,
    compositions,
    enumerate_monomials,
    monomial_count,
)
from .polynomial import Polynomial


def coinvariant_bound(spec: ModuleSpec) -> int:
    """k(p-1) + p - 2 computed from the reduced module (k = 0 allowed)."""
    return spec.reduced().k * (spec.p - 1) + spec.p - 2


# -- Hilbert ideal, blockwise -----------------------------------------------------


class HilbertIdealCalculator:
    """Degreewise echelon bases of the Hilbert ideal, per multidegree block."""

    def __init__(self, engine: InvariantEngine):
        self.engine = engine
        self._hi: dict[tuple, Echelon] = {}
        self._lock = threading.RLock()

    def hi_echelon(self, mu) -> Echelon:
        mu = tuple(int(m) for m in mu)
        ech = self._hi.get(mu)
        if ech is not None:
            return ech
        with self._lock:
            ech = self._hi.get(mu)
            if ech is not None:
                return ech
            eng = self.engine
            spec = eng.spec
            blk = eng.block(mu)
            ech = Echelon(spec.p, blk.size)
            if sum(mu) == 0:
                # generated by positive-degree invariants only
                self._hi[mu] = ech
                return ech
            # ideal recursion: v * (degree below) for every variable v
            for i in range(spec.k):
                if mu[i] == 0:
                    continue
                sub = mu[:i] + (mu[i] - 1,) + mu[i + 1 :]
                prev = self.hi_echelon(sub)
                if prev.rank == 0:
                    continue
                blk_sub = eng.block(sub)
                for var in spec.variables[spec.summand_slice(i + 1)]:
                    code = eng._powers[spec.var_index(var)]
                    cols = blk.lookup(blk_sub.codes + code)
                    rows = np.zeros((prev.rank, blk.size), dtype=np.int64)
                    rows[:, cols] = prev.rows
                    ech.add(rows, rank_cap=blk.size)
                    if ech.rank == blk.size:
                        break
                if ech.rank == blk.size:
                    break
            if ech.rank < blk.size:
                ech.add(eng.inv_rows(mu), rank_cap=blk.size)
            self._hi[mu] = ech
            return ech

    def hi_dim_degree(self, d: int) -> int:
        return sum(
            self.hi_echelon(mu).rank for mu in compositions(d, self.engine.spec.k)
        )

    def contains(self, f: Polynomial) -> bool:
        """Membership of a polynomial in the degreewise ideal span."""
        for mu, comp in f.components_by_multidegree().items():
            vec = self.engine.vector_of(comp, mu)
            if not self.hi_echelon(mu).contains(vec):
                return False
        return True


_calcs: dict[int, HilbertIdealCalculator] = {}
_calcs_lock = threading.Lock()


def _calculator_for(engine: InvariantEngine) -> HilbertIdealCalculator:
    key = id(engine)
    with _calcs_lock:
        calc = _calcs.get(key)
        if calc is None:
            calc = HilbertIdealCalculator(engine)
            _calcs[key] = calc
        return calc


def hilbert_ideal_dimension(spec: ModuleSpec, d: int, bases) -> int:
    """Rank of span{ m * f : f in basis_e, m a monomial of degree d-e }.

    ``bases`` supplies invariant bases for degrees 1..d.  This is the
    direct product-span computation used to cross-check the blockwise
    ideal recursion.
    """
    if d < 0:
        raise PreconditionError("degree must be >= 0")
    if d == 0:
        return 0
    table = _bases_by_degree(bases)
    missing = [e for e in range(1, d + 1) if e not in table]
    if missing:
        raise PreconditionError(f"missing invariant bases for degrees {missing}")
    mons = enumerate_monomials(spec, degree=d)
    index = {m: i for i, m in enumerate(mons)}
    ech = Echelon(spec.p, len(mons))
    for e in range(1, d + 1):
        for f in table[e]:
            for m in enumerate_monomials(spec, degree=d - e):
                prod = f * Polynomial.from_monomial(m)
                vec = np.zeros(len(mons), dtype=np.int64)
                for mon, c in prod.terms():
                    vec[index[mon]] = c
                ech.add(vec, rank_cap=len(mons))
                if ech.rank == len(mons):
                    return ech.rank
    return ech.rank


# -- coinvariant profile -------------------------------------------------------------


@dataclass
class CoinvariantReport:
    """Hilbert function of F_p[W] modulo the Hilbert ideal."""

    spec_text: str
    p: int
    blocks: list[int]
    hilbert_function: list[int]
    top_degree: int
    bound: int
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec_text,
            "p": self.p,
            "blocks": list(self.blocks),
            "hilbert_function": list(self.hilbert_function),
            "top_degree": self.top_degree,
            "bound": self.bound,
            "timings": dict(self.timings),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CoinvariantReport":
        return cls(
            spec_text=d["spec"],
            p=d["p"],
            blocks=list(d["blocks"]),
            hilbert_function=list(d["hilbert_function"]),
            top_degree=d["top_degree"],
            bound=d["bound"],
            timings=dict(d.get("timings", {})),
        )


def coinvariant_profile(
    spec: ModuleSpec, column_cap: int = DEFAULT_COLUMN_CAP
) -> CoinvariantReport:
    """Hilbert function of the coinvariant algebra, stopping at the first
    zero; checks that the zero persists for two more degrees and that the
    top degree stays within the closed-form bound."""
    if spec.k == 0:
        raise PreconditionError("empty module spec")
    t0 = time.perf_counter()
    bound = coinvariant_bound(spec)
    eng = engine_for(spec, column_cap)
    calc = _calculator_for(eng)
    hf = [1]
    d = 1
    while True:
        q = monomial_count(spec, degree=d) - calc.hi_dim_degree(d)
        if q < 0:
            raise TheoremViolationError(
                f"ideal rank exceeds the space dimension in degree {d} of {spec}"
            )
        if q == 0:
            break
        if d > bound:
            raise TheoremViolationError(
                f"coinvariant algebra of {spec} is nonzero in degree {d}, "
                f"above the bound {bound}"
            )
        hf.append(q)
        d += 1
    for extra in (d + 1, d + 2):
        q = monomial_count(spec, degree=extra) - calc.hi_dim_degree(extra)
        if q != 0:
            raise TheoremViolationError(
                f"coinvariant dimension of {spec} became nonzero again in "
                f"degree {extra}"
            )
    top = len(hf) - 1
    return CoinvariantReport(
        spec_text=spec.to_text(),
        p=spec.p,
        blocks=list(spec.blocks),
        hilbert_function=hf,
        top_degree=top,
        bound=bound,
        timings={"total_seconds": round(time.perf_counter() - t0, 6)},
    )


# -- lead-term certificates ------------------------------------------------------------


@dataclass
class CertificateReport:
    """Outcome of the lead-term certification run."""

    spec_text: str
    p: int
    reduced_blocks: list[int]
    a_monomials_total: int
    a_monomials_checked: int
    sampled: bool
    lead_terms_ok: bool
    ideal_membership_ok: bool
    orbit_products_ok: bool
    staircase_bound: int
    outside_staircase_checked: int
    outside_staircase_certified: bool
    dimension_top_degree: int
    agree: bool
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.lead_terms_ok
            and self.ideal_membership_ok
            and self.orbit_products_ok
            and self.outside_staircase_certified
            and self.agree
        )

    def to_dict(self) -> dict:
        return {
            "spec": self.spec_text,
            "p": self.p,
            "reduced_blocks": list(self.reduced_blocks),
            "a_monomials_total": self.a_monomials_total,
            "a_monomials_checked": self.a_monomials_checked,
            "sampled": self.sampled,
            "lead_terms_ok": self.lead_terms_ok,
            "ideal_membership_ok": self.ideal_membership_ok,
            "orbit_products_ok": self.orbit_products_ok,
            "staircase_bound": self.staircase_bound,
            "outside_staircase_checked": self.outside_staircase_checked,
            "outside_staircase_certified": self.outside_staircase_certified,
            "dimension_top_degree": self.dimension_top_degree,
            "agree": self.agree,
            "ok": self.ok,
            "timings": dict(self.timings),
        }


def _terminal_and_a_parts(m: Monomial) -> tuple[dict[int, int], int]:
    """(exponents of the depth-0 generators by summand, degree of the rest)."""
    terminal: dict[int, int] = {}
    a_degree = 0
    for v, e in zip(m.spec.variables, m.exps):
        if e == 0:
            continue
        if v.depth == 0:
            terminal[v.summand] = e
        else:
            a_degree += e
    return terminal, a_degree


def _a_divisor_of_degree(m: Monomial, degree: int) -> Monomial:
    """A depth >= 1 sub-monomial of m of the requested degree (greedy)."""
    pairs = []
    left = degree
    for v, e in zip(m.spec.variables, m.exps):
        if left == 0:
            break
        if v.depth >= 1 and e:
            take = min(e, left)
            pairs.append((v, take))
            left -= take
    if left:
        raise ValueError("monomial has no depth >= 1 part of that degree")
    return Monomial.from_pairs(m.spec, pairs)


def leadterm_certificate(
    spec: ModuleSpec,
    column_cap: int = DEFAULT_COLUMN_CAP,
    sample_cap: int = 1000,
    seed: int = 0,
) -> CertificateReport:
    """Certify the lead-term ideal picture behind the coinvariant bound.

    (a) every degree-(p-1) monomial of the non-terminal subalgebra (up to
    the sampling cap) is the lead monomial of its F polynomial, which lies
    in the degreewise Hilbert-ideal span; (b) each orbit product has lead
    monomial z_i^p and lies in the span; (c) every monomial outside the
    staircase {A-part of degree <= p-2, generator exponents <= p-1} is
    divisible by a certified lead term, which rederives the top-degree
    bound combinatorially.  Certificate failures are build-stopping.
    """
    t0 = time.perf_counter()
    reduced = spec.reduced()
    p = spec.p
    profile = coinvariant_profile(spec, column_cap)
    bound = coinvariant_bound(spec)
    if reduced.k == 0:
        return CertificateReport(
            spec_text=spec.to_text(),
            p=p,
            reduced_blocks=[],
            a_monomials_total=0,
            a_monomials_checked=0,
            sampled=False,
            lead_terms_ok=True,
            ideal_membership_ok=True,
            orbit_products_ok=True,
            staircase_bound=0,
            outside_staircase_checked=0,
            outside_staircase_certified=True,
            dimension_top_degree=profile.top_degree,
            agree=profile.top_degree == 0,
            timings={"total_seconds": round(time.perf_counter() - t0, 6)},
        )

    eng = engine_for(reduced, column_cap)
    calc = _calculator_for(eng)

    # (a) degree-(p-1) monomials of the non-terminal subalgebra
    mons = a_monomials(reduced, p - 1)
    total = len(mons)
    sampled = total > sample_cap
    if sampled:
        rng = random.Random(seed)
        keep = sorted(rng.sample(range(total), sample_cap))
        mons = [mons[i] for i in keep]
    certified: set[Monomial] = set()
    lead_ok = ideal_ok = True
    for m in mons:
        F = build_F(reduced, m)
        mon, coeff = F.lead_term()
        if mon != m or int(coeff) != (p - 1) % p:
            lead_ok = False
            break
        if not calc.contains(F):
            ideal_ok = False
            break
        certified.add(m)
    if not (lead_ok and ideal_ok):
        raise TheoremViolationError(
            f"lead-term certificate failed for a degree-{p - 1} monomial of {reduced}"
        )

    # (b) orbit products
    orbit_ok = True
    for i in range(1, reduced.k + 1):
        op = orbit_product(reduced, i)
        mon, coeff = op.lead_term()
        expected = Monomial.from_pairs(reduced, [(reduced.variable(i, 0), p)])
        if mon != expected or int(coeff) != 1 or not calc.contains(op):
            orbit_ok = False
            break
    if not orbit_ok:
        raise TheoremViolationError(
            f"orbit product certificate failed for {reduced}"
        )

    # (c) staircase scan
    k = reduced.k
    staircase_bound = k * (p - 1) + (p - 2)
    outside_checked = 0
    outside_ok = True
    for d in range(0, staircase_bound + 2):
        count = monomial_count(reduced, degree=d)
        if count > 500_000:
            raise SizeBudgetError(
                f"staircase scan at degree {d} of {reduced} needs {count} monomials"
            )
        for m in enumerate_monomials(reduced, degree=d):
            terminal, a_degree = _terminal_and_a_parts(m)
            in_staircase = a_degree <= p - 2 and all(
                e <= p - 1 for e in terminal.values()
            )
            if in_staircase:
                continue
            outside_checked += 1
            if any(e >= p for e in terminal.values()):
                continue  # divisible by a certified z_i^p
            divisor = _a_divisor_of_degree(m, p - 1)
            if not is_in_A(divisor):
                outside_ok = False
                break
            if sampled and divisor not in certified:
                # sampling left this generator unverified; certify it now
                F = build_F(reduced, divisor)
                mon, coeff = F.lead_term()
                if mon != divisor or not calc.contains(F):
                    outside_ok = False
                    break
                certified.add(divisor)
        if not outside_ok:
            break
    if not outside_ok:
        raise TheoremViolationError(
            f"a monomial outside the staircase of {reduced} has no certified "
            "lead-term divisor"
        )

    agree = (
        profile.top_degree <= staircase_bound
        and staircase_bound == bound
        and profile.bound == bound
    )
    if not agree:
        raise TheoremViolationError(
            f"lead-term and dimension pipelines disagree for {spec}: "
            f"top degree {profile.top_degree}, staircase bound {staircase_bound}, "
            f"closed-form bound {bound}"
        )
    return CertificateReport(
        spec_text=spec.to_text(),
        p=p,
        reduced_blocks=list(reduced.blocks),
        a_monomials_total=total,
        a_monomials_checked=len(mons),
        sampled=sampled,
        lead_terms_ok=lead_ok,
        ideal_membership_ok=ideal_ok,
        orbit_products_ok=orbit_ok,
        staircase_bound=staircase_bound,
        outside_staircase_checked=outside_checked,
        outside_staircase_certified=outside_ok,
        dimension_top_degree=profile.top_degree,
        agree=agree,
        timings={"total_seconds": round(time.perf_counter() - t0, 6)},
    )
