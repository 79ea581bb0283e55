"""The group action on F_p[W]: sigma powers, the difference operator,
transfer, orbit products, the non-terminal subalgebra, and the degree
(p-1) ideal elements built from it.

The generator acts on variables by adding the next-deeper chain
variable: sigma(v) = v + (depth+1 variable), with the deepest variable
fixed.  Everything else is the unique degree-preserving algebra
automorphism extension.
"""

from __future__ import annotations

from math import comb

from .errors import PreconditionError
from .modspec import ModuleSpec, VariableId
from .monomial import Monomial, chain_exponents
from .polynomial import Polynomial


def variable_image(spec: ModuleSpec, var: VariableId, ell: int) -> Polynomial:
    """sigma^ell applied to one variable via binomial expansion.

    sigma^ell shifts depth t to depths t+j with coefficients C(ell, j);
    all arguments are < p so plain binomials mod p are exact.
    """
    ell %= spec.p
    d = spec.blocks[var.summand - 1]
    terms = {}
    for j in range(0, d - var.depth):
        c = comb(ell, j) % spec.p
        if c:
            mon = Monomial.from_pairs(spec, [(VariableId(var.summand, var.depth + j), 1)])
            terms[mon] = c
    return Polynomial(spec, terms, _normalized=True)


def _substitute(f: Polynomial, images: dict[VariableId, Polynomial]) -> Polynomial:
    spec = f.spec
    power_cache: dict[tuple[VariableId, int], Polynomial] = {}

    def image_power(var, e):
        key = (var, e)
        if key not in power_cache:
            power_cache[key] = images[var] ** e
        return power_cache[key]

    out = Polynomial.zero(spec)
    for mon, c in f.terms():
        term = Polynomial.constant(spec, c)
        for var, e in zip(spec.variables, mon.exps):
            if e:
                term = term * image_power(var, e)
        out = out + term
    return out


def sigma_power(f: Polynomial, ell: int) -> Polynomial:
    """The algebra automorphism sigma^ell applied to f."""
    spec = f.spec
    ell %= spec.p
    if ell == 0 or not f:
        return f
    images = {v: variable_image(spec, v, ell) for v in spec.variables}
    return _substitute(f, images)


def sigma(f: Polynomial) -> Polynomial:
    return sigma_power(f, 1)


def delta(f: Polynomial) -> Polynomial:
    """sigma(f) - f.  Not a derivation: delta(fg) = sigma(f)delta(g) + delta(f)g."""
    return sigma(f) - f


def transfer(f: Polynomial) -> Polynomial:
    """Sum of sigma^ell(f) over ell = 0 .. p-1; always invariant."""
    out = f
    for ell in range(1, f.spec.p):
        out = out + sigma_power(f, ell)
    return out


def orbit_product(spec: ModuleSpec, summand: int) -> Polynomial:
    """Product of the full sigma-orbit of the summand's generator z_i.

    Invariant of degree p with lead term z_i^p.
    """
    z = spec.var_poly(summand, 0)
    out = z
    for ell in range(1, spec.p):
        out = out * sigma_power(z, ell)
    return out


# -- the non-terminal subalgebra and the F construction -----------------------


def is_in_A(m: Monomial) -> bool:
    """True iff every variable of m has depth >= 1 (the empty product counts)."""
    return all(v.depth >= 1 for v in m.support())


def a_monomials(spec: ModuleSpec, degree: int) -> list[Monomial]:
    """Monomials of the given degree in the depth >= 1 variables, descending."""
    avars = [v for v in spec.variables if v.depth >= 1]
    out = []
    for exps in chain_exponents(len(avars), degree):
        out.append(Monomial.from_pairs(spec, zip(avars, exps)))
    out.sort(key=Monomial.sort_key, reverse=True)
    return out


def _factor_variables(m: Monomial) -> list[VariableId]:
    """The factors of m as a descending list of variables with multiplicity."""
    factors: list[VariableId] = []
    for v in sorted(m.support(), reverse=True):
        factors.extend([v] * m.exponent(v))
    return factors


def build_F(spec: ModuleSpec, m: Monomial) -> Polynomial:
    """For a degree-(p-1) monomial m in the depth >= 1 subalgebra, the sum
    over ell in F_p of the product of (w_j - sigma^ell(w_j)), where w_j is
    the unique variable one depth above the j-th factor of m.

    Lead term is -m and the polynomial lies in the Hilbert ideal.
    """
    p = spec.p
    if m.degree != p - 1:
        raise PreconditionError(
            f"build_F needs a monomial of degree p-1 = {p - 1}, got degree {m.degree}"
        )
    if not is_in_A(m):
        raise PreconditionError(
            f"build_F needs a monomial in the depth >= 1 variables, got {m}"
        )
    ws = [spec.var_poly(u.summand, u.depth - 1) for u in _factor_variables(m)]
    total = Polynomial.zero(spec)
    for ell in range(p):
        prod = Polynomial.one(spec)
        for w in ws:
            prod = prod * (w - sigma_power(w, ell))
        total = total + prod
    return total


def build_F_transfer_expansion(spec: ModuleSpec, m: Monomial) -> Polynomial:
    """Independent route to build_F: the subset expansion

        sum over S of (-1)^|S| X_{S'} Tr(X_S)

    with X_S the product of the lifted factors indexed by S.  The empty
    subset contributes X * Tr(1) = 0, so every surviving term is a
    monomial times a positive-degree invariant.
    """
    p = spec.p
    if m.degree != p - 1 or not is_in_A(m):
        raise PreconditionError("expansion needs a degree-(p-1) monomial in depth >= 1 variables")
    ws = [spec.var_poly(u.summand, u.depth - 1) for u in _factor_variables(m)]
    r = len(ws)
    total = Polynomial.zero(spec)
    for mask in range(1 << r):
        xs = Polynomial.one(spec)
        xsc = Polynomial.one(spec)
        bits = 0
        for j in range(r):
            if mask >> j & 1:
                xs = xs * ws[j]
                bits += 1
            else:
                xsc = xsc * ws[j]
        sign = -1 if bits % 2 else 1
        total = total + (xsc * transfer(xs)).scale(sign)
    return total


# -- lower-bound witnesses ------------------------------------------------------


def lower_bound_witness(spec: ModuleSpec):
    """The explicit indecomposable transfer element for modules of shape
    (k-1)V_2 + V_n with n in {3, 4}:

        Tr((y_1 ... y_{k-1} z)^(p-1) * y^e),  e = p-2 if n = 4 else 1,

    where the y_i are the V_2 generators, z the big-summand generator and
    y its first difference.  Returns (polynomial, info dict), or None if
    the reduced module does not have that shape.
    """
    p = spec.p
    reduced = [(i, d) for i, d in enumerate(spec.blocks, start=1) if d >= 2]
    big = [(i, d) for i, d in reduced if d in (3, 4)]
    small = [(i, d) for i, d in reduced if d == 2]
    if len(big) != 1 or len(small) != len(reduced) - 1:
        return None
    big_i, big_d = big[0]
    exp_y = p - 2 if big_d == 4 else 1
    pairs = [(spec.variable(i, 0), p - 1) for i, _ in small]
    pairs.append((spec.variable(big_i, 0), p - 1))
    pairs.append((spec.variable(big_i, 1), exp_y))
    mon = Monomial.from_pairs(spec, pairs)
    witness = transfer(Polynomial.from_monomial(mon))
    info = {
        "family": f"V{big_d}",
        "k": len(reduced),
        "degree": mon.degree,
        "source_monomial": repr(mon),
    }
    return witness, info
