"""Seeded random polynomial generator and the operator property suite,
shared between the action tests and the acceptance run."""

import random

from zpinv import (
    Monomial,
    Polynomial,
    delta,
    orbit_product,
    parse_module_spec,
    sigma,
    sigma_power,
    transfer,
)

POOL = {
    2: ["V2", "2V2"],
    3: ["V2", "V3", "V2+V3"],
    5: ["V2", "V3", "V4"],
    7: ["V2", "V3"],
}


def random_poly(spec, rng, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(rng.randrange(0, max_terms + 1)):
        exps = [rng.randrange(0, max_exp + 1) for _ in range(spec.dim)]
        terms[Monomial(spec, exps)] = rng.randrange(1, spec.p)
    return Polynomial(spec, terms)


def random_invariant(spec, rng):
    """An invariant built from transfers, fixed variables and orbit products."""
    pick = rng.randrange(3)
    if pick == 0:
        return transfer(random_poly(spec, rng))
    if pick == 1:
        i = rng.randrange(1, spec.k + 1)
        return spec.var_poly(i, spec.blocks[i - 1] - 1) ** rng.randrange(1, 3)
    return orbit_product(spec, rng.randrange(1, spec.k + 1))


def run_operator_suite(p, cases, seed=0):
    """Run `cases` randomized checks of each operator property at one prime.

    Returns a dict property -> number of failures (all should be 0).
    """
    rng = random.Random((seed, p).__hash__() & 0x7FFFFFFF)
    failures = {
        "sigma_order": 0,
        "twisted_leibniz": 0,
        "transfer_invariant": 0,
        "transfer_absorbs_sigma": 0,
        "projection_formula": 0,
        "power_sum": 0,
    }
    specs = [parse_module_spec(text, p) for text in POOL[p]]
    if sum(ell ** (p - 1) for ell in range(p)) % p != p - 1:
        failures["power_sum"] += 1
    for _ in range(cases):
        spec = rng.choice(specs)
        f = random_poly(spec, rng)
        g = random_poly(spec, rng)
        if sigma_power(f, p) != f:
            failures["sigma_order"] += 1
        if delta(f * g) != sigma(f) * delta(g) + delta(f) * g:
            failures["twisted_leibniz"] += 1
        tf = transfer(f)
        if sigma(tf) != tf:
            failures["transfer_invariant"] += 1
        if transfer(sigma(f)) != tf:
            failures["transfer_absorbs_sigma"] += 1
        inv = random_invariant(spec, rng)
        if transfer(inv * g) != inv * transfer(g):
            failures["projection_formula"] += 1
    return failures
