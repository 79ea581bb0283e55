"""Closed-form Noether numbers for the input families, and the builtin
verification catalog.

Rule selection depends only on the reduced block multiset:

* a summand of size >= 4      ->  k(p-1) + p - 2           (rule prop11a)
* otherwise a size-3 summand  ->  k(p-1) + 1               (rule prop11b)
* only size-2 summands        ->  p for k <= 2, else k(p-1)
* nothing left after reduction -> 1 (the polynomial ring convention)
"""

from __future__ import annotations

from dataclasses import dataclass

from .modspec import ModuleSpec

RULE_PROP11A = "prop11a"
RULE_PROP11B = "prop11b"
RULE_KV2_SMALL = "kV2_small"
RULE_KV2_LARGE = "kV2_large"
RULE_TRIVIAL = "trivial"


@dataclass(frozen=True)
class ExpectedBeta:
    spec_text: str
    p: int
    value: int
    rule: str
    k: int

    def to_dict(self) -> dict:
        return {
            "spec": self.spec_text,
            "p": self.p,
            "value": self.value,
            "rule": self.rule,
            "k": self.k,
        }


def expected_beta(spec: ModuleSpec) -> ExpectedBeta:
    p = spec.p
    blocks = spec.reduced_blocks
    k = len(blocks)
    if k == 0:
        value, rule = 1, RULE_TRIVIAL
    elif max(blocks) >= 4:
        value, rule = k * (p - 1) + p - 2, RULE_PROP11A
    elif max(blocks) == 3:
        value, rule = k * (p - 1) + 1, RULE_PROP11B
    elif k <= 2:
        value, rule = p, RULE_KV2_SMALL
    else:
        value, rule = k * (p - 1), RULE_KV2_LARGE
    return ExpectedBeta(spec.to_text(), p, value, rule, k)


# -- builtin catalog -----------------------------------------------------------

MODE_FULL = "full"
# witness mode: certify beta through the explicit top-degree indecomposable
# (the full degree scan at this size is out of desk budget)
MODE_WITNESS = "witness"


@dataclass(frozen=True)
class CatalogEntry:
    p: int
    module: str
    mode: str = MODE_FULL

    def to_dict(self) -> dict:
        return {"p": self.p, "module": self.module, "mode": self.mode}


BUILTIN_CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(2, "V2"),
    CatalogEntry(2, "2V2"),
    CatalogEntry(2, "3V2"),
    CatalogEntry(2, "4V2"),
    CatalogEntry(3, "V2"),
    CatalogEntry(3, "V3"),
    CatalogEntry(3, "2V2"),
    CatalogEntry(3, "3V2"),
    CatalogEntry(3, "V2+V3"),
    CatalogEntry(3, "2V3"),
    CatalogEntry(3, "V1+V3"),
    CatalogEntry(5, "V2"),
    CatalogEntry(5, "V3"),
    CatalogEntry(5, "V4"),
    CatalogEntry(5, "V5"),
    CatalogEntry(5, "V2+V4"),
    CatalogEntry(5, "2V2+V4", MODE_WITNESS),
)
