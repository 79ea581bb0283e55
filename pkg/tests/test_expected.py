import pytest

from zpinv import expected_beta, parse_module_spec
from zpinv.expected import (
    BUILTIN_CATALOG,
    RULE_KV2_LARGE,
    RULE_KV2_SMALL,
    RULE_PROP11A,
    RULE_PROP11B,
    RULE_TRIVIAL,
)


@pytest.mark.parametrize(
    "p,text,value,rule",
    [
        (5, "2V2+V4", 15, RULE_PROP11A),
        (5, "V4", 7, RULE_PROP11A),
        (5, "V5", 7, RULE_PROP11A),
        (5, "V2+V4", 11, RULE_PROP11A),
        (3, "V3", 3, RULE_PROP11B),
        (3, "V2+V3", 5, RULE_PROP11B),
        (3, "2V3", 5, RULE_PROP11B),
        (3, "V2", 3, RULE_KV2_SMALL),
        (3, "2V2", 3, RULE_KV2_SMALL),
        (2, "V2", 2, RULE_KV2_SMALL),
        (2, "2V2", 2, RULE_KV2_SMALL),
        (2, "3V2", 3, RULE_KV2_LARGE),
        (2, "4V2", 4, RULE_KV2_LARGE),
        (7, "4V2", 24, RULE_KV2_LARGE),
        (3, "3V2", 6, RULE_KV2_LARGE),
        (3, "3V1", 1, RULE_TRIVIAL),
    ],
)
def test_rules(p, text, value, rule):
    exp = expected_beta(parse_module_spec(text, p))
    assert exp.value == value
    assert exp.rule == rule


def test_rule_ignores_trivial_summands():
    a = expected_beta(parse_module_spec("V1+V4", 5))
    b = expected_beta(parse_module_spec("V4", 5))
    assert (a.value, a.rule, a.k) == (b.value, b.rule, b.k)


def test_rule_depends_only_on_multiset():
    a = expected_beta(parse_module_spec("V2+V4", 5))
    b = expected_beta(parse_module_spec("V4+V2", 5))
    assert (a.value, a.rule) == (b.value, b.rule)


def test_prop11b_consistent_with_v3_equals_p():
    # both citations agree: (p-1)+1 = p for a single V3
    for p in (3, 5, 7):
        exp = expected_beta(parse_module_spec("V3", p))
        assert exp.value == p and exp.rule == RULE_PROP11B


def test_catalog_is_well_formed():
    assert len(BUILTIN_CATALOG) == 17
    for entry in BUILTIN_CATALOG:
        spec = parse_module_spec(entry.module, entry.p)  # parses
        assert entry.mode in ("full", "witness")
        assert expected_beta(spec).value >= 1
    witness_entries = [e for e in BUILTIN_CATALOG if e.mode == "witness"]
    assert [(e.p, e.module) for e in witness_entries] == [(5, "2V2+V4")]
