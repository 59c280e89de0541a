import random
from collections import Counter
from fractions import Fraction

import pytest

from quadind.identities import (
    IDENTITY_NAMES,
    build_identity,
    catalog,
    coefficient_ring,
    flip_sign,
    get_identity,
    instance_from_catalog,
    load_catalog,
    pair_determinant,
    permanent_trace_check,
    restriction_check,
    verify_identity,
)
from quadind.algebra import parse_polynomial
from quadind.linalg import permanent3


@pytest.fixture(scope="module")
def n3():
    return build_identity(3)


@pytest.mark.parametrize("name", IDENTITY_NAMES)
def test_every_identity_expands_to_zero(name):
    res = verify_identity(get_identity(name))
    assert res.holds and res.residual is None


def test_ring_size():
    # n^2 coefficients plus n coordinates
    assert [len(coefficient_ring(n)) for n in (1, 2, 3)] == [2, 6, 12]


def test_n3_shape(n3):
    assert len(n3.varset) == 12
    assert len(n3.summands) == 20
    assert n3.precancellation_term_count() == 1440
    assert n3.grouping() == Counter({0: 1, 1: 9, 2: 9, 3: 1})
    assert n3.lhs.is_homogeneous() and n3.lhs.total_degree() == 15


def test_smallest_identity():
    inst = build_identity(1)
    assert str(inst.lhs) == "0"
    assert len(inst.summands) == 2


def test_two_coordinate_identity_has_six_summands():
    assert len(build_identity(2).summands) == 6


@pytest.mark.parametrize("idx", [0, 7, 19])
def test_sign_mutation_breaks_identity(n3, idx):
    res = verify_identity(flip_sign(n3, idx))
    assert not res.holds
    assert res.residual is not None and not res.residual.is_zero()


@pytest.mark.parametrize("name", IDENTITY_NAMES)
def test_random_points(name):
    inst = get_identity(name)
    rng = random.Random(20261016)
    for _ in range(100):
        pt = {v: Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for v in inst.varset.names}
        assert inst.evaluate_residual(pt) == 0


def test_random_points_detect_mutation(n3):
    bad = flip_sign(n3, 3)
    rng = random.Random(5)
    hits = 0
    for _ in range(20):
        pt = {v: rng.randint(-9, 9) for v in bad.varset.names}
        hits += bad.evaluate_residual(pt) != 0
    assert hits > 0


def test_restriction():
    res = restriction_check()
    assert res.holds
    three = res.details["n3_z3"]
    assert three["c3"]["summandwise_signs"] == [-1]
    assert three["b3"]["summandwise_signs"] == [1]
    assert three["a3"]["summandwise_signs"] == [-1]


def test_restriction_vanishes(n3):
    assert n3.lhs.subs({"z3": 0}).is_zero()


def test_permanent_trace(n3):
    res = permanent_trace_check()
    assert res.holds
    spec = res.details["specializations"]
    assert spec["identity"] == {"traced": 0, "expected": 0, "pair_det": 0}
    assert spec["worked_example"]["pair_det"] == 0


def test_pair_determinant_methods_agree(n3):
    vs = n3.varset
    assert pair_determinant(vs, "cofactor") == pair_determinant(vs, "bareiss")


def test_permanent_factor_text(n3):
    vs = n3.varset
    rows = [[vs.var(f"{x}{j}") for j in (1, 2, 3)] for x in "abc"]
    expected = parse_polynomial("a3*b2*c1 + a2*b3*c1 + a3*b1*c2 + a1*b3*c2 + a2*b1*c3 + a1*b2*c3", vs)
    assert permanent3(rows) == expected


def test_shipped_catalog_matches_build():
    assert load_catalog() == catalog()


@pytest.mark.parametrize("name", IDENTITY_NAMES)
def test_catalog_round_trip(name):
    entry = next(e for e in load_catalog()["identities"] if e["name"] == name)
    inst = instance_from_catalog(entry)
    assert str(inst.lhs) == entry["lhs"]
    assert str(inst.rhs) == entry["rhs"]
    assert verify_identity(inst).holds


def test_unknown_identity():
    with pytest.raises(ValueError):
        get_identity("nope")
    with pytest.raises(ValueError):
        build_identity(4)
