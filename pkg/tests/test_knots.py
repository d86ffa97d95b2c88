from __future__ import annotations

import json

import pytest

from skeinhall.coeffring import var
from skeinhall.errors import NonpositiveM, NotAMonomialRatio, NotCoprime
from skeinhall.knots import (
    NewtonPairs,
    compare_connection,
    monomial_ratio,
    parse_pairs,
    trefoil_reference,
    validate_pairs,
)
from skeinhall.partitions import partitions_of

s, v, q = var("s"), var("v"), var("q")


def test_validate_pairs():
    assert validate_pairs([(2, 3)]) == NewtonPairs(((2, 3),))
    assert validate_pairs([(1, 0)]).pairs == ((1, 0),)
    with pytest.raises(NotCoprime):
        validate_pairs([(2, 4)])
    with pytest.raises(NotCoprime):
        validate_pairs([(2, 0)])
    with pytest.raises(NonpositiveM):
        validate_pairs([(0, 1)])


def test_parse_pairs():
    assert parse_pairs("2,3;1,1").pairs == ((2, 3), (1, 1))
    assert parse_pairs("").pairs == ()
    with pytest.raises(ValueError):
        parse_pairs("2;3")


def test_monomial_ratio():
    assert monomial_ratio(-(v**2) * s**-3) == (-1, 2, -3)
    with pytest.raises(NotAMonomialRatio):
        monomial_ratio(1 + v)
    with pytest.raises(NotAMonomialRatio):
        monomial_ratio(q * v)
    with pytest.raises(NotAMonomialRatio):
        monomial_ratio(2 * v)


def test_compare_unknot():
    c = compare_connection([(1, 0)], (1,))
    assert c.equal and c.sign == 1 and c.monomial == (1, 1)


@pytest.mark.parametrize("pairs", [[(2, 1)], [(2, 3), (1, 1)]])
def test_compare_depends_only_on_size(pairs):
    for n in (1, 2, 3):
        seen = {(c.sign, c.monomial) for lam in partitions_of(n) for c in [compare_connection(pairs, lam)]}
        assert len(seen) == 1


def test_report_json():
    c = compare_connection([(2, 3)], (1,))
    data = json.loads(json.dumps(c.to_json()))
    assert data["pairs"] == [[2, 3]] and data["lambda"] == [1] and data["equal"] is True
    assert data["monomial"] == list(c.monomial)
    assert set(data) >= {"jE", "jH"}


def test_trefoil_reference_jones_check():
    # the Jones specialization of the normalized reference is t + t^3 - t^4
    ref = trefoil_reference() / ((1 / v - v) / (s - 1 / s))
    # v = t and s = t^(1/2); write t = w^2
    w = var("x")
    jones = ref.specialize({"v": w**2, "s": w})
    assert jones == w**2 + w**6 - w**8
