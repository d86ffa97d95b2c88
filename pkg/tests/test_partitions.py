from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinhall.partitions import (
    cell_stats,
    cells,
    conjugate,
    content_multiset,
    dominates,
    partition,
    partitions_of,
    ribbons_add,
    ribbons_remove,
    size,
)


def test_partition_validation():
    assert partition([2, 1, 0]) == (2, 1)
    with pytest.raises(ValueError):
        partition([1, 2])
    with pytest.raises(ValueError):
        partition([2, -1])


def test_cell_stats_examples():
    st1 = cell_stats((1,), (0, 0))
    assert (st1.arm, st1.leg, st1.coarm, st1.coleg, st1.content, st1.hook) == (0, 0, 0, 0, 0, 1)
    st2 = cell_stats((2,), (0, 0))
    assert (st2.arm, st2.leg, st2.content, st2.hook) == (1, 0, 0, 2)
    st3 = cell_stats((2, 2, 1), (1, 1))
    assert (st3.arm, st3.leg, st3.coarm, st3.coleg, st3.content, st3.hook) == (0, 0, 1, 1, 0, 1)


def _brute_stats(lam, i, j):
    cs = set(cells(lam))
    arm = sum(1 for (a, b) in cs if a == i and b > j)
    leg = sum(1 for (a, b) in cs if b == j and a > i)
    return arm, leg


def test_cell_stats_against_brute_force():
    for n in range(1, 8):
        for lam in partitions_of(n):
            for i, j in cells(lam):
                stt = cell_stats(lam, (i, j))
                assert (stt.arm, stt.leg) == _brute_stats(lam, i, j)
                assert (stt.coarm, stt.coleg, stt.content) == (j, i, j - i)
                assert stt.hook == stt.arm + stt.leg + 1


def test_content_multiset():
    assert content_multiset(()) == {}
    assert content_multiset((2, 1)) == {-1: 1, 0: 1, 1: 1}
    # cells (0,0),(0,1),(1,0),(1,1),(2,0) have contents 0,1,-1,0,-2
    assert content_multiset((2, 2, 1)) == {0: 2, 1: 1, -1: 1, -2: 1}


def test_partitions_of_counts():
    assert [len(partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert partitions_of(3) == ((3,), (2, 1), (1, 1, 1))


def test_conjugate_and_dominance():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert dominates((3,), (2, 1)) and not dominates((2, 1), (3,))
    assert not dominates((3, 1, 1, 1), (2, 2, 2)) and not dominates((2, 2, 2), (3, 1, 1, 1))


def test_ribbons_add_examples():
    (alpha, strip), = ribbons_add((), 1)
    assert alpha == (1,) and strip.length == 1
    assert [a for a, _ in ribbons_add((1,), 1)] == [(2,), (1, 1)]
    got = [(a, b.sign) for a, b in ribbons_add((), 3)]
    assert got == [((3,), 1), ((2, 1), -1), ((1, 1, 1), 1)]


def test_ribbons_remove_examples():
    (beta, strip), = ribbons_remove((1,), 1)
    assert beta == () and len(strip.cells) == 1
    assert ribbons_remove((1,), 2) == []
    (beta, strip), = ribbons_remove((2, 1), 3)
    assert beta == () and strip.rows_spanned == 2


def _is_ribbon(skew):
    if not skew:
        return False
    contents = sorted(j - i for i, j in skew)
    if contents != list(range(contents[0], contents[0] + len(skew))):
        return False
    return not any({(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)} <= skew for i, j in skew)


def test_ribbons_against_brute_force():
    for n in range(0, 7):
        for lam in partitions_of(n):
            for k in range(1, 5):
                expected = set()
                for alpha in partitions_of(n + k):
                    if all(i < len(alpha) and a <= alpha[i] for i, a in enumerate(lam)):
                        skew = set(cells(alpha)) - set(cells(lam))
                        if _is_ribbon(skew):
                            expected.add(alpha)
                got = ribbons_add(lam, k)
                assert {a for a, _ in got} == expected
                for alpha, strip in got:
                    assert strip.cells == frozenset(set(cells(alpha)) - set(cells(lam)))
                    rows = {i for i, _ in strip.cells}
                    assert strip.rows_spanned == len(rows)
                    assert strip.sign == (-1) ** (len(rows) + 1)
                    assert strip.min_content == min(j - i for i, j in strip.cells)


def test_duality():
    for n in range(0, 7):
        for lam in partitions_of(n):
            for k in range(1, 4):
                for alpha, strip in ribbons_add(lam, k):
                    assert (lam, strip) in ribbons_remove(alpha, k)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 9).flatmap(lambda n: st.sampled_from(partitions_of(n))))
def test_hook_sum_and_sizes(lam):
    assert size(lam) == len(list(cells(lam)))
    assert sum(content_multiset(lam).values()) == size(lam)
    assert conjugate(conjugate(lam)) == lam
    for x in cells(lam):
        stt = cell_stats(lam, x)
        assert stt.hook == stt.arm + stt.leg + 1
