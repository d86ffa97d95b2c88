"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest summary.
"""
from __future__ import annotations

import random
import time

import pytest

from acceptance_report import record
from skeinhall import hallrep, symfunc
from skeinhall.cli import THETA_RELATION_PAIRS, THETA_RAYS, skein_basis
from skeinhall.coeffring import curly, specialize, var
from skeinhall.errors import NotAMonomialRatio
from skeinhall.knots import compare_connection, monomial_ratio, trefoil_reference
from skeinhall.partitions import partitions_of
from skeinhall.skeinmod import SkeinElement, act_P, build_Q, jH, tensor_mul, tensor_swap
from skeinhall.toralg import X, confluence_holds, jacobi_holds

s, v, t = var("s"), var("v"), var("t")


def _vec(rng, lo=-3, hi=3):
    while True:
        x = (rng.randint(lo, hi), rng.randint(lo, hi))
        if x != (0, 0):
            return x


def test_criterion_1_connection_identity():
    start = time.time()
    cases = [[(2, 1)], [(2, -1)], [(3, 1)], [(3, 2)], [(2, 3)], [(2, 3), (1, 1)], [(2, 3), (1, -1)]]
    lambdas = [(1,), (2,), (1, 1), (2, 1)]
    failures = []
    for pairs in cases:
        by_size: dict[int, set] = {}
        for lam in lambdas:
            try:
                c = compare_connection(pairs, lam)
            except NotAMonomialRatio as exc:
                failures.append((pairs, lam, str(exc)))
                continue
            by_size.setdefault(sum(lam), set()).add((c.sign, c.monomial))
        for n, seen in by_size.items():
            if len(seen) != 1:
                failures.append((pairs, n, seen))
    elapsed = time.time() - start
    ok = not failures and elapsed < 600
    record(1, ok, f"28 cases, monomial per |lambda| constant, {elapsed:.1f}s")
    assert not failures, failures


def test_criterion_2_principal_specialization():
    start = time.time()
    bad = []
    for n in range(0, 5):
        for lam in partitions_of(n):
            P = symfunc.P(*lam)
            for N in range(1, 5):
                if hallrep.spec_to_N(symfunc.ev_E(P), N) != symfunc.principal_spec(P, N):
                    bad.append((lam, N))
    elapsed = time.time() - start
    record(2, not bad and elapsed < 60, f"|lambda|<=4, N<=4, {elapsed:.1f}s")
    assert not bad


def test_criterion_3_skein_representation():
    start = time.time()
    basis = [SkeinElement.basis(lam, mu) for lam, mu in skein_basis(3)]
    bad = []
    for m in (-3, -2, -1, 1, 2, 3):
        for n in (-3, -2, -1, 1, 2, 3):
            for e in basis:
                lhs = act_P((m, 0), act_P((0, n), e)) - act_P((0, n), act_P((m, 0), e))
                if lhs != act_P((m, n), e).scale(curly(m * n)):
                    bad.append(("full", m, n, e))
    rng = random.Random(2024)
    for _ in range(50):
        x, y = _vec(rng), _vec(rng)
        k = x[0] * y[1] - x[1] * y[0]
        z = (x[0] + y[0], x[1] + y[1])
        for e in basis:
            lhs = act_P(x, act_P(y, e)) - act_P(y, act_P(x, e))
            rhs = act_P(z, e).scale(curly(k)) if k else SkeinElement()
            if lhs != rhs:
                bad.append(("general", x, y, e))
    elapsed = time.time() - start
    record(3, not bad and elapsed < 300, f"{len(basis)} basis vectors, 36 (m,n) + 50 random pairs, {elapsed:.1f}s")
    assert not bad


def test_criterion_4_hall_presentation():
    start = time.time()
    bad = []
    for ray in ((1, 1), (1, -1)):
        if not hallrep.ray_commutes_holds(ray, 3, 6):
            bad.append(("ray-commutes", ray))
    for x, y in THETA_RELATION_PAIRS:
        if not hallrep.theta_relation_holds(x, y, 6):
            bad.append(("theta-relation", x, y))
    for z in THETA_RAYS:
        if not hallrep.theta_independent(z, 6):
            bad.append(("theta", z))
    elapsed = time.time() - start
    record(4, not bad and elapsed < 600,
           f"commuting rays on 2 rays, theta relation on {len(THETA_RELATION_PAIRS)} pairs, "
           f"theta on {len(THETA_RAYS)} rays, degree <= 6, {elapsed:.1f}s")
    assert not bad


def test_criterion_5_bridge():
    start = time.time()
    bad = [
        (m, n, lam)
        for m in range(1, 4)
        for n in range(-3, 4)
        for k in range(5)
        for lam in partitions_of(k)
        if not hallrep.bridge_holds(m, n, lam)
    ]
    elapsed = time.time() - start
    record(5, not bad and elapsed < 300, f"1<=m<=3, |n|<=3, |lambda|<=4, {elapsed:.1f}s")
    assert not bad


def test_criterion_6_confluence_and_jacobi():
    start = time.time()
    rng = random.Random(6)
    bad = []
    for xp in (None, X):
        for _ in range(100):
            a, b, c = _vec(rng), _vec(rng), _vec(rng)
            if not confluence_holds(a, b, c, xp):
                bad.append(("assoc", xp, a, b, c))
        for _ in range(100):
            a, b, c = _vec(rng), _vec(rng), _vec(rng)
            if not jacobi_holds(a, b, c):
                bad.append(("jacobi", a, b, c))
    elapsed = time.time() - start
    record(6, not bad and elapsed < 120, f"100 associativity + 100 Jacobi triples at x=1 and symbolic x, {elapsed:.1f}s")
    assert not bad


def test_criterion_7_macdonald_degeneration():
    start = time.time()
    bad = []
    for n in range(0, 7):
        for lam in partitions_of(n):
            P = symfunc.macdonald_P(lam)
            at = symfunc.SymFunc("m", {mu: specialize(c, {"q": t}) for mu, c in P.coeffs.items()})
            if at != symfunc.to_basis(symfunc.schur_in_p(lam), "m"):
                bad.append(lam)
    elapsed = time.time() - start
    record(7, not bad and elapsed < 120, f"|lambda|<=6, {elapsed:.1f}s")
    assert not bad


@pytest.mark.xfail(strict=True, reason="the (2,3) cable is the mirror of the tabulated trefoil; see mirror test")
def test_criterion_8_trefoil_literal():
    ratio = jH([(2, 3)], (1,)) / trefoil_reference()
    try:
        monomial_ratio(ratio)
        ok = True
    except NotAMonomialRatio:
        ok = False
    record(8, ok, "jH([(2,3)],(1)) / reference is not +-v^a s^b; it is the mirror image "
                  "(v -> v^-1, s -> s^-1) of the reference up to v^6")
    assert ok


def test_criterion_8_trefoil_mirror_relation():
    ref = trefoil_reference()
    mirror = ref.specialize({"v": v**-1, "s": s**-1})
    assert jH([(2, 3)], (1,)) == mirror * v**6
    assert jH([(2, -3)], (1,)) == ref * v**-6


def test_criterion_9_determinant_facts():
    start = time.time()
    bad = []
    for lam, mu in skein_basis(3):
        Q = build_Q(lam, mu)
        if tensor_swap(Q) != build_Q(mu, lam):
            bad.append(("symmetry", lam, mu))
        if not mu and Q != {(lam, ()): 1}:
            bad.append(("fact5", lam))
        prod = tensor_mul(build_Q(lam, ()), build_Q((), mu))
        diff = dict(Q)
        for key, c in prod.items():
            diff[key] = diff.get(key, 0) - c
        for (a, b), c in diff.items():
            if c and not (sum(a) < sum(lam) and sum(b) < sum(mu) and sum(a) - sum(b) == sum(lam) - sum(mu)):
                bad.append(("fact6", lam, mu, a, b))
    elapsed = time.time() - start
    record(9, not bad and elapsed < 60, f"symmetry, Q_(lam,0) = s_lam (x) 1, lower correction; |lambda|,|mu|<=3, {elapsed:.1f}s")
    assert not bad
