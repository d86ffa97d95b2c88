from __future__ import annotations

import json
import threading

import pytest

from skeinhall import hallrep as hr
from skeinhall import symfunc as sf
from skeinhall.coeffring import ONE, var
from skeinhall.errors import ZeroIndex
from skeinhall.partitions import partitions_of

q, t, u, s, v = (var(n) for n in "qtusv")


def test_diag_examples():
    assert hr.diag_action(1, sf.P(1)) == sf.P(1).scale(q - 1)
    assert hr.diag_action(2, sf.SymFunc.basis_element("macdonald", ())).is_zero()
    assert hr.diag_action(-1, sf.P(1)) == sf.P(1).scale(1 - q)
    with pytest.raises(ZeroIndex):
        hr.Diag(0)


def test_diag_eigenvalue_formula():
    lam = (3, 1)
    assert hr.diag_eigenvalue(2, lam) == (q**6 - 1) + (q**2 - 1) * t**-2
    assert hr.diag_eigenvalue(-1, lam) == q * ((q**-3 - 1) + (q**-1 - 1) * t)


def test_alpha():
    assert hr.alpha(2) == (1 - q**2) * (1 - t**-2) * (1 - q**-2 * t**2) / 2


def test_theta_constant_is_inverted_alpha():
    for i in (1, 2, 3):
        assert hr.theta_constant(i) == hr.alpha(i).specialize({"q": q**-1, "t": t**-1})


def test_horizontal_generators_are_power_sums():
    alg = hr.default_algebra()
    for k in (2, 3, 4):
        for lam in [(), (1,), (2,), (1, 1)]:
            f = sf.SymFunc.basis_element("macdonald", lam)
            assert hr.apply_op(alg.v(k, 0), f) == sf.mult(sf.p(k), f)


def test_cable_one_zero_is_identity():
    for lam in [(2,), (1, 1), (2, 1), (3,)]:
        f = sf.P(*lam)
        assert hr.cable_step_E(1, 0, f) == f


def test_mul_p1_is_multiplication():
    for n in range(0, 5):
        for lam in partitions_of(n):
            f = sf.P(*lam)
            assert hr.apply_op(hr.MulP1(), f) == sf.mult(sf.p(1), f)


def test_apply_examples():
    empty = sf.SymFunc.basis_element("macdonald", ())
    assert hr.apply_op(hr.MulP1(), empty) == sf.p(1)
    com = hr.Commutator(hr.Diag(1), hr.MulP1())
    assert hr.apply_op(com, empty) == sf.P(1).scale(q - 1)


def test_u_op_examples():
    empty = sf.SymFunc.basis_element("macdonald", ())
    assert hr.apply_op(hr.u_op(1, 0, renorm=True), empty) == sf.p(1)
    base = hr.Diag(2).scale(1 / (q**2 - 1))
    assert hr.operators_agree(hr.u_op(0, 2), base, 5)
    x, y = (0, 1), (1, 0)
    expected = hr.Commutator(hr.u_op(*x), hr.u_op(*y)).scale(hr.epsilon(y, x))
    assert hr.operators_agree(hr.u_op(1, 1), expected, 5)


def test_pick_examples():
    assert hr.pick_decomposition((1, 3)) == ((0, 1), (1, 2))
    x, y = hr.pick_decomposition((2, 2))
    assert (x, y) == ((1, 2), (1, 0))
    assert abs(hr.det(x, y)) == 2 and hr.interior_points(x, y) == 0
    for z in [(3, 2), (2, 1), (3, 1), (2, 3), (2, -1), (3, -2), (4, 2), (3, 3), (2, 0)]:
        x, y = hr.pick_decomposition(z)
        assert hr.is_valid_decomposition(x, y, z)
        assert hr.interior_points(x, y) == 0


def test_pick_is_consistent_with_brute_force():
    for m in range(1, 4):
        for n in range(-3, 4):
            if (m, n) == (1, 0):
                continue
            for x, y in hr.all_decompositions((m, n)):
                assert hr.interior_points(x, y) == 0


def test_ray_commutes():
    for ray in ((1, 1), (1, -1)):
        assert hr.ray_commutes_holds(ray, 3, 5)


def test_theta_relation_sample():
    for x, y in [((0, 1), (1, 0)), ((1, 1), (1, 0)), ((1, 1), (1, -1))]:
        assert hr.theta_relation_holds(x, y, 5)


def test_theta_independence():
    for z in [(2, 0), (2, 2)]:
        assert hr.theta_independent(z, 5)


def test_bridge_sample():
    for m, n in [(1, 1), (2, 1), (2, -1), (3, 2)]:
        for lam in [(), (1,), (2,), (1, 1)]:
            assert hr.bridge_holds(m, n, lam)


def test_grading_of_cable_step():
    for m, n in [(2, 1), (3, 1), (2, -3)]:
        for lam in [(1,), (2,), (1, 1)]:
            out = hr.cable_step_E(m, n, sf.P(*lam))
            assert {sum(mu) for mu in out.coeffs} == {m * sum(lam)}


def test_jE_examples():
    assert hr.jE([(1, 0)], (1,)) == (1 - u) / (1 - t)
    for lam in [(), (1,), (2, 1)]:
        assert hr.jE([], lam) == sf.ev_E(sf.P(*lam))
    assert hr.spec_to_skein((1 - u) / (1 - t)) == (1 - v**2) / (1 - s**-2)
    assert hr.spec_to_N((1 - u) / (1 - t), 2) == 1 + t
    assert hr.spec_to_N(hr.jE([(1, 0)], (2,)), 2) == sf.principal_spec(sf.P(2), 2)


def test_disk_cache(tmp_path):
    alg = hr.HallAlgebra(tmp_path)
    first = hr.apply_op(alg.u(2, 1), sf.P(1))
    files = sorted(p.name for p in tmp_path.iterdir())
    assert "u_2_1_deg1.json" in files
    data = json.loads((tmp_path / "u_2_1_deg1.json").read_text())
    assert data["version"] == hr.CACHE_VERSION
    again = hr.apply_op(hr.HallAlgebra(tmp_path).u(2, 1), sf.P(1))
    assert again == first == hr.apply_op(hr.HallAlgebra().u(2, 1), sf.P(1))


def test_disk_cache_concurrent_writers(tmp_path):
    alg = hr.HallAlgebra(tmp_path)
    op = alg.u(1, 2)
    errors = []

    def work(lam):
        try:
            op.column(lam)
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=work, args=(lam,)) for lam in partitions_of(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert not errors
    cols = json.loads((tmp_path / "u_1_2_deg4.json").read_text())["columns"]
    assert len(cols) == len(partitions_of(4))
