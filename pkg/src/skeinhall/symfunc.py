"""Symmetric functions over RatFunc in the power-sum, Schur, monomial and Macdonald bases.

All conversions route through the power-sum basis, except Macdonald which
is stored in the monomial basis.  Transition matrices are built lazily per
degree and kept in a process-wide cache.
"""
from __future__ import annotations

import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Mapping

import flint

from .coeffring import ONE, ZERO, RatFunc, var
from .errors import DegreeCapExceeded
from .partitions import (
    Partition,
    cell_stats,
    cells,
    partition,
    partitions_of,
    ribbons_add,
    ribbons_remove,
)

BASES = ("p", "s", "m", "macdonald")

_degree_cap = 12
_lock = threading.RLock()


def get_degree_cap() -> int:
    return _degree_cap


def set_degree_cap(cap: int) -> None:
    global _degree_cap
    if cap < 0:
        raise ValueError("degree cap must be nonnegative")
    _degree_cap = cap


def _check_degree(n: int) -> None:
    if n > _degree_cap:
        raise DegreeCapExceeded(f"degree {n} exceeds cap {_degree_cap}")


def _rf(c) -> RatFunc:
    return c if isinstance(c, RatFunc) else RatFunc(c)


class SymFunc:
    """Finite RatFunc-linear combination of basis elements indexed by partitions."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: str, coeffs: Mapping[Iterable[int], object] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        clean: dict[Partition, RatFunc] = {}
        for lam, c in (coeffs or {}).items():
            lam = partition(lam)
            c = _rf(c)
            if lam in clean:
                c = clean[lam] + c
            clean[lam] = c
        self.coeffs = {lam: c for lam, c in clean.items() if not c.is_zero()}

    @classmethod
    def basis_element(cls, basis: str, lam: Iterable[int]) -> "SymFunc":
        return cls(basis, {partition(lam): ONE})

    def degree(self) -> int:
        return max((sum(lam) for lam in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def homogeneous_parts(self) -> dict[int, "SymFunc"]:
        parts: dict[int, dict] = {}
        for lam, c in self.coeffs.items():
            parts.setdefault(sum(lam), {})[lam] = c
        return {n: SymFunc(self.basis, d) for n, d in parts.items()}

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if not isinstance(other, SymFunc):
            return NotImplemented
        other = to_basis(other, self.basis)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out[lam] + c if lam in out else c
        return SymFunc(self.basis, out)

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.basis, {lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = _rf(c)
        return SymFunc(self.basis, {lam: c * a for lam, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return mult(self, other)
        if isinstance(other, (RatFunc, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if other.basis != self.basis:
            other = to_basis(other, self.basis)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.basis, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return f"SymFunc({self.basis}: 0)"
        body = " + ".join(f"({c})*{self.basis}{list(lam)}" for lam, c in sorted(self.coeffs.items(), reverse=True))
        return f"SymFunc({body})"

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [
                {"partition": list(lam), "coeff": c.to_json()}
                for lam, c in sorted(self.coeffs.items(), reverse=True)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymFunc":
        return cls(data["basis"], {tuple(t["partition"]): RatFunc.from_json(t["coeff"]) for t in data["terms"]})


def p(*parts: int) -> SymFunc:
    return SymFunc.basis_element("p", sorted(parts, reverse=True))


def s(*parts: int) -> SymFunc:
    return SymFunc.basis_element("s", parts)


def m(*parts: int) -> SymFunc:
    return SymFunc.basis_element("m", parts)


def P(*parts: int) -> SymFunc:
    return SymFunc.basis_element("macdonald", parts)


# ---------------------------------------------------------------------------
# Combinatorial constants


def z(rho: Partition) -> int:
    return prod(i**k * factorial(k) for i, k in Counter(rho).items())


@lru_cache(maxsize=None)
def character(lam: Partition, rho: Partition) -> int:
    """chi^lam at cycle type rho via ribbon removal."""
    if not rho:
        return 1 if not lam else 0
    n, rest = rho[0], rho[1:]
    return sum(strip.sign * character(beta, rest) for beta, strip in ribbons_remove(lam, n))


def _count_fillings(rho: Partition, mu: Partition) -> int:
    """Number of maps from parts of rho to rows of mu with row sums mu."""

    @lru_cache(maxsize=None)
    def go(k: int, caps: tuple[int, ...]) -> int:
        if k == len(rho):
            return 1 if not any(caps) else 0
        total = 0
        for j, c in enumerate(caps):
            if c >= rho[k]:
                total += go(k + 1, caps[:j] + (c - rho[k],) + caps[j + 1:])
        return total

    return go(0, tuple(mu))


class _Tables:
    """Constant transition matrices for one degree."""

    def __init__(self, n: int):
        parts = partitions_of(n)
        self.parts = parts
        self.s_to_p = {
            lam: {rho: Fraction(character(lam, rho), z(rho)) for rho in parts if character(lam, rho)}
            for lam in parts
        }
        self.p_to_s = {
            rho: {lam: Fraction(character(lam, rho)) for lam in parts if character(lam, rho)}
            for rho in parts
        }
        self.p_to_m = {}
        for rho in parts:
            row = {}
            for mu in parts:
                c = _count_fillings(rho, mu)
                if c:
                    row[mu] = Fraction(c)
            self.p_to_m[rho] = row
        k = len(parts)
        mat = flint.fmpq_mat(k, k, [int(self.p_to_m[r].get(mu, 0)) for r in parts for mu in parts])
        inv = mat.inv()
        self.m_to_p = {}
        for i, mu in enumerate(parts):
            row = {}
            for j, rho in enumerate(parts):
                v = inv[i, j]
                if v != 0:
                    row[rho] = Fraction(int(v.p), int(v.q))
            self.m_to_p[mu] = row


_tables: dict[int, _Tables] = {}


def _table(n: int) -> _Tables:
    _check_degree(n)
    t = _tables.get(n)
    if t is None:
        with _lock:
            t = _tables.get(n)
            if t is None:
                t = _Tables(n)
                _tables[n] = t
    return t


def kostka(lam: Partition, mu: Partition) -> int:
    """Coefficient of m_mu in s_lam."""
    n = sum(lam)
    if sum(mu) != n:
        return 0
    tab = _table(n)
    total = Fraction(0)
    for rho, c in tab.s_to_p[partition(lam)].items():
        total += c * tab.p_to_m[rho].get(partition(mu), 0)
    return int(total)


# ---------------------------------------------------------------------------
# Macdonald polynomials


def qt_inner_p(rho: Partition) -> RatFunc:
    """<p_rho, p_rho>_{q,t}."""
    q, t = var("q"), var("t")
    val = RatFunc(z(rho))
    for r in rho:
        val = val * (1 - q**r) / (1 - t**r)
    return val


_macdonald: dict[int, dict[Partition, dict[Partition, RatFunc]]] = {}


def _build_macdonald(n: int) -> dict[Partition, dict[Partition, RatFunc]]:
    tab = _table(n)
    parts = sorted(tab.parts)  # ascending lex, a linear extension of dominance
    norms = {rho: qt_inner_p(rho) for rho in tab.parts}

    def pair(u: dict, w: dict) -> RatFunc:
        # the pairing is diagonal on power sums
        total = ZERO
        for rho, cu in u.items():
            cw = w.get(rho)
            if cw is not None:
                total = total + cu * cw * norms[rho]
        return total

    def accumulate(target: dict, src: dict, c: RatFunc) -> None:
        for key, val in src.items():
            new = target.get(key, ZERO) - c * val
            if new.is_zero():
                target.pop(key, None)
            else:
                target[key] = new

    result: dict[Partition, dict[Partition, RatFunc]] = {}
    in_p: dict[Partition, dict[Partition, RatFunc]] = {}
    self_norm: dict[Partition, RatFunc] = {}
    for lam in parts:
        m_lam_p = {rho: RatFunc(c) for rho, c in tab.m_to_p[lam].items()}
        vec_m = {lam: ONE}
        vec_p = dict(m_lam_p)
        for mu in parts:
            if mu >= lam:
                break
            c = pair(m_lam_p, in_p[mu])
            if c.is_zero():
                continue
            c = c / self_norm[mu]
            accumulate(vec_m, result[mu], c)
            accumulate(vec_p, in_p[mu], c)
        result[lam] = vec_m
        in_p[lam] = vec_p
        self_norm[lam] = pair(vec_p, vec_p)
    return result


def _macdonald_table(n: int) -> dict[Partition, dict[Partition, RatFunc]]:
    _check_degree(n)
    t = _macdonald.get(n)
    if t is None:
        with _lock:
            t = _macdonald.get(n)
            if t is None:
                t = _build_macdonald(n)
                _macdonald[n] = t
    return t


def macdonald_P(lam: Iterable[int]) -> SymFunc:
    lam = partition(lam)
    return SymFunc("m", _macdonald_table(sum(lam))[lam])


def qt_inner(f: SymFunc, g: SymFunc) -> RatFunc:
    fp, gp = to_basis(f, "p"), to_basis(g, "p")
    total = ZERO
    for rho, c in fp.coeffs.items():
        d = gp.coeffs.get(rho)
        if d is not None:
            total = total + c * d * qt_inner_p(rho)
    return total


# ---------------------------------------------------------------------------
# Conversions


def _apply_const(coeffs: Mapping[Partition, RatFunc], table_of, target: str) -> SymFunc:
    out: dict[Partition, RatFunc] = {}
    for lam, c in coeffs.items():
        for mu, a in table_of(lam).items():
            term = c * a
            out[mu] = out[mu] + term if mu in out else term
    return SymFunc(target, out)


def _to_p(f: SymFunc) -> SymFunc:
    if f.basis == "p":
        return f
    if f.basis == "s":
        return _apply_const(f.coeffs, lambda lam: _table(sum(lam)).s_to_p[lam], "p")
    if f.basis == "m":
        return _apply_const(f.coeffs, lambda lam: _table(sum(lam)).m_to_p[lam], "p")
    return _to_p(_mac_to_m(f))


def _mac_to_m(f: SymFunc) -> SymFunc:
    out: dict[Partition, RatFunc] = {}
    for lam, c in f.coeffs.items():
        for mu, a in _macdonald_table(sum(lam))[lam].items():
            term = c * a
            out[mu] = out[mu] + term if mu in out else term
    return SymFunc("m", out)


def _m_to_mac(f: SymFunc) -> SymFunc:
    rest = dict(f.coeffs)
    out: dict[Partition, RatFunc] = {}
    while rest:
        lam = max(rest)
        c = rest.pop(lam)
        out[lam] = c
        for mu, a in _macdonald_table(sum(lam))[lam].items():
            if mu == lam:
                continue
            val = rest.get(mu, ZERO) - c * a
            if val.is_zero():
                rest.pop(mu, None)
            else:
                rest[mu] = val
    return SymFunc("macdonald", out)


def to_basis(f: SymFunc, target: str) -> SymFunc:
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    if f.basis == "macdonald" and target == "m":
        return _mac_to_m(f)
    if target == "macdonald":
        return _m_to_mac(to_basis(f, "m"))
    fp = _to_p(f)
    if target == "p":
        return fp
    if target == "s":
        return _apply_const(fp.coeffs, lambda rho: _table(sum(rho)).p_to_s[rho], "s")
    return _apply_const(fp.coeffs, lambda rho: _table(sum(rho)).p_to_m[rho], "m")


def schur_in_p(lam: Iterable[int]) -> SymFunc:
    return to_basis(s(*partition(lam)), "p")


def mult(f: SymFunc, g: SymFunc) -> SymFunc:
    fp, gp = _to_p(f), _to_p(g)
    _check_degree(fp.degree() + gp.degree())
    out: dict[Partition, RatFunc] = {}
    for a, ca in fp.coeffs.items():
        for b, cb in gp.coeffs.items():
            key = tuple(sorted(a + b, reverse=True))
            term = ca * cb
            out[key] = out[key] + term if key in out else term
    return to_basis(SymFunc("p", out), f.basis)


def p_mult_schur(n: int, lam: Iterable[int]) -> SymFunc:
    """p_n * s_lam in the Schur basis, by ribbon addition."""
    return SymFunc("s", {alpha: strip.sign for alpha, strip in ribbons_add(partition(lam), n)})


# ---------------------------------------------------------------------------
# Specializations and evaluations


def principal_spec(f: SymFunc, N: int) -> RatFunc:
    """Value at x_i = t^(i-1) for i <= N and 0 beyond."""
    if N < 1:
        raise ValueError("N must be positive")
    t = var("t")
    cache: dict[int, RatFunc] = {}

    def pk(k: int) -> RatFunc:
        if k not in cache:
            cache[k] = (1 - t ** (k * N)) / (1 - t**k)
        return cache[k]

    total = ZERO
    for rho, c in to_basis(f, "p").coeffs.items():
        val = c
        for k in rho:
            val = val * pk(k)
        total = total + val
    return total


def ev_H_schur(lam: Partition) -> RatFunc:
    sv, v = var("s"), var("v")
    val = ONE
    for x in cells(lam):
        st = cell_stats(lam, x)
        val = val * (v**-1 * sv**st.content - v * sv ** (-st.content)) / (sv**st.hook - sv ** (-st.hook))
    return val


def ev_E_macdonald(lam: Partition) -> RatFunc:
    q, t, u = var("q"), var("t"), var("u")
    val = ONE
    for x in cells(lam):
        st = cell_stats(lam, x)
        val = val * (t**st.coleg - u * q**st.coarm) / (1 - q**st.arm * t ** (st.leg + 1))
    return val


def ev_H(f: SymFunc) -> RatFunc:
    total = ZERO
    for lam, c in to_basis(f, "s").coeffs.items():
        total = total + c * ev_H_schur(lam)
    return total


def ev_E(f: SymFunc) -> RatFunc:
    total = ZERO
    for lam, c in to_basis(f, "macdonald").coeffs.items():
        total = total + c * ev_E_macdonald(lam)
    return total
