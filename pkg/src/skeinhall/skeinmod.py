"""The annulus skein module C with basis Q_{lam,mu} and the torus algebra action on it.

Also provides the determinantal realization of Q_{lam,mu} inside
Lambda (x) Lambda and the Homflypt cabling pipeline.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .coeffring import ONE, ZERO, RatFunc, curly, var
from .errors import NonpositiveM, NotCoprime, ZeroIndex, ZeroVector
from .partitions import Partition, content_multiset, partition, ribbons_add, ribbons_remove
from .symfunc import SymFunc, _check_degree, ev_H, kostka, mult, s as schur, to_basis

_S, _V = var("s"), var("v")

QKey = tuple  # (lam, mu)


class SkeinElement:
    """RatFunc-linear combination of the basis vectors Q_{lam,mu}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean: dict[QKey, RatFunc] = {}
        for (lam, mu), c in (terms or {}).items():
            key = (partition(lam), partition(mu))
            c = c if isinstance(c, RatFunc) else RatFunc(c)
            clean[key] = clean[key] + c if key in clean else c
        self.terms = {k: c for k, c in clean.items() if not c.is_zero()}

    @classmethod
    def basis(cls, lam: Iterable[int] = (), mu: Iterable[int] = ()) -> "SkeinElement":
        return cls({(tuple(lam), tuple(mu)): ONE})

    @classmethod
    def from_symfunc(cls, f: SymFunc) -> "SkeinElement":
        """Embed Lambda as C^+ via s_lam -> Q_{lam,empty}."""
        return cls({(lam, ()): c for lam, c in to_basis(f, "s").coeffs.items()})

    def to_symfunc(self) -> SymFunc:
        """The C^+ component, read as a Schur expansion."""
        return SymFunc("s", {lam: c for (lam, mu), c in self.terms.items() if not mu})

    def is_zero(self) -> bool:
        return not self.terms

    def gradings(self) -> set[int]:
        return {sum(lam) - sum(mu) for lam, mu in self.terms}

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return SkeinElement(out)

    def __neg__(self):
        return SkeinElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SkeinElement":
        return SkeinElement({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "SkeinElement(0)"
        body = " + ".join(f"({c})*Q[{list(l)},{list(m)}]" for (l, m), c in sorted(self.terms.items()))
        return f"SkeinElement({body})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"lambda": list(l), "mu": list(m), "coeff": c.to_json()}
                for (l, m), c in sorted(self.terms.items())
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SkeinElement":
        return cls({(tuple(t["lambda"]), tuple(t["mu"])): RatFunc.from_json(t["coeff"]) for t in data["terms"]})


# ---------------------------------------------------------------------------
# Coefficients


def content_poly(contents: Mapping[int, int], power: int) -> RatFunc:
    """sum over cells of s^(power * content)."""
    total = ZERO
    for c, k in contents.items():
        total = total + _S ** (power * c) * k
    return total


def s_coeff(lam: Iterable[int], mu: Iterable[int], m: int) -> RatFunc:
    if m == 0:
        raise ZeroIndex("s_coeff needs m != 0")
    lam, mu = partition(lam), partition(mu)
    return (
        curly(m) * (_V ** (-m) * content_poly(content_multiset(lam), 2 * m)
                    - _V**m * content_poly(content_multiset(mu), -2 * m))
        + (_V ** (-m) - _V**m) / curly(m)
    )


def _strip_contents(strip) -> dict[int, int]:
    return {c: 1 for c in range(strip.min_content, strip.min_content + strip.length)}


def b_coeff(m: int, contents: Mapping[int, int]) -> RatFunc:
    return _V ** (-m) * content_poly(contents, 2 * m)


def _grow(lam: Partition, n: int):
    """Strips lam + n: (alpha, sign, contents of alpha - lam) for either sign of n."""
    if n > 0:
        for alpha, strip in ribbons_add(lam, n):
            yield alpha, strip.sign, _strip_contents(strip)
    else:
        for alpha, strip in ribbons_remove(lam, -n):
            yield alpha, strip.sign, {c: -k for c, k in _strip_contents(strip).items()}


def _shrink(mu: Partition, n: int):
    """Strips mu - n: (beta, sign, contents of mu - beta)."""
    if n > 0:
        for beta, strip in ribbons_remove(mu, n):
            yield beta, strip.sign, _strip_contents(strip)
    else:
        for beta, strip in ribbons_add(mu, -n):
            yield beta, strip.sign, {c: -k for c, k in _strip_contents(strip).items()}


# ---------------------------------------------------------------------------
# The action


def act_basis(m: int, n: int, lam: Partition, mu: Partition) -> dict[QKey, RatFunc]:
    """Untwisted P_{m,n} applied to Q_{lam,mu}."""
    if (m, n) == (0, 0):
        raise ZeroVector("P_(0,0) is not a generator")
    if n == 0:
        return {(lam, mu): s_coeff(lam, mu, m)}
    out: dict[QKey, RatFunc] = {}
    if m == 0:
        for alpha, sign, _ in _grow(lam, n):
            out[(alpha, mu)] = out.get((alpha, mu), ZERO) + sign
        for beta, sign, _ in _shrink(mu, n):
            out[(lam, beta)] = out.get((lam, beta), ZERO) + sign
        return out
    pref = curly(m) / curly(m * n)
    for alpha, sign, cont in _grow(lam, n):
        out[(alpha, mu)] = out.get((alpha, mu), ZERO) + pref * b_coeff(m, cont) * sign
    for beta, sign, cont in _shrink(mu, n):
        out[(lam, beta)] = out.get((lam, beta), ZERO) + pref * b_coeff(-m, cont) * sign
    return out


def twist(m: int, n: int) -> tuple[int, int]:
    return (-n, m)


def act_P(x: Sequence[int], e: SkeinElement, twisted: bool = False) -> SkeinElement:
    m, n = x
    if twisted:
        m, n = twist(m, n)
    out: dict[QKey, RatFunc] = {}
    for (lam, mu), c in e.terms.items():
        for key, a in act_basis(m, n, lam, mu).items():
            out[key] = out.get(key, ZERO) + c * a
    return SkeinElement(out)


# ---------------------------------------------------------------------------
# Determinantal realization in Lambda (x) Lambda


Tensor = dict  # (lam, mu) -> Fraction, Schur (x) Schur coefficients


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (h1, g1), c1 in a.items():
        for (h2, g2), c2 in b.items():
            key = (tuple(sorted(h1 + h2, reverse=True)), tuple(sorted(g1 + g2, reverse=True)))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _h_entry(k: int, star: bool) -> dict:
    if k < 0:
        return {}
    if k == 0:
        return {((), ()): 1}
    return {(((), (k,)) if star else ((k,), ())): 1}


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def q_matrix(lam: Iterable[int], mu: Iterable[int]) -> list[list[dict]]:
    """The matrix whose determinant is Q_{lam,mu}; entries are h/h* monomials."""
    lam, mu = partition(lam), partition(mu)
    rows = [(d, True) for d in reversed(mu)] + [(d, False) for d in lam]
    size = len(rows)
    mat = []
    for r, (dr, star) in enumerate(rows):
        row = []
        for c in range(size):
            k = dr - (c - r) if star else dr + (c - r)
            row.append(_h_entry(k, star))
        mat.append(row)
    return mat


def build_Q(lam: Iterable[int], mu: Iterable[int]) -> Tensor:
    """Q_{lam,mu} as a Schur (x) Schur tensor."""
    lam, mu = partition(lam), partition(mu)
    _check_degree(sum(lam) + sum(mu))
    mat = q_matrix(lam, mu)
    size = len(mat)
    hpoly: dict = {}
    for perm in permutations(range(size)):
        term = {((), ()): _perm_sign(perm)}
        for r in range(size):
            entry = mat[r][perm[r]]
            if not entry:
                term = {}
                break
            term = _poly_mul(term, entry)
        for k, c in term.items():
            hpoly[k] = hpoly.get(k, 0) + c
    out: Tensor = {}
    for (h1, h2), c in hpoly.items():
        if not c:
            continue
        for a, ka in _h_to_s(h1).items():
            for b, kb in _h_to_s(h2).items():
                out[(a, b)] = out.get((a, b), 0) + c * ka * kb
    return {k: Fraction(c) for k, c in out.items() if c}


def _h_to_s(rho: Partition) -> dict[Partition, int]:
    from .partitions import partitions_of

    n = sum(rho)
    res = {}
    for lam in partitions_of(n):
        k = kostka(lam, rho)
        if k:
            res[lam] = k
    return res


def tensor_swap(t: Tensor) -> Tensor:
    return {(b, a): c for (a, b), c in t.items()}


def tensor_mul(x: Tensor, y: Tensor) -> Tensor:
    out: Tensor = {}
    for (a1, b1), c1 in x.items():
        for (a2, b2), c2 in y.items():
            left = to_basis(mult(schur(*a1), schur(*a2)), "s").coeffs
            right = to_basis(mult(schur(*b1), schur(*b2)), "s").coeffs
            for a, ca in left.items():
                for b, cb in right.items():
                    out[(a, b)] = out.get((a, b), 0) + c1 * c2 * ca.constant_value() * cb.constant_value()
    return {k: c for k, c in out.items() if c}


def expand_in_Q(t: Tensor) -> dict[QKey, Fraction]:
    """Coefficients of a tensor in the Q-basis (triangular peeling by total degree)."""
    rest = {k: Fraction(c) for k, c in t.items() if c}
    out: dict[QKey, Fraction] = {}
    while rest:
        key = max(rest, key=lambda k: (sum(k[0]) + sum(k[1]), k))
        c = rest[key]
        out[key] = c
        for k2, c2 in build_Q(*key).items():
            val = rest.get(k2, 0) - c * c2
            if val:
                rest[k2] = val
            else:
                rest.pop(k2, None)
    return out


# ---------------------------------------------------------------------------
# Cabling


def validate_mn(m: int, n: int) -> None:
    if m <= 0:
        raise NonpositiveM(f"m must be positive, got {m}")
    if gcd(m, abs(n)) != 1:
        raise NotCoprime(f"gcd({m},{n}) != 1")


def gamma_mn(m: int, n: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """An SL2(Z) matrix with first column (m, n); second column has minimal |a|, ties a >= 0."""
    validate_mn(m, n)
    best = None
    # a*n - b*m = -1 ... solve m*b - n*a = 1
    for a in range(-m, m + 1):
        if (1 + n * a) % m == 0:
            b = (1 + n * a) // m
            key = (abs(a), a < 0)
            if best is None or key < best[0]:
                best = (key, a, b)
    _, a, b = best
    return ((m, a), (n, b))


def cable_step_H(m: int, n: int, f: SymFunc, gamma=None) -> SymFunc:
    """Gamma^H_{m,n}: p_k -> twisted P_{km,kn}, applied to the empty diagram."""
    validate_mn(m, n)
    if gamma is None:
        gamma = gamma_mn(m, n)
    _check_degree(m * f.degree())
    (g11, _), (g21, _) = gamma
    if (g11, g21) != (m, n):
        raise ValueError("gamma must send (1,0) to (m,n)")
    total = SkeinElement()
    for rho, c in to_basis(f, "p").coeffs.items():
        state = SkeinElement.basis()
        for k in reversed(rho):
            state = act_P((g11 * k, g21 * k), state, twisted=True)
        total = total + state.scale(c)
    extra = [k for k in total.terms if k[1]]
    if extra:
        raise AssertionError(f"cable step left C^+: {extra}")
    return total.to_symfunc()


def jH(pairs: Sequence[Sequence[int]], lam: Iterable[int]) -> RatFunc:
    lam = partition(lam)
    state = schur(*lam)
    for m, n in reversed(list(pairs)):
        state = cable_step_H(m, n, state)
    return ev_H(state)
