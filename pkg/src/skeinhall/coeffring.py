"""Exact Laurent polynomials and rational functions in the fixed variables q, t, u, s, v, x.

Rational functions are kept in a canonical reduced form

    x^e * N / D

where ``N`` and ``D`` are integer polynomials (python-flint ``fmpz_mpoly``)
with no common factor, neither is divisible by a variable, and ``D`` has a
positive leading coefficient.  Equal values therefore have identical
representations, and ``==``/``hash`` are structural.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Mapping, Union

import flint

from .errors import DivisionByZero, EvalPole, ExponentOverflow, SpecializationPole

VARIABLES = ("q", "t", "u", "s", "v", "x")
NVARS = len(VARIABLES)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO_EXP = (0,) * NVARS
_EXP_LIMIT = 2**63

_CTX = flint.fmpz_mpoly_ctx.get(VARIABLES, "lex")
_QCTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "lex")
_P_ZERO = _CTX.from_dict({})
_P_ONE = _CTX.from_dict({_ZERO_EXP: 1})

Scalar = Union[int, Fraction]


def _check_exp(exp: tuple[int, ...]) -> tuple[int, ...]:
    for e in exp:
        if not -_EXP_LIMIT <= e < _EXP_LIMIT:
            raise ExponentOverflow(f"exponent {e} does not fit in 64 bits")
    return exp


def _var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}") from None


def _mono(exp: tuple[int, ...]):
    if exp == _ZERO_EXP:
        return _P_ONE
    return _CTX.from_dict({exp: 1})


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_term(exp: tuple[int, ...], c: Fraction) -> str:
    factors = []
    for name, e in zip(VARIABLES, exp):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    if not factors:
        return _fmt_rational(c)
    return "*".join([_fmt_rational(c)] + factors)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients.

    ``terms`` maps exponent vectors (ordered as ``VARIABLES``) to nonzero
    ``Fraction`` coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = _check_exp(tuple(int(e) for e in exp))
            if len(exp) != NVARS:
                raise ValueError(f"exponent vector {exp} must have length {NVARS}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        exp = [0] * NVARS
        exp[_var_index(name)] = power
        return cls({tuple(exp): 1})

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def monomial(cls, coeff: Scalar = 1, **powers: int) -> "LaurentPoly":
        exp = [0] * NVARS
        for name, e in powers.items():
            exp[_var_index(name)] = e
        return cls({tuple(exp): coeff})

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items(), reverse=True)

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (exp, c), = self._terms.items()
            return LaurentPoly({tuple(e * k for e in exp): c**k})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(_fmt_term(e, c) for e, c in self.sorted_terms())

    def __repr__(self):
        return f"LaurentPoly({self})"

    def to_json(self) -> list:
        return [[_fmt_rational(c), list(e)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls({tuple(e): Fraction(c) for c, e in data})


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return LaurentPoly.const(Fraction(x))
    return NotImplemented


# ---------------------------------------------------------------------------
# Rational functions


def _pull_monomial(p):
    """Split ``p`` as monomial * p', returning (exp, p')."""
    tc = p.term_content()
    exp = tuple(int(e) for e in tc.monoms()[0])
    if exp == _ZERO_EXP:
        return _ZERO_EXP, p
    return exp, p / _mono(exp)


class RatFunc:
    """Immutable exact rational function over the rationals."""

    __slots__ = ("_e", "_n", "_d", "_hash")

    def __init__(self, value=0, den=None):
        if den is not None:
            r = RatFunc(value) / RatFunc(den)
            self._e, self._n, self._d, self._hash = r._e, r._n, r._d, None
            return
        if isinstance(value, RatFunc):
            self._e, self._n, self._d, self._hash = value._e, value._n, value._d, None
            return
        if isinstance(value, LaurentPoly):
            r = _from_laurent_terms(value._terms)
        elif isinstance(value, (int, Fraction)) or isinstance(value, Rational):
            r = _from_laurent_terms({_ZERO_EXP: Fraction(value)})
        else:
            raise TypeError(f"cannot build RatFunc from {type(value).__name__}")
        self._e, self._n, self._d, self._hash = r._e, r._n, r._d, None

    @classmethod
    def _raw(cls, e, n, d) -> "RatFunc":
        obj = object.__new__(cls)
        obj._e, obj._n, obj._d, obj._hash = e, n, d, None
        return obj

    @classmethod
    def _normalize(cls, e, n, d) -> "RatFunc":
        if d.is_zero():
            raise DivisionByZero("zero denominator")
        if n.is_zero():
            return ZERO
        if not d.is_one():
            g = n.gcd(d)
            if not g.is_one():
                n = n / g
                d = d / g
            de, d = _pull_monomial(d)
            if de != _ZERO_EXP:
                e = tuple(a - b for a, b in zip(e, de))
            if d.leading_coefficient() < 0:
                n, d = -n, -d
        ne, n = _pull_monomial(n)
        if ne != _ZERO_EXP:
            e = tuple(a + b for a, b in zip(e, ne))
        return cls._raw(_check_exp(e), n, d)

    # constructors -----------------------------------------------------
    @classmethod
    def var(cls, name: str, power: int = 1) -> "RatFunc":
        exp = [0] * NVARS
        exp[_var_index(name)] = power
        return cls._raw(_check_exp(tuple(exp)), _P_ONE, _P_ONE)

    @classmethod
    def const(cls, c: Scalar) -> "RatFunc":
        return cls(Fraction(c))

    @classmethod
    def monomial(cls, coeff: Scalar = 1, **powers: int) -> "RatFunc":
        return cls(LaurentPoly.monomial(coeff, **powers))

    # views ------------------------------------------------------------
    @property
    def num(self) -> LaurentPoly:
        return LaurentPoly(
            {tuple(int(a) + b for a, b in zip(m, self._e)): int(c)
             for m, c in zip(self._n.monoms(), self._n.coeffs())}
        )

    @property
    def den(self) -> LaurentPoly:
        return LaurentPoly({tuple(int(e) for e in m): int(c) for m, c in zip(self._d.monoms(), self._d.coeffs())})

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_one(self) -> bool:
        return self._e == _ZERO_EXP and self._n.is_one() and self._d.is_one()

    def is_laurent(self) -> bool:
        return self._d.is_one()

    def is_constant(self) -> bool:
        return self._e == _ZERO_EXP and self._n.is_constant() and self._d.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        if self.is_zero():
            return Fraction(0)
        return Fraction(int(self._n.leading_coefficient()), int(self._d.leading_coefficient()))

    def monomial_part(self) -> tuple[Fraction, tuple[int, ...]] | None:
        """Return (c, exp) when the value is c * monomial, else None."""
        if self.is_zero() or not self._d.is_constant() or len(self._n) != 1:
            return None
        m = tuple(int(e) for e in self._n.monoms()[0])
        c = Fraction(int(self._n.leading_coefficient()), int(self._d.leading_coefficient()))
        return c, tuple(a + b for a, b in zip(m, self._e))

    def variables(self) -> set[str]:
        used = set()
        for i, name in enumerate(VARIABLES):
            if self._e[i] or self._n.degrees()[i] > 0 or self._d.degrees()[i] > 0:
                used.add(name)
        return used

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._n.is_zero():
            return other
        if other._n.is_zero():
            return self
        m = tuple(min(a, b) for a, b in zip(self._e, other._e))
        a = self._n * _mono(tuple(x - y for x, y in zip(self._e, m)))
        b = other._n * _mono(tuple(x - y for x, y in zip(other._e, m)))
        d1, d2 = self._d, other._d
        if d1 == d2:
            return RatFunc._normalize(m, a + b, d1)
        g = d1.gcd(d2)
        if g.is_one():
            return RatFunc._normalize(m, a * d2 + b * d1, d1 * d2)
        d1g, d2g = d1 / g, d2 / g
        return RatFunc._normalize(m, a * d2g + b * d1g, d1 * d2g)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self._e, -self._n, self._d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._n.is_zero() or other._n.is_zero():
            return ZERO
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        e = tuple(a + b for a, b in zip(self._e, other._e))
        d = d1 * d2
        n = n1 * n2
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFunc._raw(_check_exp(e), n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self._n.is_zero():
            raise DivisionByZero("division by the zero rational function")
        n, d = self._d, self._n
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFunc._raw(tuple(-a for a in self._e), n, d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        return RatFunc._raw(_check_exp(tuple(a * k for a in self._e)), self._n**k, self._d**k)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._e == other._e and self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._e, tuple(self._n.monoms()), tuple(int(c) for c in self._n.coeffs()),
                               tuple(self._d.monoms()), tuple(int(c) for c in self._d.coeffs())))
        return self._hash

    def __bool__(self):
        return not self._n.is_zero()

    # formatting -------------------------------------------------------
    def __str__(self):
        if self._d.is_constant():
            return str(self.num * Fraction(1, int(self._d.leading_coefficient())))
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFunc":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    # substitution -----------------------------------------------------
    def specialize(self, bindings: Mapping[str, object]) -> "RatFunc":
        return specialize(self, bindings)

    def eval_at(self, point: Mapping[str, Scalar]) -> Fraction:
        return eval_at(self, point)


def _from_laurent_terms(terms: Mapping[tuple[int, ...], Fraction]) -> RatFunc:
    if not terms:
        return ZERO
    shift = tuple(min(e[i] for e in terms) for i in range(NVARS))
    den = lcm(*(Fraction(c).denominator for c in terms.values()))
    poly = {tuple(a - b for a, b in zip(e, shift)): int(Fraction(c) * den) for e, c in terms.items()}
    return RatFunc._normalize(shift, _CTX.from_dict(poly), _CTX.from_dict({_ZERO_EXP: den}))


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, int):
        if x == 0:
            return ZERO
        if x == 1:
            return ONE
        return RatFunc._raw(_ZERO_EXP, _CTX.from_dict({_ZERO_EXP: x}), _P_ONE)
    if isinstance(x, (Fraction, LaurentPoly)) or isinstance(x, Rational):
        return RatFunc(x)
    return NotImplemented


ZERO = RatFunc._raw(_ZERO_EXP, _P_ZERO, _P_ONE)
ONE = RatFunc._raw(_ZERO_EXP, _P_ONE, _P_ONE)


def var(name: str, power: int = 1) -> RatFunc:
    return RatFunc.var(name, power)


# ---------------------------------------------------------------------------
# Module-level operations


def rf_arith(a, b, op: str) -> RatFunc:
    """Apply ``op`` (add, sub, mul or div) to two rational functions."""
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def rf_eq(a, b, prefilter: bool = False, rng: random.Random | None = None) -> bool:
    """Cross-multiplication equality test.

    With ``prefilter`` the two sides are first compared at three random
    rational points, which rejects most unequal pairs without polynomial
    multiplication.
    """
    a, b = _coerce(a), _coerce(b)
    if prefilter:
        rng = rng or random.Random(0)
        names = sorted(a.variables() | b.variables())
        for _ in range(3):
            point = {n: Fraction(rng.randint(2, 97), rng.randint(1, 97)) for n in names}
            try:
                if eval_at(a, point) != eval_at(b, point):
                    return False
            except EvalPole:
                continue
    m = tuple(min(x, y) for x, y in zip(a._e, b._e))
    lhs = a._n * _mono(tuple(x - y for x, y in zip(a._e, m))) * b._d
    rhs = b._n * _mono(tuple(x - y for x, y in zip(b._e, m))) * a._d
    return lhs == rhs


def _binding_value(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc(value)


def _subst_poly(poly, mono_maps, general) -> RatFunc:
    """Substitute into an fmpz_mpoly; returns a RatFunc."""
    if general is None:
        out: dict[tuple[int, ...], Fraction] = {}
        for m, c in zip(poly.monoms(), poly.coeffs()):
            exp = [int(k) for k in m]
            coeff = Fraction(int(c))
            for i, (bc, bexp) in mono_maps.items():
                k = exp[i]
                if k:
                    exp[i] = 0
                    coeff *= bc**k
                    for j, be in enumerate(bexp):
                        exp[j] += k * be
            key = tuple(exp)
            out[key] = out.get(key, 0) + coeff
        return _from_laurent_terms({e: c for e, c in out.items() if c})
    total = ZERO
    cache: dict[tuple[int, int], RatFunc] = {}
    for m, c in zip(poly.monoms(), poly.coeffs()):
        rest = [int(k) for k in m]
        term = RatFunc(int(c))
        for i, val in general.items():
            k = rest[i]
            if k:
                rest[i] = 0
                if (i, k) not in cache:
                    cache[(i, k)] = val**k
                term = term * cache[(i, k)]
        total = total + term * RatFunc._raw(tuple(rest), _P_ONE, _P_ONE)
    return total


def specialize(f, bindings: Mapping[str, object]) -> RatFunc:
    """Substitute variables by Laurent polynomials (or rational functions)."""
    f = _coerce(f)
    values = {_var_index(k): _binding_value(v) for k, v in bindings.items()}
    mono_maps = {}
    for i, val in values.items():
        mp = val.monomial_part()
        if mp is None:
            break
        mono_maps[i] = mp
    general = None if len(mono_maps) == len(values) else values
    den = _subst_poly(f._d, mono_maps, general)
    if den.is_zero():
        raise SpecializationPole(f"denominator of {f} vanishes under {dict(bindings)}")
    shift = RatFunc._raw(tuple(0 if i in values else e for i, e in enumerate(f._e)), _P_ONE, _P_ONE)
    for i, e in enumerate(f._e):
        if e and i in values:
            if e < 0 and values[i].is_zero():
                raise SpecializationPole(f"negative power of {VARIABLES[i]} bound to 0")
            shift = shift * values[i] ** e
    return shift * _subst_poly(f._n, mono_maps, general) / den


def eval_at(f, point: Mapping[str, Scalar]) -> Fraction:
    """Exact value of ``f`` at a rational point."""
    f = _coerce(f)
    vals = [None] * NVARS
    for k, v in point.items():
        vals[_var_index(k)] = flint.fmpq(Fraction(v).numerator, Fraction(v).denominator)
    missing = [VARIABLES[i] for i in range(NVARS) if vals[i] is None and VARIABLES[i] in f.variables()]
    if missing:
        raise ValueError(f"eval_at: no value for {missing}")
    vals = [v if v is not None else flint.fmpq(0) for v in vals]
    d = _QCTX.from_dict(f._d.to_dict())(*vals)
    if d == 0:
        raise EvalPole(f"denominator of {f} vanishes at {dict(point)}")
    n = _QCTX.from_dict(f._n.to_dict())(*vals)
    value = Fraction(int(n.p), int(n.q)) / Fraction(int(d.p), int(d.q))
    for i, e in enumerate(f._e):
        if e:
            base = Fraction(int(vals[i].p), int(vals[i].q))
            if base == 0 and e < 0:
                raise EvalPole(f"negative power of {VARIABLES[i]} at 0")
            value *= base**e
    return value


# ---------------------------------------------------------------------------
# Quantum numbers in s


def curly(d: int) -> RatFunc:
    """{d} = s^d - s^-d."""
    return RatFunc.var("s", d) - RatFunc.var("s", -d)


def curly_plus(d: int) -> RatFunc:
    """{d}^+ = s^d + s^-d."""
    return RatFunc.var("s", d) + RatFunc.var("s", -d)


def bracket(d: int) -> RatFunc:
    """[d] = {d}/{1}."""
    return curly(d) / curly(1)
