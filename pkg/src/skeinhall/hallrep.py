"""The positive elliptic Hall algebra acting on symmetric functions.

Operators are lazy expression trees whose columns (images of Macdonald
basis vectors) are computed on demand and memoized.  Generators are built
from multiplication by p_1 and the diagonal operators by the commutator
relation along empty lattice triangles, and along non-primitive rays by
inverting the exponential generating series of the theta elements.
"""
from __future__ import annotations

import json
import os
import threading
from fractions import Fraction
from math import factorial, gcd, prod
from collections import Counter
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .coeffring import ONE, ZERO, RatFunc, specialize, var
from .errors import DecompositionNotFound, NonpositiveM, NotCoprime, ZeroIndex
from .partitions import Partition, cell_stats, partition, ribbons_add
from .symfunc import SymFunc, _check_degree, ev_E, to_basis

CACHE_VERSION = "pick-v2"

_q, _t, _u = var("q"), var("t"), var("u")
Vec = dict  # Partition -> RatFunc, coordinates in the Macdonald basis


def alpha(i: int) -> RatFunc:
    return (1 - _q**i) * (1 - _t ** (-i)) * (1 - _q ** (-i) * _t**i) / i


def theta_constant(i: int) -> RatFunc:
    """alpha_i at (q^-1, t^-1), which equals -alpha_i.

    This is the constant compatible with the diagonal eigenvalues used here:
    with it the horizontal generators v_{k,0} act as multiplication by p_k.
    The literal alpha_i gives v_{2,0} = p_2 + c p_1^2 with c != 0 off q = t.
    """
    return -alpha(i)


def _vec_add(out: dict, v: Mapping, c: RatFunc | None = None) -> None:
    for lam, a in v.items():
        term = a if c is None else c * a
        if lam in out:
            val = out[lam] + term
            if val.is_zero():
                del out[lam]
            else:
                out[lam] = val
        elif not term.is_zero():
            out[lam] = term


# ---------------------------------------------------------------------------
# Operator expression trees


class HallOperator:
    """Base class: subclasses implement _compute_column."""

    horizontal = 0

    def __init__(self):
        self._columns: dict[Partition, Vec] = {}
        self._lock = threading.Lock()

    def column(self, mu: Partition) -> Vec:
        col = self._columns.get(mu)
        if col is None:
            col = self._compute_column(mu)
            with self._lock:
                self._columns.setdefault(mu, col)
        return col

    def _compute_column(self, mu: Partition) -> Vec:
        raise NotImplementedError

    def apply_vec(self, v: Mapping[Partition, RatFunc]) -> Vec:
        out: Vec = {}
        for mu, c in v.items():
            _vec_add(out, self.column(mu), c)
        return out

    # combinators
    def __add__(self, other: "HallOperator") -> "HallOperator":
        return Sum([(ONE, self), (ONE, other)])

    def __sub__(self, other: "HallOperator") -> "HallOperator":
        return Sum([(ONE, self), (-ONE, other)])

    def scale(self, c) -> "HallOperator":
        return Sum([(RatFunc(c), self)])

    def __matmul__(self, other: "HallOperator") -> "HallOperator":
        return Compose(self, other)


class MulP1(HallOperator):
    """Multiplication by p_1 (Pieri rule in the Macdonald basis)."""

    horizontal = 1

    @staticmethod
    def _b(lam: Partition, cell: tuple[int, int]) -> RatFunc:
        i, j = cell
        if not (i < len(lam) and j < lam[i]):
            return ONE
        st = cell_stats(lam, cell)
        return (1 - _q**st.arm * _t ** (st.leg + 1)) / (1 - _q ** (st.arm + 1) * _t**st.leg)

    def _compute_column(self, mu: Partition) -> Vec:
        out: Vec = {}
        for lam, strip in ribbons_add(mu, 1):
            ((_, j),) = strip.cells
            phi = (1 - _q) / (1 - _t)
            for r in range(len(lam)):
                if lam[r] > j:
                    phi = phi * self._b(lam, (r, j)) / self._b(mu, (r, j))
            out[lam] = phi
        return out


def diag_eigenvalue(k: int, lam: Partition) -> RatFunc:
    if k == 0:
        raise ZeroIndex("diagonal operator needs k != 0")
    total = ZERO
    if k > 0:
        for i, part in enumerate(lam):
            total = total + (_q ** (k * part) - 1) * _t ** (-k * i)
        return total
    K = -k
    for i, part in enumerate(lam):
        total = total + (_q ** (-K * part) - 1) * _t ** (K * i)
    return _q**K * total


class Diag(HallOperator):
    def __init__(self, k: int):
        super().__init__()
        if k == 0:
            raise ZeroIndex("diagonal operator needs k != 0")
        self.k = k

    def _compute_column(self, mu: Partition) -> Vec:
        ev = diag_eigenvalue(self.k, mu)
        return {} if ev.is_zero() else {mu: ev}


class Sum(HallOperator):
    def __init__(self, terms: Sequence[tuple[RatFunc, HallOperator]]):
        super().__init__()
        self.terms = list(terms)
        hs = {op.horizontal for _, op in self.terms}
        self.horizontal = hs.pop() if len(hs) == 1 else None

    def _compute_column(self, mu: Partition) -> Vec:
        out: Vec = {}
        for c, op in self.terms:
            _vec_add(out, op.column(mu), c)
        return out


class Compose(HallOperator):
    """a o b (b applied first)."""

    def __init__(self, a: HallOperator, b: HallOperator):
        super().__init__()
        self.a, self.b = a, b
        self.horizontal = a.horizontal + b.horizontal

    def _compute_column(self, mu: Partition) -> Vec:
        return self.a.apply_vec(self.b.column(mu))


class Commutator(HallOperator):
    """[a, b] = ab - ba."""

    def __init__(self, a: HallOperator, b: HallOperator):
        super().__init__()
        self.a, self.b = a, b
        self.horizontal = a.horizontal + b.horizontal

    def _compute_column(self, mu: Partition) -> Vec:
        out = self.a.apply_vec(self.b.column(mu))
        _vec_add(out, self.b.apply_vec(self.a.column(mu)), -ONE)
        return out


class Identity(HallOperator):
    def _compute_column(self, mu: Partition) -> Vec:
        return {mu: ONE}


class _DiskCached(HallOperator):
    """Wrapper persisting columns of a generator to an on-disk JSON cache."""

    def __init__(self, inner: HallOperator, key: tuple[int, int], cache_dir: Path):
        super().__init__()
        self.inner = inner
        self.horizontal = inner.horizontal
        self.key = key
        self.cache_dir = cache_dir

    def _path(self, degree: int) -> Path:
        m, n = self.key
        return self.cache_dir / f"u_{m}_{n}_deg{degree}.json"

    _io_lock = threading.Lock()

    def _read(self, path: Path) -> dict:
        if not path.exists():
            return {}
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return {}
        return data.get("columns", {}) if data.get("version") == CACHE_VERSION else {}

    def _compute_column(self, mu: Partition) -> Vec:
        path = self._path(sum(mu))
        key = ",".join(map(str, mu))
        with self._io_lock:
            cols = self._read(path)
        if key in cols:
            return {tuple(t["partition"]): RatFunc.from_json(t["coeff"]) for t in cols[key]}
        col = self.inner.column(mu)
        with self._io_lock:
            cols = self._read(path)
            cols[key] = [{"partition": list(lam), "coeff": c.to_json()} for lam, c in sorted(col.items())]
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps({"version": CACHE_VERSION, "key": list(self.key), "columns": cols}))
            os.replace(tmp, path)
        return col


# ---------------------------------------------------------------------------
# Lattice decompositions


def det(x: Sequence[int], y: Sequence[int]) -> int:
    return x[0] * y[1] - x[1] * y[0]


def dvec(x: Sequence[int]) -> int:
    return gcd(abs(x[0]), abs(x[1]))


def _measure(x: Sequence[int]) -> tuple[int, int]:
    return (x[0], abs(x[1]))


def is_valid_decomposition(x, y, z) -> bool:
    if (x[0] + y[0], x[1] + y[1]) != tuple(z):
        return False
    if tuple(x) == (0, 0) or tuple(y) == (0, 0):
        return False
    if dvec(x) != 1 or x[0] < 0 or y[0] < 0:
        return False
    k = det(x, y)
    if k == 0:
        return False
    return abs(k) == dvec(x) + dvec(y) + dvec(z) - 2


def interior_points(x, y) -> int:
    """Brute-force count of interior lattice points of the triangle 0, x, x+y."""
    a, b = (0, 0), tuple(x)
    c = (x[0] + y[0], x[1] + y[1])
    xs = [a[0], b[0], c[0]]
    ys = [a[1], b[1], c[1]]
    count = 0
    area2 = det((b[0] - a[0], b[1] - a[1]), (c[0] - a[0], c[1] - a[1]))
    for px in range(min(xs), max(xs) + 1):
        for py in range(min(ys), max(ys) + 1):
            p = (px, py)
            d1 = det((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1]))
            d2 = det((c[0] - b[0], c[1] - b[1]), (p[0] - b[0], p[1] - b[1]))
            d3 = det((a[0] - c[0], a[1] - c[1]), (p[0] - c[0], p[1] - c[1]))
            if area2 > 0 and d1 > 0 and d2 > 0 and d3 > 0:
                count += 1
            elif area2 < 0 and d1 < 0 and d2 < 0 and d3 < 0:
                count += 1
    return count


def all_decompositions(z: Sequence[int]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Every valid (x, y) with both strictly smaller than z, sorted by |det| then x."""
    z1, z2 = z
    out = []
    bound = abs(z2) + z1
    for a in range(0, z1 + 1):
        for b in range(-bound, bound + 1):
            x = (a, b)
            y = (z1 - a, z2 - b)
            if not is_valid_decomposition(x, y, z):
                continue
            if not (_measure(x) < _measure(z) and _measure(y) < _measure(z)):
                continue
            out.append((x, y))
    out.sort(key=lambda xy: (abs(det(*xy)), xy[0]))
    return out


def pick_decomposition(z: Sequence[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    z = tuple(z)
    if z[0] < 1 or z == (1, 0):
        raise ValueError(f"no decomposition needed for {z}")
    m, n = z
    if m == 1:
        sg = 1 if n > 0 else -1
        return (0, sg), (1, n - sg)
    k = dvec(z)
    if k >= 2 and m == k:
        n1 = n // k
        return (1, n1 + 1), (k - 1, (k - 1) * n1 - 1)
    found = all_decompositions(z)
    if not found:
        raise DecompositionNotFound(f"no empty-triangle decomposition of {z}")
    return found[0]


def epsilon(x, y) -> int:
    k = det(x, y)
    return (k > 0) - (k < 0)


# ---------------------------------------------------------------------------
# Generators


class HallAlgebra:
    """Memoized generator operators; one instance shares all caches."""

    def __init__(self, cache_dir: str | os.PathLike | None = None):
        self._mul_p1 = MulP1()
        self._u: dict[tuple, HallOperator] = {}
        self._v: dict[tuple, HallOperator] = {}
        self._lock = threading.RLock()
        self.cache_dir = Path(cache_dir) if cache_dir else None

    def mul_p1(self) -> HallOperator:
        return self._mul_p1

    def diag(self, k: int) -> HallOperator:
        return self.v(0, k)

    def theta(self, z: Sequence[int], decomposition=None) -> HallOperator:
        """theta_z for z in the right half plane.

        For a primitive z this is alpha_1 u_z.  Otherwise it is computed from
        the commutator of a decomposition of z.
        """
        z = tuple(z)
        if dvec(z) == 1 and decomposition is None:
            return self.u(*z).scale(theta_constant(1))
        if z[0] == 0:
            return self.theta_series(z)
        x, y = decomposition or pick_decomposition(z)
        if not is_valid_decomposition(x, y, z):
            raise ValueError(f"invalid decomposition {x} + {y} of {z}")
        return Commutator(self.u(*y), self.u(*x)).scale(theta_constant(1) * epsilon(x, y))

    def theta_series(self, z: Sequence[int]) -> HallOperator:
        """theta_z read off from exp(sum_r alpha_r u_{r x0} w^r), x0 primitive on the ray of z."""
        d = dvec(z)
        x0 = (z[0] // d, z[1] // d)
        # 1 + sum theta_i w^i = exp(sum alpha_r u_{r x0} w^r)
        terms = []
        for parts in _partitions_exact(d):
            counts = Counter(parts)
            coeff = RatFunc(Fraction(1, prod(factorial(c) for c in counts.values())))
            ops = []
            for r, c in counts.items():
                coeff = coeff * theta_constant(r) ** c
                ops.extend([self.u(r * x0[0], r * x0[1])] * c)
            terms.append((coeff, _compose_all(ops)))
        return Sum(terms)

    def u(self, m: int, n: int) -> HallOperator:
        key = (m, n)
        op = self._u.get(key)
        if op is not None:
            return op
        with self._lock:
            op = self._u.get(key)
            if op is None:
                op = self._build_u(m, n)
                if self.cache_dir is not None:
                    op = _DiskCached(op, key, self.cache_dir)
                self._u[key] = op
        return op

    def v(self, m: int, n: int) -> HallOperator:
        key = (m, n)
        op = self._v.get(key)
        if op is not None:
            return op
        with self._lock:
            op = self._v.get(key)
            if op is None:
                if key == (1, 0):
                    op = self._mul_p1
                elif m == 0:
                    op = Diag(n)
                else:
                    op = self.u(m, n).scale(_q ** dvec(key) - 1)
                self._v[key] = op
        return op

    def _build_u(self, m: int, n: int) -> HallOperator:
        if (m, n) == (0, 0):
            raise ZeroIndex("u_(0,0) is not a generator")
        if m < 0:
            raise ValueError("only the half m >= 0 acts on symmetric functions here")
        if m == 0:
            return Diag(n).scale(1 / (_q ** abs(n) - 1))
        if (m, n) == (1, 0):
            return self._mul_p1.scale(1 / (_q - 1))
        d = dvec((m, n))
        if d == 1:
            x, y = pick_decomposition((m, n))
            return Commutator(self.u(*y), self.u(*x)).scale(epsilon(x, y))
        x0 = (m // d, n // d)
        thetas = {i: self.theta((i * x0[0], i * x0[1])) for i in range(1, d + 1)}
        # coefficient of w^d in log(1 + sum theta_i w^i), the theta_i commute
        terms = []
        for parts in _partitions_exact(d):
            k = len(parts)
            counts = Counter(parts)
            n_orders = factorial(k) // prod(factorial(c) for c in counts.values())
            coeff = RatFunc(Fraction((-1) ** (k + 1) * n_orders, k))
            terms.append((coeff, _compose_all([thetas[i] for i in parts])))
        return Sum(terms).scale(1 / theta_constant(d))


def _partitions_exact(d: int) -> list[tuple[int, ...]]:
    from .partitions import partitions_of

    return list(partitions_of(d))


def _compose_all(ops: Sequence[HallOperator]) -> HallOperator:
    op = ops[-1]
    for other in reversed(ops[:-1]):
        op = Compose(other, op)
    return op


_default = HallAlgebra(os.environ.get("SKEINHALL_CACHE_DIR") or None)


def default_algebra() -> HallAlgebra:
    return _default


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _default
    _default = HallAlgebra(path)


def u_op(m: int, n: int, renorm: bool = False, algebra: HallAlgebra | None = None) -> HallOperator:
    alg = algebra or _default
    return alg.v(m, n) if renorm else alg.u(m, n)


def diag_action(k: int, f: SymFunc) -> SymFunc:
    return apply_op(Diag(k), f)


def apply_op(op: HallOperator, f: SymFunc) -> SymFunc:
    vec = to_basis(f, "macdonald").coeffs
    return SymFunc("macdonald", op.apply_vec(vec))


# ---------------------------------------------------------------------------
# J^E pipeline


def _validate(m: int, n: int) -> None:
    if m <= 0:
        raise NonpositiveM(f"m must be positive, got {m}")
    if gcd(m, abs(n)) != 1:
        raise NotCoprime(f"gcd({m},{n}) != 1")


def cable_step_E(m: int, n: int, f: SymFunc, algebra: HallAlgebra | None = None) -> SymFunc:
    """Gamma^E_{m,n}: p_k -> v_{km,kn}, applied to 1."""
    _validate(m, n)
    _check_degree(m * f.degree())
    alg = algebra or _default
    out: Vec = {}
    for rho, c in to_basis(f, "p").coeffs.items():
        state: Vec = {(): ONE}
        for k in reversed(rho):
            state = alg.v(k * m, k * n).apply_vec(state)
        _vec_add(out, state, c)
    return SymFunc("macdonald", out)


def jE(pairs: Sequence[Sequence[int]], lam: Iterable[int], algebra: HallAlgebra | None = None) -> RatFunc:
    lam = partition(lam)
    state = SymFunc.basis_element("macdonald", lam)
    for m, n in reversed(list(pairs)):
        state = cable_step_E(m, n, state, algebra)
    return ev_E(state)


def spec_to_skein(F: RatFunc) -> RatFunc:
    s = var("s")
    return specialize(F, {"q": s**-2, "t": s**-2, "u": var("v") ** 2})


def spec_to_N(F: RatFunc, N: int) -> RatFunc:
    if N < 1:
        raise ValueError("N must be positive")
    return specialize(F, {"u": _t**N})


# ---------------------------------------------------------------------------
# Verification helpers


def input_partitions(max_output_degree: int, horizontal: int) -> list[Partition]:
    from .partitions import partitions_of

    return [mu for k in range(0, max_output_degree - horizontal + 1) for mu in partitions_of(k)]


def operators_agree(a: HallOperator, b: HallOperator, max_output_degree: int) -> bool:
    """Compare two graded operators on every Macdonald input whose image has degree <= the bound."""
    h = a.horizontal if a.horizontal is not None else b.horizontal
    for mu in input_partitions(max_output_degree, h):
        if a.column(mu) != b.column(mu):
            return False
    return True


def ray_commutes_holds(x0: Sequence[int], max_k: int = 3, max_degree: int = 6,
                    algebra: HallAlgebra | None = None) -> bool:
    alg = algebra or _default
    ops = [alg.u(k * x0[0], k * x0[1]) for k in range(1, max_k + 1)]
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            c = Commutator(ops[i], ops[j])
            for mu in input_partitions(max_degree, c.horizontal):
                if c.column(mu):
                    return False
    return True


def theta_relation_holds(x: Sequence[int], y: Sequence[int], max_degree: int = 6,
                    algebra: HallAlgebra | None = None) -> bool:
    """[u_y, u_x] = eps(x, y) theta_{x+y} / alpha_1 with theta from the exponential series."""
    alg = algebra or _default
    x, y = tuple(x), tuple(y)
    z = (x[0] + y[0], x[1] + y[1])
    if not is_valid_decomposition(x, y, z):
        raise ValueError(f"{x}, {y} is not an empty-triangle pair")
    lhs = Commutator(alg.u(*y), alg.u(*x))
    rhs = alg.theta_series(z).scale(epsilon(x, y) / theta_constant(1))
    return operators_agree(lhs, rhs, max_degree)


def theta_independent(z: Sequence[int], max_degree: int = 6, algebra: HallAlgebra | None = None) -> bool:
    """theta_z computed from two different decompositions agree."""
    alg = algebra or _default
    decs = all_decompositions(z)
    if len(decs) < 2:
        raise ValueError(f"{z} has fewer than two decompositions")
    a = alg.theta(z, decs[0])
    b = alg.theta(z, decs[1])
    return operators_agree(a, b, max_degree)


def bridge_holds(m: int, n: int, lam: Iterable[int], algebra: HallAlgebra | None = None) -> bool:
    """Twisted skein P_{m,n} on s_lam equals v^n s^(d-m) v_{m,n} at q = t = s^-2."""
    from .skeinmod import SkeinElement, act_P

    alg = algebra or _default
    lam = partition(lam)
    s_, v_ = var("s"), var("v")
    skein = act_P((m, n), SkeinElement.basis(lam), twisted=True).to_symfunc()
    image = apply_op(alg.v(m, n), SymFunc.basis_element("s", lam))
    scale = v_**n * s_ ** (dvec((m, n)) - m)
    # at q = t the Macdonald basis is the Schur basis
    spec = {mu: specialize(c, {"q": s_**-2, "t": s_**-2}) * scale for mu, c in image.coeffs.items()}
    return SymFunc("s", spec) == skein
