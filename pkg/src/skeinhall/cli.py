"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 verification failure,
64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import hallrep, symfunc
from .coeffring import RatFunc, curly
from .errors import CellOutOfShape, NonpositiveM, NotCoprime, SkeinHallError
from .knots import compare_connection, parse_pairs
from .partitions import partition, partitions_of

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_VERIFY = 2
EXIT_USAGE = 64

CACHE_ENV = "SKEINHALL_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class Config:
    degree_cap: int = 12
    cache_dir: str | None = None
    output: str = "text"
    seed: int = 0


def parse_lambda(text: str):
    text = text.strip()
    if not text:
        return ()
    try:
        return partition(int(p) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# Verification suites


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, label) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(str(label))


def _rand_vec(rng: random.Random, lo: int = -3, hi: int = 3) -> tuple[int, int]:
    while True:
        v = (rng.randint(lo, hi), rng.randint(lo, hi))
        if v != (0, 0):
            return v


def suite_confluence(rng: random.Random, count: int = 100) -> SuiteResult:
    from .toralg import X, confluence_holds, jacobi_holds

    res = SuiteResult("confluence")
    for xp in (None, X):
        for _ in range(count):
            a, b, c = _rand_vec(rng), _rand_vec(rng), _rand_vec(rng)
            res.record(confluence_holds(a, b, c, xp), ("assoc", xp is not None, a, b, c))
    for _ in range(count):
        a, b, c = _rand_vec(rng), _rand_vec(rng), _rand_vec(rng)
        res.record(jacobi_holds(a, b, c), ("jacobi", a, b, c))
    return res


def suite_relations_toral(rng: random.Random, count: int = 50) -> SuiteResult:
    from .toralg import P, commutator, det, gl2_act, hall_translation_holds

    res = SuiteResult("relations-toral")
    sl2 = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1))]
    for _ in range(count):
        x, y = _rand_vec(rng), _rand_vec(rng)
        com = commutator(P(*x), P(*y))
        k = det(x, y)
        s = (x[0] + y[0], x[1] + y[1])
        expected = P(*s).scale(curly(k)) if k else P(1, 0).scale(0)
        res.record(com == expected, ("commutator", x, y))
        g = rng.choice(sl2)
        gx = (g[0][0] * x[0] + g[0][1] * x[1], g[1][0] * x[0] + g[1][1] * x[1])
        gy = (g[0][0] * y[0] + g[0][1] * y[1], g[1][0] * y[0] + g[1][1] * y[1])
        res.record(gl2_act(g, com) == commutator(P(*gx), P(*gy)), ("sl2", g, x, y))
    for k in (-4, -3, -2, -1, 1, 2, 3, 4):
        res.record(hall_translation_holds(k), ("hall-translation", k))
    return res


def skein_basis(max_size: int = 3):
    return [
        (lam, mu)
        for a in range(max_size + 1)
        for b in range(max_size + 1)
        for lam in partitions_of(a)
        for mu in partitions_of(b)
    ]


def suite_relations_skein(rng: random.Random, count: int = 50, max_size: int = 3) -> SuiteResult:
    from .skeinmod import SkeinElement, act_P
    from .toralg import det

    res = SuiteResult("relations-skein")
    basis = [SkeinElement.basis(lam, mu) for lam, mu in skein_basis(max_size)]
    for m in (-3, -2, -1, 1, 2, 3):
        for n in (-3, -2, -1, 1, 2, 3):
            ok = True
            for e in basis:
                lhs = act_P((m, 0), act_P((0, n), e)) - act_P((0, n), act_P((m, 0), e))
                if lhs != act_P((m, n), e).scale(curly(m * n)):
                    ok = False
                    break
            res.record(ok, ("full", m, n))
    for _ in range(count):
        x, y = _rand_vec(rng), _rand_vec(rng)
        s = (x[0] + y[0], x[1] + y[1])
        k = det(x, y)
        ok = True
        for e in basis:
            lhs = act_P(x, act_P(y, e)) - act_P(y, act_P(x, e))
            rhs = act_P(s, e).scale(curly(k)) if k else SkeinElement()
            if lhs != rhs:
                ok = False
                break
        res.record(ok, ("general", x, y))
    return res


THETA_RELATION_PAIRS = [
    ((0, 1), (1, 0)), ((1, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 0)),
    ((1, 2), (1, 0)), ((1, 0), (1, 2)), ((1, 1), (1, -1)), ((1, -1), (1, 1)),
    ((1, 1), (2, 1)), ((0, -1), (2, 1)),
]
THETA_RAYS = [(2, 2), (2, 0), (2, -2), (3, 3)]


def suite_relations_hall(rng: random.Random, max_degree: int = 6) -> SuiteResult:
    res = SuiteResult("relations-hall")
    for ray in ((1, 1), (1, -1)):
        res.record(hallrep.ray_commutes_holds(ray, 3, max_degree), ("ray-commutes", ray))
    for x, y in THETA_RELATION_PAIRS:
        res.record(hallrep.theta_relation_holds(x, y, max_degree), ("theta-relation", x, y))
    for z in THETA_RAYS:
        res.record(hallrep.theta_independent(z, max_degree), ("theta", z))
    return res


def suite_bridge(max_size: int = 4) -> SuiteResult:
    res = SuiteResult("bridge")
    for m in range(1, 4):
        for n in range(-3, 4):
            for k in range(max_size + 1):
                for lam in partitions_of(k):
                    res.record(hallrep.bridge_holds(m, n, lam), ("bridge", m, n, lam))
    return res


def suite_macdonald(max_degree: int = 6, max_N: int = 4) -> SuiteResult:
    from .coeffring import var

    t = var("t")
    res = SuiteResult("macdonald")
    for n in range(max_degree + 1):
        for lam in partitions_of(n):
            P = symfunc.macdonald_P(lam)
            at_qt = symfunc.SymFunc("m", {mu: c.specialize({"q": t}) for mu, c in P.coeffs.items()})
            res.record(at_qt == symfunc.to_basis(symfunc.s(*lam), "m"), ("q=t", lam))
    for n in range(5):
        for lam in partitions_of(n):
            P = symfunc.P(*lam)
            for N in range(1, max_N + 1):
                ok = hallrep.spec_to_N(symfunc.ev_E(P), N) == symfunc.principal_spec(P, N)
                res.record(ok, ("u=t^N", lam, N))
    return res


CONNECTION_PAIRS = [[(2, 1)], [(2, -1)], [(3, 1)], [(3, 2)], [(2, 3)], [(2, 3), (1, 1)], [(2, 3), (1, -1)]]
CONNECTION_LAMBDAS = [(1,), (2,), (1, 1), (2, 1)]


def suite_connection() -> SuiteResult:
    res = SuiteResult("connection")
    for pairs in CONNECTION_PAIRS:
        by_size: dict[int, set] = {}
        for lam in CONNECTION_LAMBDAS:
            try:
                c = compare_connection(pairs, lam)
            except SkeinHallError as exc:
                res.record(False, (pairs, lam, exc))
                continue
            by_size.setdefault(sum(lam), set()).add((c.sign, c.monomial))
            res.record(True, (pairs, lam))
        res.record(all(len(v) == 1 for v in by_size.values()), (pairs, "monomial depends only on |lambda|"))
    return res


SUITES: dict[str, Callable[[random.Random], SuiteResult]] = {
    "relations-toral": suite_relations_toral,
    "relations-skein": suite_relations_skein,
    "relations-hall": lambda rng: _merge("relations-hall", suite_relations_hall(rng), suite_bridge()),
    "macdonald": lambda rng: suite_macdonald(),
    "connection": lambda rng: suite_connection(),
    "confluence": suite_confluence,
}


def _merge(name: str, *results: SuiteResult) -> SuiteResult:
    out = SuiteResult(name)
    for r in results:
        out.passed += r.passed
        out.failed += r.failed
        out.failures.extend(r.failures)
    return out


# ---------------------------------------------------------------------------
# Output


def _emit_ratfunc(f: RatFunc, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(f.to_json(), sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["part", "coeff", "exponents"])
        for part, lp in (("num", f.num), ("den", f.den)):
            for c, e in lp.to_json():
                w.writerow([part, c, " ".join(map(str, e))])
    else:
        out.write(str(f) + "\n")


def _emit_suite(r: SuiteResult, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({"suite": r.name, "passed": r.passed, "failed": r.failed,
                              "failures": r.failures}, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["suite", "passed", "failed"])
        w.writerow([r.name, r.passed, r.failed])
    else:
        status = "PASS" if r.failed == 0 else "FAIL"
        out.write(f"{r.name}: {status} ({r.passed} passed, {r.failed} failed)\n")
        for f in r.failures:
            out.write(f"  failed: {f}\n")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=("text", "json", "csv"), default=None)
    common.add_argument("--degree-cap", type=int, default=None)
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--seed", type=int, default=None)

    p = _Parser(prog="skeinhall", description="Skein and elliptic Hall algebra computations.",
                parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    for name, help_ in (("jh", "colored Homflypt polynomial J^H of an iterated cable"),
                        ("je", "three-variable polynomial J^E of an iterated cable")):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("--pairs", required=True, help='Newton pairs, e.g. "2,3;1,1"')
        sp.add_argument("--lambda", dest="lam", required=True, help='partition, e.g. "2,1"')

    sp = sub.add_parser("specialize", help="specialize a J^E value read as JSON", parents=[common])
    sp.add_argument("--target", choices=("skein", "N"), required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--input", default="-", help="JSON RatFunc file, - for stdin")

    sp = sub.add_parser("qdim", help="unknot evaluation of s_lambda", parents=[common])
    sp.add_argument("--lambda", dest="lam", required=True)

    sp = sub.add_parser("verify", help="run an invariant suite", parents=[common])
    sp.add_argument("suite", choices=sorted(SUITES))
    return p


def _config(args) -> Config:
    cfg = Config()
    if args.output:
        cfg.output = args.output
    if args.degree_cap is not None:
        if args.degree_cap < 1:
            raise UsageError("--degree-cap must be at least 1")
        cfg.degree_cap = args.degree_cap
    cfg.cache_dir = args.cache_dir or os.environ.get(CACHE_ENV) or None
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        cfg = _config(args)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    symfunc.set_degree_cap(cfg.degree_cap)
    if cfg.cache_dir:
        hallrep.set_cache_dir(cfg.cache_dir)

    try:
        if args.command in ("jh", "je"):
            pairs = parse_pairs(args.pairs)
            lam = parse_lambda(args.lam)
            if args.command == "jh":
                from .skeinmod import jH

                value = jH(pairs.pairs, lam)
            else:
                value = hallrep.jE(pairs.pairs, lam)
            _emit_ratfunc(value, cfg.output, stdout)
            return EXIT_OK
        if args.command == "qdim":
            _emit_ratfunc(symfunc.ev_H_schur(parse_lambda(args.lam)), cfg.output, stdout)
            return EXIT_OK
        if args.command == "specialize":
            text = sys.stdin.read() if args.input == "-" else open(args.input).read()
            value = RatFunc.from_json(json.loads(text))
            if args.target == "skein":
                result = hallrep.spec_to_skein(value)
            else:
                if args.n is None:
                    raise UsageError("--target N needs --n")
                result = hallrep.spec_to_N(value, args.n)
            _emit_ratfunc(result, cfg.output, stdout)
            return EXIT_OK
        if args.command == "verify":
            rng = random.Random(cfg.seed)
            result = SUITES[args.suite](rng)
            _emit_suite(result, cfg.output, stdout)
            return EXIT_OK if result.failed == 0 else EXIT_VERIFY
    except UsageError as exc:
        stderr.write(f"skeinhall: error: {exc}\n")
        return EXIT_USAGE
    except (NotCoprime, NonpositiveM, CellOutOfShape) as exc:
        stderr.write(f"skeinhall: invalid input: {exc}\n")
        return EXIT_USAGE
    except (SkeinHallError, ArithmeticError, AssertionError) as exc:
        stderr.write(f"skeinhall: computation error: {exc}\n")
        return EXIT_COMPUTE
    except (ValueError, KeyError, TypeError, OSError) as exc:
        stderr.write(f"skeinhall: invalid input: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
