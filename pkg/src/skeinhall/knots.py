"""Newton-pair sequences and the comparison driver for the two cabling pipelines."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .coeffring import RatFunc, VARIABLES, var
from .errors import NonpositiveM, NotAMonomialRatio, NotCoprime
from .hallrep import jE, spec_to_skein
from .partitions import Partition, partition
from .skeinmod import jH


@dataclass(frozen=True)
class NewtonPairs:
    pairs: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def to_json(self) -> list:
        return [list(p) for p in self.pairs]


def validate_pairs(pairs: Iterable[Sequence[int]]) -> NewtonPairs:
    out = []
    for pair in pairs:
        m, n = (int(c) for c in pair)
        if m <= 0:
            raise NonpositiveM(f"m must be positive in ({m},{n})")
        if gcd(m, abs(n)) != 1:
            raise NotCoprime(f"({m},{n}) is not a coprime pair")
        out.append((m, n))
    return NewtonPairs(tuple(out))


def parse_pairs(text: str) -> NewtonPairs:
    """Parse "m,n;m,n;..." (empty string gives no pairs)."""
    text = text.strip()
    if not text:
        return NewtonPairs(())
    pairs = []
    for item in text.split(";"):
        parts = [p.strip() for p in item.split(",")]
        if len(parts) != 2:
            raise ValueError(f"bad pair {item!r}; expected m,n")
        pairs.append((int(parts[0]), int(parts[1])))
    return validate_pairs(pairs)


def monomial_ratio(ratio: RatFunc) -> tuple[int, int, int]:
    """Return (sign, a, b) when ratio = sign * v^a * s^b, else raise."""
    mp = ratio.monomial_part()
    if mp is None:
        raise NotAMonomialRatio(f"ratio is not a monomial: {ratio}")
    c, exp = mp
    others = [VARIABLES[i] for i, e in enumerate(exp) if e and VARIABLES[i] not in ("s", "v")]
    if c not in (1, -1) or others:
        raise NotAMonomialRatio(f"ratio is not +-v^a s^b: {ratio}")
    return int(c), exp[VARIABLES.index("v")], exp[VARIABLES.index("s")]


@dataclass
class Comparison:
    pairs: NewtonPairs
    lam: Partition
    jE: RatFunc
    jH: RatFunc
    specialized: RatFunc
    sign: int
    monomial: tuple[int, int]
    equal: bool

    def to_json(self) -> dict:
        return {
            "pairs": self.pairs.to_json(),
            "lambda": list(self.lam),
            "equal": self.equal,
            "sign": self.sign,
            "monomial": list(self.monomial),
            "jE": self.jE.to_json(),
            "jH": self.jH.to_json(),
        }


def compare_connection(pairs: Iterable[Sequence[int]], lam: Iterable[int]) -> Comparison:
    """Specialize J^E to the skein variables and divide by J^H."""
    pairs = validate_pairs(pairs)
    lam = partition(lam)
    e = jE(pairs.pairs, lam)
    h = jH(pairs.pairs, lam)
    spec = spec_to_skein(e)
    sign, a, b = monomial_ratio(spec / h)
    return Comparison(pairs, lam, e, h, spec, sign, (a, b), True)


def trefoil_reference() -> RatFunc:
    """Unreduced Homflypt of the right-handed trefoil, v^-1 P+ - v P- = z P0 convention."""
    s, v = var("s"), var("v")
    z = s - 1 / s
    return (1 / v - v) / z * (2 * v**2 - v**4 + v**2 * z**2)
