"""Bounded enumeration for a^x + b^y = c^z and a^x - b^y = c, plus pair invariants."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .errors import DegeneratePairError
from .numeric import euler_phi, exact_log, ext_mult_order, is_prime, valuation

__all__ = [
    "EquationTriple",
    "PairAnalysis",
    "ParityClass",
    "ReductionResult",
    "Solution",
    "admissible_c1",
    "count_solutions",
    "enumerate_pillai",
    "enumerate_solutions",
    "map_to_reduced",
    "pair_analysis",
    "parity_class",
    "weak_form_reduce",
]


@dataclass(frozen=True)
class EquationTriple:
    a: int
    b: int
    c: int
    pillai: bool = False

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) <= 1:
            raise ValueError(f"bases must exceed 1: {self.a, self.b, self.c}")
        if gcd(self.a, self.b) != 1:
            raise ValueError(f"gcd(a, b) = {gcd(self.a, self.b)} != 1")
        if not self.pillai and (gcd(self.a, self.c) != 1 or gcd(self.b, self.c) != 1):
            raise ValueError(f"{self.a, self.b, self.c} is not pairwise coprime")


@dataclass(frozen=True, order=True)
class Solution:
    # Field order gives the canonical (z, x) sort.
    z: int
    x: int
    y: int

    @classmethod
    def of(cls, x: int, y: int, z: int) -> Solution:
        return cls(z=z, x=x, y=y)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def satisfies(self, t: EquationTriple) -> bool:
        return t.a**self.x + t.b**self.y == t.c**self.z

    def to_record(self, t: EquationTriple) -> dict[str, int]:
        return {"a": t.a, "b": t.b, "c": t.c, "x": self.x, "y": self.y, "z": self.z}


def _solutions_at(t: EquationTriple, z: int) -> list[Solution]:
    cz = t.c**z
    out = []
    x, ax = 1, t.a
    while ax < cz:
        y = exact_log(t.b, cz - ax)
        if y is not None:
            out.append(Solution.of(x, y, z))
        x += 1
        ax *= t.a
    return out


def enumerate_solutions(t: EquationTriple, z_max: int) -> list[Solution]:
    """All (x, y, z) with z <= z_max, sorted by (z, x).

    For each z every x with a^x < c^z is tried; c^z - a^x must then be an
    exact power of b. Exponent limits come from integer comparisons only.
    """
    if z_max < 1:
        raise ValueError("z_max must be >= 1")
    out: list[Solution] = []
    for z in range(1, z_max + 1):
        out.extend(_solutions_at(t, z))
    return sorted(out)


def count_solutions(t: EquationTriple, z_max: int) -> int:
    return len(enumerate_solutions(t, z_max))


def enumerate_pillai(a: int, b: int, c: int, x_max: int) -> list[tuple[int, int]]:
    """All (x, y) with x <= x_max and a^x - b^y = c."""
    if a <= 1 or b <= 1 or c < 1 or x_max < 1:
        raise ValueError(f"invalid Pillai parameters {(a, b, c, x_max)}")
    out = []
    ax = 1
    for x in range(1, x_max + 1):
        ax *= a
        y = exact_log(b, ax - c)
        if y is not None:
            out.append((x, y))
    return out


@dataclass(frozen=True)
class ReductionResult:
    A: int
    B: int
    g: int
    exponent_scale_a: int
    exponent_scale_b: int
    orders_equal: bool


def weak_form_reduce(t: EquationTriple, d: int) -> ReductionResult:
    """Replace (a, b) by powers sharing one extended order modulo d."""
    if d <= 2 or t.c % d:
        raise ValueError(f"d = {d} must be a divisor of c = {t.c} exceeding 2")
    if gcd(t.a, d) != 1 or gcd(t.b, d) != 1:
        raise ValueError(f"a, b must be coprime to d = {d}")
    ea = ext_mult_order(d, t.a).order
    eb = ext_mult_order(d, t.b).order
    g = gcd(ea, eb)
    sa, sb = ea // g, eb // g
    A, B = t.a**sa, t.b**sb
    equal = ext_mult_order(d, A).order == ext_mult_order(d, B).order
    return ReductionResult(A, B, g, sa, sb, equal)


def map_to_reduced(s: Solution, red: ReductionResult) -> Solution | None:
    """Image of a solution of the original equation, or None if not divisible."""
    if s.x % red.exponent_scale_a or s.y % red.exponent_scale_b:
        return None
    return Solution.of(s.x // red.exponent_scale_a, s.y // red.exponent_scale_b, s.z)


def admissible_c1(t: EquationTriple) -> list[int]:
    """Divisors c1 > 2 of c with gcd(c1, phi(c1)) = 1 and e_c1(a) == e_c1(b)."""
    out = []
    for c1 in range(3, t.c + 1):
        if t.c % c1 or gcd(c1, euler_phi(c1)) != 1:
            continue
        if ext_mult_order(c1, t.a).order == ext_mult_order(c1, t.b).order:
            out.append(c1)
    return out


@dataclass(frozen=True)
class PairAnalysis:
    delta: int
    e: int
    delta_prime: int
    n_prime: int | None
    d_modulus: int
    sign_a: int
    sign_b: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]


def pair_analysis(t: EquationTriple, s1: Solution, s2: Solution, c1: int) -> PairAnalysis:
    """Pair data for two solutions and the three divisibility claims on it.

    A claim that fails shows up in ``checks`` as False; callers treat that
    as a falsification event.
    """
    if s1 == s2:
        raise ValueError("need two distinct solutions")
    for s in (s1, s2):
        if not s.satisfies(t):
            raise ValueError(f"{s.as_tuple()} does not solve {t}")
    if c1 <= 2 or t.c % c1:
        raise ValueError(f"c1 = {c1} must be a divisor of c = {t.c} exceeding 2")
    if gcd(c1, euler_phi(c1)) != 1:
        raise ValueError(f"gcd(c1, phi(c1)) != 1 for c1 = {c1}")
    if s1.z > s2.z:
        s1, s2 = s2, s1
    oa, ob = ext_mult_order(c1, t.a), ext_mult_order(c1, t.b)
    if oa.order != ob.order:
        raise ValueError(f"e_c1(a) = {oa.order} != e_c1(b) = {ob.order}")
    x, y, z = s1.as_tuple()
    X, Y, _ = s2.as_tuple()
    delta = abs(x * Y - X * y)
    if delta == 0:
        raise DegeneratePairError(f"xY - Xy vanishes for {s1.as_tuple()}, {s2.as_tuple()}")
    e = oa.order
    cz, c1z = t.c**z, c1**z
    eps_a = -1 if (y + Y) % 2 else 1
    eps_b = -1 if (x + X) % 2 else 1
    quotient = delta // e
    delta_prime = gcd(quotient, c1z)
    d_mod = c1z // delta_prime
    n_prime = None
    if is_prime(c1):
        n_prime = valuation(c1, delta_prime) if delta_prime > 1 else 0
    checks = {
        "h^delta = eps (mod c^z), h=a": pow(t.a, delta, cz) == eps_a % cz,
        "h^delta = eps (mod c^z), h=b": pow(t.b, delta, cz) == eps_b % cz,
        "E1 | delta": delta % e == 0,
        "gcd(a^E1-da, b^E1-db)*delta/E1 = 0 (mod c1^z)": (
            gcd(t.a**e - oa.sign, t.b**e - ob.sign) * quotient
        ) % c1z == 0,
        "a^E1 = da (mod D)": pow(t.a, e, d_mod) == oa.sign % d_mod,
        "b^E1 = db (mod D)": pow(t.b, e, d_mod) == ob.sign % d_mod,
    }
    return PairAnalysis(delta, e, delta_prime, n_prime, d_mod, oa.sign, ob.sign, checks)


class ParityClass(str, enum.Enum):
    MIXED = "mixed-parity"
    DOUBLE_EVEN_FIRST = "double-even-first"
    DOUBLE_EVEN_SECOND = "double-even-second"
    EXCEPTION = "exception"
    NOT_APPLICABLE = "not-applicable"


def parity_class(s1: Solution, s2: Solution, c: int | None = None) -> ParityClass:
    """Classify a solution pair by exponent parities.

    The two-class statement only covers odd prime c; passing any other c
    yields NOT_APPLICABLE. Mixed pairs with even xY - Xy are split by which
    solution has both exponents even.
    """
    if s1 == s2:
        raise ValueError("need two distinct solutions")
    if c is not None and (c == 2 or not is_prime(c)):
        return ParityClass.NOT_APPLICABLE
    x, y, _ = s1.as_tuple()
    X, Y, _ = s2.as_tuple()
    if (x - X) % 2 == 0 and (y - Y) % 2 == 0:
        return ParityClass.EXCEPTION
    if (x * Y - X * y) % 2 == 0:
        if x % 2 == 0 and y % 2 == 0:
            return ParityClass.DOUBLE_EVEN_FIRST
        if X % 2 == 0 and Y % 2 == 0:
            return ParityClass.DOUBLE_EVEN_SECOND
    return ParityClass.MIXED


def consecutive_pairs(solutions: Iterable[Solution]) -> list[tuple[Solution, Solution]]:
    sols = sorted(solutions)
    return list(zip(sols, sols[1:]))
