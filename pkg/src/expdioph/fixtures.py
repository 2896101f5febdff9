"""Known equations with two or more solutions, as regression data."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .engine import (
    EquationTriple,
    admissible_c1,
    count_solutions,
    enumerate_pillai,
    enumerate_solutions,
    pair_analysis,
)
from .errors import DegeneratePairError

__all__ = [
    "COUNT_CLAIMS",
    "PILLAI_EXCEPTIONAL",
    "PILLAI_IDENTITIES",
    "UNIT_EXCEPTIONAL",
    "UNIT_IDENTITIES",
    "FixtureCheck",
    "family_identities",
    "pair_invariant_suite",
    "verify_exceptional_lists",
]

# a^x + b^y = c^z as (a, x, b, y, c, z). A base of 1 is allowed here only.
UNIT_IDENTITIES: tuple[tuple[int, int, int, int, int, int], ...] = (
    (3, 1, 5, 1, 2, 3), (3, 3, 5, 1, 2, 5), (3, 1, 5, 3, 2, 7),
    (3, 1, 13, 1, 2, 4), (3, 5, 13, 1, 2, 8),
    (1, 1, 2, 1, 3, 1), (1, 1, 2, 3, 3, 2),
    (2, 2, 5, 1, 3, 2), (2, 1, 5, 2, 3, 3),
    (2, 1, 7, 1, 3, 2), (2, 5, 7, 2, 3, 4),
    (2, 3, 3, 1, 11, 1), (2, 1, 3, 2, 11, 1),
    (3, 1, 10, 1, 13, 1), (3, 7, 10, 1, 13, 3),
    (2, 5, 3, 1, 35, 1), (2, 3, 3, 3, 35, 1),
    (2, 1, 89, 1, 91, 1), (2, 13, 89, 1, 91, 2),
    (2, 7, 5, 1, 133, 1), (2, 3, 5, 3, 133, 1),
    (2, 8, 3, 1, 259, 1), (2, 4, 3, 5, 259, 1),
    (3, 7, 13, 1, 2200, 1), (3, 1, 13, 3, 2200, 1),
    (2, 13, 91, 1, 8283, 1), (2, 1, 91, 2, 8283, 1),
)

# a^x - b^y = c as (a, x, b, y, c).
PILLAI_IDENTITIES: tuple[tuple[int, int, int, int, int], ...] = (
    (2, 3, 3, 1, 5), (2, 5, 3, 3, 5),
    (2, 4, 3, 1, 13), (2, 8, 3, 5, 13),
    (2, 3, 5, 1, 3), (2, 7, 5, 3, 3),
    (3, 1, 2, 1, 1), (3, 2, 2, 3, 1),
    (13, 1, 3, 1, 10), (13, 3, 3, 7, 10),
    (91, 1, 2, 1, 89), (91, 2, 2, 13, 89),
    (6, 1, 2, 1, 4), (6, 2, 2, 5, 4),
    (6, 4, 3, 4, 1215), (6, 5, 3, 8, 1215),
    (15, 1, 6, 1, 9), (15, 2, 6, 3, 9),
    (280, 1, 5, 1, 275), (280, 2, 5, 7, 275),
    (4930, 1, 30, 1, 4900), (4930, 2, 30, 5, 4900),
)

# Triples conjectured to be the only ones with two or more solutions.
UNIT_EXCEPTIONAL: tuple[tuple[int, int, int], ...] = (
    (3, 5, 2), (3, 13, 2), (2, 5, 3), (2, 7, 3),
    (2, 3, 11), (3, 10, 13), (2, 3, 35), (2, 89, 91),
    (2, 5, 133), (2, 3, 259), (3, 13, 2200), (2, 91, 8283),
)
PILLAI_EXCEPTIONAL: tuple[tuple[int, int, int], ...] = (
    (2, 3, 5), (2, 3, 13), (2, 5, 3), (3, 2, 1),
    (13, 3, 10), (91, 2, 89), (6, 2, 4), (6, 3, 1215),
    (15, 6, 9), (280, 5, 275), (4930, 30, 4900),
)

# (a, b, c) -> exact number of solutions with z <= 20
COUNT_CLAIMS: dict[tuple[int, int, int], int] = {
    (3, 10, 13): 2,
    (3, 5, 2): 3,
    (2, 7, 3): 2,
    (2, 5, 3): 2,
}

FAMILY_R = range(2, 65)


def family_identities(r: int) -> tuple[tuple[int, int, int, int, int, int], ...]:
    """2 + (2^r - 1) = 2^r + 1 and 2^(r+2) + (2^r - 1)^2 = (2^r + 1)^2."""
    b, c = 2**r - 1, 2**r + 1
    return ((2, 1, b, 1, c, 1), (2, r + 2, b, 2, c, 2))


@dataclass(frozen=True)
class FixtureCheck:
    name: str
    passed: bool
    detail: str = ""


def _unit_check(row: tuple[int, ...]) -> FixtureCheck:
    a, x, b, y, c, z = row
    lhs, rhs = a**x + b**y, c**z
    return FixtureCheck(f"{a}^{x} + {b}^{y} = {c}^{z}", lhs == rhs, f"{lhs} vs {rhs}")


def verify_exceptional_lists(z_max: int = 20) -> list[FixtureCheck]:
    """Every identity by exact arithmetic, plus engine counts on the known triples."""
    checks = [_unit_check(row) for row in UNIT_IDENTITIES]
    for r in FAMILY_R:
        checks.extend(_unit_check(row) for row in family_identities(r))
    for a, x, b, y, c in PILLAI_IDENTITIES:
        diff = a**x - b**y
        checks.append(FixtureCheck(f"{a}^{x} - {b}^{y} = {c}", diff == c, f"{diff}"))
    for (a, b, c), expected in COUNT_CLAIMS.items():
        n = count_solutions(EquationTriple(a, b, c), z_max)
        checks.append(FixtureCheck(f"N({a},{b},{c}) = {expected}", n == expected, f"found {n}"))
    for a, b, c in UNIT_EXCEPTIONAL:
        n = count_solutions(EquationTriple(a, b, c), 12)
        checks.append(FixtureCheck(f"N({a},{b},{c}) >= 2", n >= 2, f"found {n}"))
    for a, b, c in PILLAI_EXCEPTIONAL:
        n = len(enumerate_pillai(a, b, c, 20))
        checks.append(FixtureCheck(f"Pillai({a},{b},{c}) >= 2", n >= 2, f"found {n}"))
    return checks


def pair_invariant_suite(z_max: int = 12, family_r: range = range(2, 9)) -> list[FixtureCheck]:
    """Divisibility claims on every solution pair of every known triple, for each admissible c1."""
    triples = list(UNIT_EXCEPTIONAL) + [(2, 2**r - 1, 2**r + 1) for r in family_r]
    checks = []
    for a, b, c in triples:
        t = EquationTriple(a, b, c)
        sols = enumerate_solutions(t, z_max)
        for c1 in admissible_c1(t):
            for s1, s2 in combinations(sols, 2):
                try:
                    pa = pair_analysis(t, s1, s2, c1)
                except DegeneratePairError:
                    continue
                label = f"({a},{b},{c}) c1={c1} {s1.as_tuple()}~{s2.as_tuple()}"
                for name, ok in pa.checks.items():
                    checks.append(FixtureCheck(f"{label}: {name}", ok, f"delta={pa.delta}, E1={pa.e}"))
    return checks
