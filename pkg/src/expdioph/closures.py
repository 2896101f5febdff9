"""Finite brute-force closures for c = 13 and the even-discriminant table."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from mpmath import mp, mpf, sqrt

from .bounds import REFERENCE_CONSTANTS
from .numeric import aZ_bZ, ext_mult_order, integer_nth_root

__all__ = [
    "ECVALUES_ROWS",
    "BESI_EXPECTED",
    "GapRow",
    "besi_search",
    "delta_even_table",
    "ecvalues_expected",
    "lemma_vii_search",
    "sqrt13_gap_check",
    "y0_eq4_search",
]

C = 13

# Z mod 6 -> (e13(a(Z)), e13(b(Z)))
ECVALUES_ROWS: dict[int, tuple[int, int]] = {
    1: (3, 6),
    3: (3, 6),
    2: (2, 1),
    0: (6, 3),
    4: (6, 3),
    5: (1, 2),
}

BESI_EXPECTED = frozenset({(16, 3, 1, 5), (14, 3, 2, 3), (499, 12, 2, 5)})


def ecvalues_expected(Z: int) -> tuple[int, int]:
    return ECVALUES_ROWS[Z % 6]


def delta_even_table(Z_max: int) -> dict[int, tuple[int, int]]:
    """Z -> (e13(a(Z)), e13(b(Z))) for Z = 1..Z_max, computed directly."""
    if Z_max < 6:
        raise ValueError("Z_max must be >= 6 to cover every residue class")
    table = {}
    for Z in range(1, Z_max + 1):
        a, b = aZ_bZ(Z)
        table[Z] = (ext_mult_order(C, a).order, ext_mult_order(C, b).order)
    return table


def _root_candidates(value: int, Y: int) -> list[int]:
    b, _ = integer_nth_root(value, Y)
    return [b, b + 1]


def lemma_vii_search(
    Z_max: int = 90, *, prune: bool = False, y_cap: int | None = None
) -> list[tuple[int, int, int, int]]:
    """(b, Y, z, Z) with 13^Z - 13^z = b^Y - b, Y = 4 (mod 6), 10 <= Y <= K3 + 1.

    b^Y - b grows with b, so for each (z, Z, Y) only the integer Y-th root of
    the left side and its successor can work. Y stops once 2^Y - 2 exceeds
    the left side.
    """
    if Z_max < 2:
        raise ValueError("Z_max must be >= 2")
    if y_cap is None:
        y_cap = max(v for k, v in REFERENCE_CONSTANTS.items() if k.startswith("K3")) + 1
    out = []
    for z in range(1, Z_max):
        cz = C**z
        for Z in range(z + 1, Z_max):
            if prune and Z >= 7 and 47 * Z >= 200 * z:
                continue
            R = C**Z - cz
            Y = 10
            while Y <= y_cap and 2**Y - 2 <= R:
                for b in _root_candidates(R, Y):
                    if b >= 2 and b**Y - b == R and cz > b and b % C:
                        out.append((b, Y, z, Z))
                Y += 6
    return sorted(out)


def y0_eq4_search(c: int) -> list[tuple[int, int]]:
    """(b, z) with c^z < 16 and c^(3z) - c^z = b^4 - b."""
    if c < 7:
        raise ValueError("c must be >= 7")
    out = []
    z = 1
    while c**z < 16:
        R = c ** (3 * z) - c**z
        for b in _root_candidates(R, 4):
            if b >= 2 and b**4 - b == R:
                out.append((b, z))
        z += 1
    return out


def besi_search(s_max: int, k_max: int, n_max: int) -> list[tuple[int, int, int, int]]:
    """(S, T, k, n) with S^2 - 13^k = T^n, S <= s_max, k <= k_max, 3 <= n <= n_max."""
    if min(s_max, k_max, n_max) < 1:
        raise ValueError("search box must be positive")
    out = []
    s2 = s_max * s_max
    for k in range(1, k_max + 1):
        ck = C**k
        for n in range(3, n_max + 1):
            T = 2
            while T**n + ck <= s2:
                S2 = T**n + ck
                S = isqrt(S2)
                if S * S == S2 and gcd(S, C) == 1:
                    out.append((S, T, k, n))
                T += 1
    return sorted(out)


@dataclass(frozen=True)
class GapRow:
    k: int
    gap: mpf
    threshold: mpf
    passed: bool


def sqrt13_gap_check(k_min: int = 3, k_max: int = 60, eps: float | str = "0.53") -> list[GapRow]:
    """|sqrt(13) - P/13^k| against 13^(-(1+eps) k), P the nearest integer to 13^k sqrt(13)."""
    if k_min < 3:
        raise ValueError("k_min must be >= 3")
    rows = []
    with mp.workdps(30 + 3 * k_max):
        s13 = sqrt(C)
        expo = 1 + mpf(eps)
        for k in range(k_min, k_max + 1):
            N = C ** (2 * k + 1)
            r = isqrt(N)
            # nearest integer: r + 1 iff N > (r + 1/2)^2
            P = r + 1 if 4 * N > (2 * r + 1) ** 2 else r
            ck = C**k
            gap = mpf(abs(N - P * P)) / (ck * (ck * s13 + P))
            threshold = mpf(C) ** (-expo * k)
            rows.append(GapRow(k, gap, threshold, bool(gap > threshold)))
    return rows
