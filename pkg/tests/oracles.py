"""Independent reference implementations used by several test modules."""

from __future__ import annotations

from math import gcd


def naive_solutions_grid(limit: int = 50, exp_max: int = 12) -> dict[tuple[int, int, int], set]:
    """(a, b, c) -> {(x, y, z)} with every exponent <= exp_max, by table lookup of all sums."""
    out: dict[tuple[int, int, int], set] = {}
    cpow = {c: {c**z: z for z in range(1, exp_max + 1)} for c in range(2, limit + 1)}
    for a in range(2, limit + 1):
        for b in range(2, limit + 1):
            if gcd(a, b) != 1:
                continue
            sums: dict[int, list[tuple[int, int]]] = {}
            for x in range(1, exp_max + 1):
                for y in range(1, exp_max + 1):
                    sums.setdefault(a**x + b**y, []).append((x, y))
            for c in range(2, limit + 1):
                if gcd(a, c) != 1 or gcd(b, c) != 1:
                    continue
                found = set()
                for value, z in cpow[c].items():
                    for x, y in sums.get(value, ()):
                        found.add((x, y, z))
                out[(a, b, c)] = found
    return out
