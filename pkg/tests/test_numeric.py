from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expdioph.numeric import (
    BETA,
    GaussianInt,
    aZ_bZ,
    euler_phi,
    exact_log,
    ext_mult_order,
    factorize,
    integer_nth_root,
    is_perfect_power,
    lte_valuation,
    lucas_uv,
    valuation,
)


def _naive_valuation(M: int, A: int) -> int:
    e, A = 0, abs(A)
    while A % M == 0:
        A //= M
        e += 1
    return e


def _scan_order(M: int, A: int) -> tuple[int, int]:
    v = A % M
    for e in range(1, M + 1):
        if v == 1:
            return e, 1
        if v == M - 1:
            return e, -1
        v = v * A % M
    raise AssertionError("no order found")


@pytest.mark.parametrize("M, A, expected", [(13, 2197, 3), (10, 500, 2), (2, 91, 0)])
def test_valuation_examples(M: int, A: int, expected: int) -> None:
    assert valuation(M, A) == expected


@given(st.integers(2, 60), st.integers(-(10**30), 10**30).filter(bool), st.integers(0, 40))
def test_valuation_matches_repeated_division(M: int, A: int, k: int) -> None:
    assert valuation(M, A * M**k) == _naive_valuation(M, A * M**k)


@pytest.mark.parametrize("M, A", [(1, 5), (0, 5), (13, 0)])
def test_valuation_rejects(M: int, A: int) -> None:
    with pytest.raises(ValueError):
        valuation(M, A)


def test_exact_log() -> None:
    assert exact_log(13, 13**5) == 5
    assert exact_log(13, 13**5 + 1) is None
    assert exact_log(10, 1) is None
    assert exact_log(2, 2) == 1


@pytest.mark.parametrize(
    "M, A, expected", [(13, 3, (3, 1)), (13, 4, (3, -1)), (13, 2, (6, -1))]
)
def test_ext_mult_order_examples(M: int, A: int, expected: tuple[int, int]) -> None:
    r = ext_mult_order(M, A)
    assert (r.order, r.sign) == expected


@settings(max_examples=300)
@given(st.integers(3, 10**4), st.integers(1, 10**6))
def test_ext_mult_order_matches_linear_scan(M: int, A: int) -> None:
    if gcd(A, M) != 1:
        with pytest.raises(ValueError):
            ext_mult_order(M, A)
        return
    r = ext_mult_order(M, A)
    assert (r.order, r.sign) == _scan_order(M, A)
    assert euler_phi(M) % r.order == 0


@pytest.mark.parametrize("M, A", [(2, 3), (1, 1), (13, 26)])
def test_ext_mult_order_rejects(M: int, A: int) -> None:
    with pytest.raises(ValueError):
        ext_mult_order(M, A)


def test_euler_phi() -> None:
    assert [euler_phi(n) for n in (13, 1, 12)] == [12, 1, 4]
    with pytest.raises(ValueError):
        euler_phi(0)


@given(st.integers(1, 10**7))
def test_factorize_product(n: int) -> None:
    prod = 1
    for p, k in factorize(n).items():
        assert factorize(p) == {p: 1}
        prod *= p**k
    assert prod == n


def test_integer_nth_root_examples() -> None:
    assert integer_nth_root(2197, 3) == (13, True)
    assert integer_nth_root(2196, 3) == (12, False)
    assert integer_nth_root(0, 5) == (0, True)


@given(st.integers(0, 10**80), st.integers(1, 20))
def test_integer_nth_root_brackets(A: int, n: int) -> None:
    root, exact = integer_nth_root(A, n)
    assert root**n <= A < (root + 1) ** n
    assert exact == (root**n == A)


def test_is_perfect_power_examples() -> None:
    assert is_perfect_power(8283) is None
    assert is_perfect_power(729) == (3, 6)
    assert is_perfect_power(13) is None
    with pytest.raises(ValueError):
        is_perfect_power(1)


@given(st.integers(2, 1000), st.integers(2, 6))
def test_is_perfect_power_maximal(A: int, k: int) -> None:
    base, exp = is_perfect_power(A**k)
    assert base**exp == A**k
    assert exp >= k
    assert is_perfect_power(base) is None


@pytest.mark.parametrize("p, U, V, N, expected", [(3, 4, 1, 3, 2), (13, 16, 3, 13, 2), (5, 7, 2, 1, 1)])
def test_lte_examples(p: int, U: int, V: int, N: int, expected: int) -> None:
    assert lte_valuation(p, U, V, N) == expected


def test_lte_full_grid_against_direct_valuation() -> None:
    checked = 0
    for p in (2, 3, 5, 7, 11, 13):
        mod = 4 if p == 2 else p
        for U in range(-50, 51):
            for V in range(-50, 51):
                if U == 0 or V == 0 or U == V or gcd(U, V) != 1 or (U - V) % mod:
                    continue
                for N in range(1, 31):
                    assert lte_valuation(p, U, V, N) == valuation(p, U**N - V**N)
                    checked += 1
    assert checked > 10**4


@pytest.mark.parametrize("args", [(4, 3, 1, 2), (3, 5, 1, 2), (3, 6, 3, 2), (2, 3, 1, 2), (3, 4, 4, 1)])
def test_lte_rejects_bad_hypotheses(args: tuple[int, int, int, int]) -> None:
    with pytest.raises(ValueError):
        lte_valuation(*args)


@given(st.integers(-100, 100), st.integers(-100, 100), st.integers(-100, 100), st.integers(-100, 100))
def test_gaussian_norm_multiplicative(a: int, b: int, c: int, d: int) -> None:
    g, h = GaussianInt(a, b), GaussianInt(c, d)
    assert g * h == h * g
    assert (g * h).norm() == g.norm() * h.norm()


def test_lucas_examples_and_congruences() -> None:
    assert lucas_uv(1) == (1, 4)
    assert lucas_uv(2) == (4, -10)
    for n in range(2, 201):
        U, V = lucas_uv(n)
        assert (U - lucas_uv(n - 1)[1]) % 13 == 0
        assert (V - 4**n) % 13 == 0


def test_lucas_matches_gaussian_powers() -> None:
    # beta - conj(beta) = 6i, so U_n = Im(beta^n) / 3 and V_n = 2 Re(beta^n)
    for n in range(1, 60):
        g = BETA**n
        assert lucas_uv(n) == (g.im // 3, 2 * g.re)


def test_aZ_bZ() -> None:
    assert aZ_bZ(1) == (3, 2)
    assert aZ_bZ(2) == (5, 12)
    assert aZ_bZ(3) == (9, 46)
    for Z in range(1, 61):
        a, b = aZ_bZ(Z)
        assert a * a + b * b == 13**Z
