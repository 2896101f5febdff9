"""Exact integer primitives: valuations, extended orders, roots, Lucas sequences.

Everything here works on Python integers of arbitrary size; nothing touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import gmpy2

__all__ = [
    "ExtOrderResult",
    "GaussianInt",
    "aZ_bZ",
    "euler_phi",
    "exact_log",
    "ext_mult_order",
    "factorize",
    "integer_nth_root",
    "is_perfect_power",
    "is_prime",
    "lte_valuation",
    "lucas_uv",
    "valuation",
]


def valuation(M: int, A: int) -> int:
    """Largest e with M**e dividing A."""
    if M <= 1:
        raise ValueError(f"valuation base must exceed 1, got {M}")
    if A == 0:
        raise ValueError("valuation of 0 is undefined")
    A = abs(A)
    if A % M:
        return 0
    # Square the divisor while it still divides, then walk back down.
    powers = [M]
    while A % (powers[-1] * powers[-1]) == 0:
        powers.append(powers[-1] * powers[-1])
    e = 0
    for i in range(len(powers) - 1, -1, -1):
        if A % powers[i] == 0:
            A //= powers[i]
            e += 1 << i
    return e


def exact_log(base: int, value: int) -> int | None:
    """Return y >= 1 with base**y == value, or None."""
    if base <= 1 or value < base:
        return None
    y = valuation(base, value)
    if y and base**y == value:
        return y
    return None


def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n, 50))


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization. Meant for the small moduli used here."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result = n
    for p in factorize(n):
        result -= result // p
    return result


@dataclass(frozen=True)
class ExtOrderResult:
    """Least e with A**e = sign (mod M), sign in {+1, -1}."""

    order: int
    sign: int


def ext_mult_order(M: int, A: int) -> ExtOrderResult:
    """Extended multiplicative order of A modulo M.

    The exponents e with A**e = +-1 (mod M) form the subgroup of multiples of
    the extended order, and phi(M) lies in it, so we descend through the
    prime divisors of phi(M).
    """
    if M <= 2:
        raise ValueError(f"extended order needs M > 2 (sign is ambiguous), got {M}")
    if gcd(A, M) != 1:
        raise ValueError(f"gcd({A}, {M}) != 1")
    A %= M
    phi = euler_phi(M)
    e = phi
    for q in factorize(phi):
        while e % q == 0 and pow(A, e // q, M) in (1, M - 1):
            e //= q
    r = pow(A, e, M)
    return ExtOrderResult(e, 1 if r == 1 else -1)


def integer_nth_root(A: int, n: int) -> tuple[int, bool]:
    """(floor(A**(1/n)), whether the root is exact)."""
    if A < 0:
        raise ValueError("integer_nth_root needs A >= 0")
    if n < 1:
        raise ValueError("integer_nth_root needs n >= 1")
    root, exact = gmpy2.iroot(A, n)
    return int(root), bool(exact)


def is_perfect_power(A: int) -> tuple[int, int] | None:
    """Return (base, k) with base**k == A and k >= 2 maximal, else None."""
    if A <= 1:
        raise ValueError(f"is_perfect_power needs A > 1, got {A}")
    for k in range(A.bit_length(), 1, -1):
        root, exact = gmpy2.iroot(A, k)
        if exact and root > 1:
            return int(root), k
    return None


def lte_valuation(p: int, U: int, V: int, N: int) -> int:
    """nu_p(U**N - V**N) via the lifting-the-exponent identity.

    Raises ValueError when the hypotheses (coprime U, V; U = V mod p, or
    mod 4 when p = 2) are not met.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if N < 1:
        raise ValueError("N must be >= 1")
    if U == 0 or V == 0 or gcd(U, V) != 1:
        raise ValueError(f"U={U}, V={V} must be nonzero and coprime")
    modulus = 4 if p == 2 else p
    if (U - V) % modulus:
        raise ValueError(f"U = V (mod {modulus}) fails for U={U}, V={V}")
    if U == V:
        raise ValueError("U == V makes U**N - V**N vanish")
    return valuation(p, U - V) + valuation(p, N)


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __pow__(self, n: int) -> GaussianInt:
        if n < 0:
            raise ValueError("negative powers are not Gaussian integers")
        result, base = GaussianInt(1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im


BETA = GaussianInt(2, 3)  # 13 = BETA * conj(BETA)


def lucas_uv(n: int, P: int = 4, Q: int = 13) -> tuple[int, int]:
    """(U_n, V_n) of the Lucas pair with characteristic polynomial t^2 - P t + Q.

    The defaults are beta + conj(beta) and beta * conj(beta) for beta = 2 + 3i.
    """
    if n < 1:
        raise ValueError("lucas_uv needs n >= 1")
    u_prev, u = 0, 1
    v_prev, v = 2, P
    for _ in range(n - 1):
        u_prev, u = u, P * u - Q * u_prev
        v_prev, v = v, P * v - Q * v_prev
    return u, v


def _half_modulus(g: GaussianInt) -> int:
    # g is 2*real or 2*imaginary here; one component vanishes.
    if g.re and g.im:
        raise ArithmeticError(f"{g} is neither real nor purely imaginary")
    return (abs(g.re) + abs(g.im)) // 2


def aZ_bZ(Z: int) -> tuple[int, int]:
    """The pair (a(Z), b(Z)) with a(Z)**2 + b(Z)**2 == 13**Z."""
    if Z < 1:
        raise ValueError("aZ_bZ needs Z >= 1")
    bz = BETA**Z
    other = (-BETA.conj()) ** Z
    return _half_modulus(bz + other), _half_modulus(bz - other)
