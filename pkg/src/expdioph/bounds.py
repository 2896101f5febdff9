"""Explicit non-Archimedean linear-forms bounds and the c = 13 constants.

Real arithmetic runs in mpmath interval mode at ``PRECISION_DIGITS``
significant digits; reported values are upper endpoints, so every number
returned here is a genuine upper bound for the exact real it stands for.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Callable

from mpmath import floor, iv, mpf

from .errors import NonCrossingError

__all__ = [
    "REFERENCE_CONSTANTS",
    "BoundReport",
    "ConstantRow",
    "MadicParams",
    "PadicFieldParams",
    "bounds_table",
    "bugeaud_laurent_bound",
    "bugeaud_madic_bound",
    "case_vi_rhs",
    "case_vi_z_bound",
    "fixed_point_bound",
    "k1",
    "k1_rhs",
    "k2",
    "k2_large_branch_ratio",
    "k3",
    "n_prime_max",
    "zeta",
]

PRECISION_DIGITS = 40
iv.dps = PRECISION_DIGITS

C = 13
E = 3  # extended order of every admissible base modulo 13
MADIC_CONSTANT = "53.6"
MADIC_CONSTANT_III = "53.611"  # the value carried through the z >= 9 argument
BL_CONSTANT = "27.3"

REFERENCE_CONSTANTS: dict[str, int] = {
    "K1[m<c]": 2367,
    "K1[m>c]": 843,
    "K2": 10459,
    "K3[m<c,z<=8]": 77862,
    "K3[m>c,z<=8]": 44368,
    "K3[z>=9]": 68809,
    "z_vi[n'=0]": 23650,
    "z_vi[n'=1]": 23651,
    "z_vi[n'=2]": 47322,
    "z_vi[n'=3]": 70986,
}


def _iv(x: Any) -> Any:
    return iv.mpf(x)


def _upper(x: Any) -> mpf:
    return mpf(x.b)


def _log_c() -> Any:
    return iv.log(C)


@dataclass(frozen=True)
class MadicParams:
    M: int
    g: int
    H1: Any
    H2: Any
    b1: int
    b2: int


@dataclass(frozen=True)
class PadicFieldParams:
    p: int
    D: int
    f_pi: int
    g: int
    H1: Any
    H2: Any
    b1: int
    b2: int


@dataclass(frozen=True)
class BoundReport:
    value: mpf
    dominated_branch: str
    inputs: MadicParams | PadicFieldParams

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": str(self.value),
            "dominated_branch": self.dominated_branch,
            "inputs": {k: str(v) for k, v in asdict(self.inputs).items()},
        }


def _max_branch(options: dict[str, Any]) -> tuple[str, Any]:
    # Pick by upper endpoint; the returned interval is the hull of the
    # candidates whose upper endpoint ties for largest.
    name = max(options, key=lambda k: options[k].b)
    return name, options[name]


def bugeaud_madic_bound(p: MadicParams, constant: str = MADIC_CONSTANT) -> BoundReport:
    """Upper bound for nu_M(alpha1^b1 - alpha2^b2) with rational alphas."""
    if p.M <= 1 or p.g < 1 or p.b1 < 1 or p.b2 < 1:
        raise ValueError(f"invalid parameters {p}")
    logM = iv.log(p.M)
    H1, H2 = _iv(p.H1), _iv(p.H2)
    # Relative slack so log M computed at a lower working precision passes.
    for name, H in (("H1", H1), ("H2", H2)):
        if H.b < logM.a * (1 - iv.mpf("1e-12")).a:
            raise ValueError(f"{name} = {H} is below log M = {logM}")
    bstar = p.b1 / H2 + p.b2 / H1
    branch, big = _max_branch({
        "log b* + log log M + 0.64": iv.log(bstar) + iv.log(logM) + iv.mpf("0.64"),
        "4 log M": 4 * logM,
    })
    value = _iv(constant) * p.g * H1 * H2 / logM**4 * big**2
    return BoundReport(_upper(value), branch, p)


def bugeaud_laurent_bound(p: PadicFieldParams, constant: str = BL_CONSTANT) -> BoundReport:
    """Upper bound for nu_pi(alpha1^b1 - alpha2^b2) over a number field."""
    if min(p.p, p.D, p.f_pi, p.g, p.b1, p.b2) < 1 or p.p < 2:
        raise ValueError(f"invalid parameters {p}")
    logp = iv.log(p.p)
    H1, H2 = _iv(p.H1), _iv(p.H2)
    if H1.b <= 0 or H2.b <= 0:
        raise ValueError("heights must be positive")
    bstar = p.b1 / H2 + p.b2 / H1
    branch, big = _max_branch({
        "log b* + log log p + 0.4": iv.log(bstar) + iv.log(logp) + iv.mpf("0.4"),
        "(8 f/D) log p": iv.mpf(8 * p.f_pi) / p.D * logp,
        "10": iv.mpf(10),
    })
    value = (
        _iv(constant) * p.D**2 * p.p * p.g * H1 * H2
        / (p.f_pi**2 * (p.p - 1) * logp**4)
        * big**2
    )
    return BoundReport(_upper(value), branch, p)


def fixed_point_bound(rhs: Callable[[int], Any], t_floor: int = 1, cap_bits: int = 256) -> int:
    """Smallest T_u >= t_floor past which T > rhs(T) holds for good.

    ``rhs`` returns an upper bound (mpf or interval) for a right-hand side
    growing at most polylogarithmically. The search doubles T until the
    inequality holds with rhs(T)/T decreasing, then bisects back to the
    crossing, assuming a single crossing above the last failing probe.
    """

    def holds(T: int) -> bool:
        r = rhs(T)
        r = r.b if hasattr(r, "b") else r
        return T > r

    def ratio(T: int) -> mpf:
        r = rhs(T)
        return mpf(r.b if hasattr(r, "b") else r) / T

    lo = None  # largest probe known to fail
    T = max(1, t_floor)
    while True:
        if T.bit_length() > cap_bits:
            raise NonCrossingError(f"no crossing below 2**{cap_bits}")
        if not holds(T):
            lo = T
        elif ratio(2 * T) < ratio(T):
            break
        T *= 2
    if lo is None:
        return max(1, t_floor)
    hi = T
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    assert holds(hi) and (hi == t_floor or not holds(hi - 1))
    return hi


def k1_rhs(min_base_below_13: bool, constant: str = MADIC_CONSTANT) -> Callable[[int], Any]:
    """T -> f * (c0 * 2E / log^4 13) * B'(T)^2 for T = Z / (log a log b)."""
    L = _log_c()
    f = L / iv.log(3) if min_base_below_13 else iv.mpf(1)
    coeff = f * _iv(constant) * 2 * E / L**4
    e064 = iv.exp(iv.mpf("0.64"))
    floor_term = iv.mpf(C) ** 4

    def rhs(T: int) -> Any:
        arg = 4 * e064 * L**2 * T
        big = arg if arg.b > floor_term.b else floor_term
        return coeff * iv.log(big) ** 2

    return rhs


def k1(min_base_below_13: bool) -> int:
    return fixed_point_bound(k1_rhs(min_base_below_13))


def zeta(k1_value: int, z_min: int = 9) -> mpf:
    """Lower bound for log(D)/z when z >= z_min, truncated to two decimals.

    log D / z > log 13 - log(K1/E * log^2 13 * z) / z, and the right side
    increases with z, so its value at z_min bounds every z >= z_min.
    """
    L = _log_c()
    lower = L - iv.log(iv.mpf(k1_value) / E * L**2 * z_min) / z_min
    return mpf(int(mpf(lower.a) * 100)) / 100


def k2(constant: str = MADIC_CONSTANT_III, z_min: int = 9) -> int:
    """Bound K2 on zZ/(log a log b) for z >= 9.

    Once z >= 9 the smaller base exceeds 13, so the m > c value of zeta
    applies, and log m > (zeta z - log 2)/2. The surviving branch gives
    T < c0 * 2E * max(1/zeta^2, z^2/log^2 m) * 16, worst at z = z_min.
    """
    zt = iv.mpf(zeta(k1(False), z_min))
    log_m_low = (zt * z_min - iv.log(2)) / 2
    worst = max(1 / zt**2, iv.mpf(z_min) ** 2 / log_m_low**2, key=lambda v: v.b)
    value = _iv(constant) * 2 * E * worst * 16
    return fixed_point_bound(lambda T: value)


def k2_large_branch_ratio(constant: str = MADIC_CONSTANT_III, z_min: int = 9) -> mpf:
    """Upper bound on the ratio that rules out the large-B' branch (must be < 0.41)."""
    zt = iv.mpf(zeta(k1(False), z_min))
    log_m_low = (zt * z_min - iv.log(2)) / 2
    terms = (1 / (zt**4 * z_min**3), 1 / (zt**2 * log_m_low**2 * z_min))
    return _upper(_iv(constant) * 2 * E * max(terms, key=lambda v: v.b))


def _floor_strict(value: Any) -> int:
    # Largest integer not above the interval's upper endpoint.
    return int(floor(mpf(value.b)))


def k3(case: str) -> int:
    """Bound on xY - Xy by case: m_lt_c_z_le_8, m_gt_c_z_le_8 or z_ge_9."""
    L = _log_c()
    if case == "m_lt_c_z_le_8":
        # m < 13 forces 13^(z-n') | m^2 + m + 1 <= 13 * 13, so z <= 1 + n' <= 5.
        n_prime_initial = _n_prime_initial()
        value = k1(True) * L**2 * (1 + n_prime_initial)
    elif case == "m_gt_c_z_le_8":
        value = k1(False) * L**2 * 8
    elif case == "z_ge_9":
        value = k2() * L**2
    else:
        raise ValueError(f"unknown K3 case {case!r}")
    return _floor_strict(value)


def _n_prime_initial() -> int:
    # Before the m < c refinement: delta < K1 log^2 13 * 8 in general.
    L = _log_c()
    coarse = max(k1(True) * L**2 * 8, k2() * L**2, key=lambda v: v.b)
    return _largest_power_below(_floor_strict(coarse) // E)


def _largest_power_below(bound: int) -> int:
    n = 0
    while C ** (n + 1) <= bound:
        n += 1
    return n


def n_prime_max() -> int:
    """Largest n' with 13^n' <= max K3 / E."""
    worst = max(k3(case) for case in ("m_lt_c_z_le_8", "m_gt_c_z_le_8", "z_ge_9"))
    return _largest_power_below(worst // E)


def case_vi_rhs(n_prime: int) -> Callable[[int], Any]:
    L = _log_c()
    H2 = iv.log(max(C**n_prime, C))

    def rhs(z1: int) -> Any:
        params = PadicFieldParams(p=C, D=2, f_pi=1, g=C - 1, H1=L, H2=H2, b1=z1, b2=1)
        return bugeaud_laurent_bound(params).value

    return rhs


def case_vi_z_bound(n_prime: int) -> int:
    """Largest z allowed when max(x, y) = 2, for the given n'."""
    if n_prime not in (0, 1, 2, 3):
        raise ValueError(f"n' must be in 0..3, got {n_prime}")
    z1_max = fixed_point_bound(case_vi_rhs(n_prime)) - 1
    return z1_max + n_prime


@dataclass(frozen=True)
class ConstantRow:
    name: str
    computed: int
    reference: int
    within_tolerance: bool  # 0.99 * reference <= computed <= reference
    reference_valid: bool  # the reference value survives the defining inequality

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _row(name: str, computed: int, valid: bool) -> ConstantRow:
    reference = REFERENCE_CONSTANTS[name]
    return ConstantRow(name, computed, reference, 0.99 * reference <= computed <= reference, valid)


def _exceeds(rhs: Callable[[int], Any], T: int) -> bool:
    r = rhs(T)
    return T > (r.b if hasattr(r, "b") else r)


def bounds_table() -> list[ConstantRow]:
    """Every named constant: computed value, reference value, validity checks."""
    rows = [
        _row("K1[m<c]", k1(True), _exceeds(k1_rhs(True), REFERENCE_CONSTANTS["K1[m<c]"])),
        _row("K1[m>c]", k1(False), _exceeds(k1_rhs(False), REFERENCE_CONSTANTS["K1[m>c]"])),
    ]
    k2_value = k2()
    rows.append(_row("K2", k2_value, REFERENCE_CONSTANTS["K2"] >= k2_value))
    for case, name in (
        ("m_lt_c_z_le_8", "K3[m<c,z<=8]"),
        ("m_gt_c_z_le_8", "K3[m>c,z<=8]"),
        ("z_ge_9", "K3[z>=9]"),
    ):
        value = k3(case)
        rows.append(_row(name, value, REFERENCE_CONSTANTS[name] >= value))
    for n in range(4):
        name = f"z_vi[n'={n}]"
        # z <= P is justified iff z1 = P - n' + 1 already beats the bound.
        valid = _exceeds(case_vi_rhs(n), REFERENCE_CONSTANTS[name] - n + 1)
        rows.append(_row(name, case_vi_z_bound(n), valid))
    return rows
