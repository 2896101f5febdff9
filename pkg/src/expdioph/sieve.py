"""Three-step sieve for two solutions of a^x + b^y = 13^z with xY - Xy odd.

Step 1 lists every (z, n', t) making 4 t 13^(z-n') - 3 a square, Step 2
recovers candidate (a, b, x, y) from each, and Step 3 looks for a second
solution (X, Y, Z) inside the explicit exponent bounds.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field
from functools import lru_cache
from math import gcd, isqrt
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import gmpy2
import numpy as np
from mpmath import floor as mfloor
from mpmath import log as mlog
from mpmath import mp, mpf

from .bounds import REFERENCE_CONSTANTS
from .numeric import exact_log, integer_nth_root

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_BATTERY",
    "MatchRecord",
    "SieveCase",
    "Step1Record",
    "Step2Record",
    "check4",
    "fast_square_filter",
    "step1",
    "step1_chunk",
    "step2",
    "step3",
    "t_upper",
    "work_units",
]

C = 13
E = 3
ORDER3_RESIDUES = frozenset({3, 4, 9, 10})
T_LIMIT = C**3  # largest t_u ever used (n' = 3)


def _odd_primes_coprime_to_13(count: int) -> tuple[int, ...]:
    out: list[int] = []
    p = 3
    while len(out) < count:
        if p != C and gmpy2.is_prime(p):
            out.append(p)
        p += 2
    return tuple(out)


DEFAULT_BATTERY = _odd_primes_coprime_to_13(48)


@dataclass(frozen=True)
class SieveCase:
    case_tag: str
    x_l: int
    z_u: dict[int, int] = field(hash=False)

    @classmethod
    def v(cls) -> SieveCase:
        return cls("v", 3, {n: 9 for n in range(4)})

    @classmethod
    def vi(cls, z_max: int | None = None) -> SieveCase:
        z_u = {n: REFERENCE_CONSTANTS[f"z_vi[n'={n}]"] for n in range(4)}
        if z_max is not None:
            z_u = {n: min(bound, z_max) for n, bound in z_u.items()}
        return cls("vi", 2, z_u)

    @classmethod
    def named(cls, tag: str, z_max: int | None = None) -> SieveCase:
        if tag == "v":
            case = cls.v()
            if z_max is not None:
                case = cls("v", 3, {n: min(9, z_max) for n in range(4)})
            return case
        if tag == "vi":
            return cls.vi(z_max)
        raise ValueError(f"unknown sieve case {tag!r}")


@dataclass(frozen=True, order=True)
class Step1Record:
    z: int
    n_prime: int
    t: int

    def sort_key(self) -> tuple[int, int, int]:
        return (self.n_prime, self.z, self.t)


@dataclass(frozen=True, order=True)
class Step2Record:
    a: int
    b: int
    x: int
    y: int
    z: int
    n_prime: int


@dataclass(frozen=True, order=True)
class MatchRecord:
    a: int
    b: int
    x: int
    y: int
    z: int
    X: int
    Y: int
    Z: int


# -- Step 1 ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _check4_table(limit: int = T_LIMIT) -> np.ndarray:
    """Boolean table: t odd, 9 does not divide t, odd prime factors are not 2 mod 3."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    ok = np.zeros(limit + 1, dtype=bool)
    for t in range(1, limit + 1):
        if t % 2 == 0 or t % 9 == 0:
            continue
        n, good = t, True
        while n > 1:
            p = int(spf[n])
            if p % 3 == 2:
                good = False
                break
            n //= p
        ok[t] = good
    return ok


def check4(t: int) -> bool:
    if t < 1:
        return False
    if t <= T_LIMIT:
        return bool(_check4_table()[t])
    if t % 2 == 0 or t % 9 == 0:
        return False
    from .numeric import factorize

    return all(p % 3 != 2 for p in factorize(t) if p != 2)


def t_upper(z: int, n_prime: int) -> int:
    """t_u: 13^n' when z >= 7, else floor((1 + 13^(-z/2) + 13^(-z)) 13^n')."""
    if z >= 7:
        return C**n_prime
    # Multiply through by 13^z; the middle term is sqrt(13^(2n'+z)), and
    # flooring it first does not change the overall floor.
    num = C ** (n_prime + z) + isqrt(C ** (2 * n_prime + z)) + C**n_prime
    return num // C**z


@lru_cache(maxsize=None)
def _qr_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=bool)
    table[(np.arange(p, dtype=np.int64) ** 2) % p] = True
    return table


def fast_square_filter(
    t: int, z: int, n_prime: int, prime_battery: Sequence[int] = DEFAULT_BATTERY
) -> bool:
    """False only when 4 t 13^(z-n') - 3 is certainly not a square."""
    for p in prime_battery:
        v = (4 * t * pow(C, z - n_prime, p) - 3) % p
        if not _qr_table(p)[v]:
            return False
    return True


def _exact_square(t: int, z: int, n_prime: int) -> bool:
    return bool(gmpy2.is_square(4 * t * C ** (z - n_prime) - 3))


def step1_chunk(
    n_prime: int, z_lo: int, z_hi: int, battery: Sequence[int] = DEFAULT_BATTERY
) -> list[Step1Record]:
    """Step 1 restricted to one n' and z in [z_lo, z_hi]."""
    z_lo = max(z_lo, max(1, n_prime))
    if z_hi < z_lo:
        return []
    zs = np.arange(z_lo, z_hi + 1, dtype=np.int64)
    t_caps = np.array([t_upper(int(z), n_prime) for z in zs], dtype=np.int64)
    t_max = int(t_caps.max())
    ok4 = _check4_table(max(T_LIMIT, t_max))
    ts = np.nonzero(ok4[: t_max + 1])[0].astype(np.int64)
    if ts.size == 0:
        return []
    zi, ti = np.nonzero(ts[None, :] <= t_caps[:, None])
    for p in battery:
        r = np.array([pow(C, int(z) - n_prime, p) for z in zs], dtype=np.int64)
        vals = (4 * (ts[ti] % p) * r[zi] - 3) % p
        keep = _qr_table(p)[vals]
        zi, ti = zi[keep], ti[keep]
        if zi.size == 0:
            return []
    out = []
    for i, j in zip(zi.tolist(), ti.tolist()):
        z, t = int(zs[i]), int(ts[j])
        if _exact_square(t, z, n_prime):
            out.append(Step1Record(z, n_prime, t))
    return out


def work_units(case: SieveCase, chunk: int = 500) -> list[tuple[int, int, int]]:
    """(n', z_lo, z_hi) blocks covering the whole Step 1 grid."""
    units = []
    for n in range(4):
        lo = max(1, n)
        while lo <= case.z_u[n]:
            hi = min(lo + chunk - 1, case.z_u[n])
            units.append((n, lo, hi))
            lo = hi + 1
    return units


def _run_unit(unit: tuple[int, int, int]) -> tuple[tuple[int, int, int], list[Step1Record]]:
    return unit, step1_chunk(*unit)


def _write_checkpoint(path: Path, case: SieveCase, done: dict, records: list[Step1Record]) -> None:
    payload = {
        "case": case.case_tag,
        "z_u": {str(k): v for k, v in case.z_u.items()},
        "completed_chunks": [list(u) for u in sorted(done)],
        "list1": [list(astuple(r)) for r in sorted(records, key=Step1Record.sort_key)],
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload), encoding="utf-8")
    os.replace(tmp, path)


def _load_checkpoint(path: Path, case: SieveCase) -> tuple[set, list[Step1Record]]:
    data = json.loads(path.read_text(encoding="utf-8"))
    if data.get("case") != case.case_tag:
        raise ValueError(f"checkpoint {path} is for case {data.get('case')!r}")
    done = {tuple(u) for u in data.get("completed_chunks", [])}
    records = [Step1Record(*r) for r in data.get("list1", [])]
    return done, records


def step1(
    case: SieveCase,
    *,
    n_primes: Iterable[int] | None = None,
    workers: int = 1,
    chunk: int = 500,
    checkpoint: str | Path | None = None,
    resume: bool = False,
) -> list[Step1Record]:
    """All Step 1 records for the case, in (n', z, t) order.

    Work is split into (n', z-chunk) units; with a checkpoint path the set
    of finished units and their records is rewritten after every unit.
    """
    wanted = set(range(4) if n_primes is None else n_primes)
    units = [u for u in work_units(case, chunk) if u[0] in wanted]
    done: set = set()
    records: list[Step1Record] = []
    ckpt = Path(checkpoint) if checkpoint else None
    if ckpt and resume and ckpt.exists():
        done, records = _load_checkpoint(ckpt, case)
        log.info("resuming: %d of %d units already done", len(done & set(units)), len(units))
    todo = [u for u in units if u not in done]

    def absorb(unit, found):
        done.add(unit)
        records.extend(found)
        if ckpt:
            _write_checkpoint(ckpt, case, done, records)

    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for unit, found in pool.map(_run_unit, todo):
                absorb(unit, found)
    else:
        for unit in todo:
            absorb(*_run_unit(unit))
    keep = {u for u in units}
    selected = [
        r for r in records
        if any(u[0] == r.n_prime and u[1] <= r.z <= u[2] for u in keep)
    ]
    return sorted(set(selected), key=Step1Record.sort_key)


# -- Step 2 ---------------------------------------------------------------


def _ceil_sqrt_half(D: int) -> int:
    # ceil(sqrt(D / 2)) as the least m with 2 m^2 >= D
    m = isqrt(D // 2)
    while 2 * m * m < D:
        m += 1
    return m


def step2(
    list1: Iterable[Step1Record], case: SieveCase, *, require_order_three: bool = True
) -> list[Step2Record]:
    """Candidate first solutions (a, b, x, y, z, n') with x >= y.

    ``require_order_three`` keeps the b = 3, 4, 9, 10 (mod 13) test; turning
    it off leaves only b^3 = +-1 (mod 13^(z-n')).
    """
    out: list[Step2Record] = []
    for rec in list1:
        z, n = rec.z, rec.n_prime
        D = C ** (z - n)
        cz = C**z
        A = isqrt(4 * rec.t * D - 3)
        m_l = max(3, _ceil_sqrt_half(D))
        for delta in (-1, 1):
            if (A - delta) % 2:
                continue
            a = (A - delta) // 2
            if a < m_l or a**case.x_l > cz or a % C not in ORDER3_RESIDUES:
                continue
            if (a * a + delta * a + 1) % D:
                continue
            x, ax = case.x_l, a**case.x_l
            while ax < cz:
                rest = cz - ax
                for y in range(1, x + 1):
                    b, exact = integer_nth_root(rest, y)
                    if not exact or b < m_l:
                        continue
                    if require_order_three and b % C not in ORDER3_RESIDUES:
                        continue
                    if pow(b, 3, D) not in (1 % D, (D - 1) % D):
                        continue
                    if (b - a) % 2 == 0 or gcd(a, b) != 1:
                        continue
                    out.append(Step2Record(a, b, x, y, z, n))
                x += 1
                ax *= a
    return out


# -- Step 3 ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _filter_primes(count: int = 16, max_order: int = 48) -> tuple[tuple[int, np.ndarray], ...]:
    """Primes q where 13 has small order, with the table of 13-powers mod q.

    A power of 13 must land in that small subgroup, so each prime rejects
    a random value with probability about 1 - ord/q.
    """
    qs = np.arange(1001, 1 << 21, 2, dtype=np.int64)
    order = np.zeros(qs.size, dtype=np.int64)
    r = np.full(qs.size, C, dtype=np.int64) % qs
    for e in range(1, max_order + 1):
        hit = (r == 1) & (order == 0)
        order[hit] = e
        r = r * C % qs
    idx = np.nonzero(order)[0]
    found = [(int(qs[i]), int(order[i])) for i in idx if gmpy2.is_prime(int(qs[i]))]
    found.sort(key=lambda qo: qo[1] / qo[0])
    out = []
    for q, ordq in found[:count]:
        table = np.zeros(q, dtype=bool)
        v = 1
        for _ in range(ordq):
            table[v] = True
            v = v * C % q
        out.append((q, table))
    return tuple(out)


def _power_table(base: int, n: int, q: int) -> np.ndarray:
    """base^k mod q for k = 0..n."""
    exps = np.arange(n + 1, dtype=np.int64)
    result = np.ones(n + 1, dtype=np.int64)
    b = np.int64(base % q)
    while exps.any():
        odd = (exps & 1).astype(bool)
        result[odd] = result[odd] * b % q
        b = b * b % q
        exps >>= 1
    return result


@dataclass(frozen=True)
class Step3Limits:
    K1: int
    K3: int
    X_u: int
    Y_u: int
    delta_u: int
    unit: int


def step3_limits(rec: Step2Record) -> Step3Limits:
    """Exponent limits for the second solution, with K1, K3 picked per record."""
    small = min(rec.a, rec.b) < C
    K1 = REFERENCE_CONSTANTS["K1[m<c]"] if small else REFERENCE_CONSTANTS["K1[m>c]"]
    if rec.z <= 8:
        K3 = REFERENCE_CONSTANTS["K3[m<c,z<=8]"] if small else REFERENCE_CONSTANTS["K3[m>c,z<=8]"]
    else:
        K3 = REFERENCE_CONSTANTS["K3[z>=9]"]
    with mp.workdps(40):
        L = mlog(C)
        X_u = int(mfloor(K1 * mlog(rec.b) * L))
        Y_u = int(mfloor(K1 * mlog(rec.a) * L))
        delta_u = min(int(mfloor(K1 * L**2 * rec.z)), K3)
    return Step3Limits(K1, K3, X_u, Y_u, delta_u, E * C**rec.n_prime)


def _candidate_pairs(
    rec: Step2Record, lim: Step3Limits, k_step: int, batch: int = 1 << 20
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """(X, Y) arrays from both sign cases of xY - Xy = k * 3 * 13^n'."""
    x, y, unit = rec.x, rec.y, lim.unit
    # Case xY - Xy = k * unit: loop X, solve for Y.
    # Case Xy - xY = k * unit: the same with the roles swapped.
    for (p, q, P_u, Q_u, swap) in (
        (x, y, lim.Y_u, lim.X_u, False),
        (y, x, lim.X_u, lim.Y_u, True),
    ):
        # Outer variable W ranges up to min(W_u, (p * P_u - unit) // q); the
        # solved variable V satisfies p * V = q * W + k * unit.
        w_max = min(Q_u, (p * P_u - unit) // q)
        if w_max < 1:
            continue
        ws = np.arange(1, w_max + 1, dtype=np.int64)
        k_caps = np.minimum(lim.delta_u, p * P_u - q * ws) // unit
        k_top = int(k_caps.max()) if k_caps.size else 0
        buf_w: list[np.ndarray] = []
        buf_v: list[np.ndarray] = []
        size = 0
        for k in range(1, k_top + 1, k_step):
            sel = ws[k_caps >= k]
            if sel.size == 0:
                break
            num = q * sel + k * unit
            ok = num % p == 0
            if not ok.any():
                continue
            w, v = sel[ok], num[ok] // p
            buf_w.append(w)
            buf_v.append(v)
            size += w.size
            if size >= batch:
                W, V = np.concatenate(buf_w), np.concatenate(buf_v)
                yield (V, W) if swap else (W, V)
                buf_w, buf_v, size = [], [], 0
        if buf_w:
            W, V = np.concatenate(buf_w), np.concatenate(buf_v)
            yield (V, W) if swap else (W, V)


def step3(
    list2: Iterable[Step2Record], *, relaxed: bool = False
) -> list[MatchRecord]:
    """Search each candidate for a second solution (X, Y, Z).

    ``relaxed`` walks every k instead of odd k only; it is a wiring check
    that must rediscover known pairs whose xY - Xy is even.
    """
    k_step = 1 if relaxed else 2
    primes = _filter_primes()
    matches: set[MatchRecord] = set()
    for rec in list2:
        lim = step3_limits(rec)
        tables = [
            (q, table, _power_table(rec.a, lim.X_u + 1, q), _power_table(rec.b, lim.Y_u + 1, q))
            for q, table in primes
        ]
        for Xs, Ys in _candidate_pairs(rec, lim, k_step):
            for q, table, pa, pb in tables:
                keep = table[(pa[Xs] + pb[Ys]) % q]
                Xs, Ys = Xs[keep], Ys[keep]
                if Xs.size == 0:
                    break
            for X, Y in zip(Xs.tolist(), Ys.tolist()):
                Z = exact_log(C, rec.a**X + rec.b**Y)
                if Z is not None:
                    matches.add(MatchRecord(rec.a, rec.b, rec.x, rec.y, rec.z, X, Y, Z))
    return sorted(matches)
