from __future__ import annotations

import json
import random
from math import gcd, isqrt
from pathlib import Path

import pytest
from mpmath import floor, mp, mpf

from expdioph import sieve
from expdioph.numeric import factorize
from expdioph.sieve import (
    SieveCase,
    Step1Record,
    Step2Record,
    check4,
    fast_square_filter,
    step1,
    step1_chunk,
    step2,
    step3,
    t_upper,
)


@pytest.fixture(scope="module")
def list1_v() -> list[Step1Record]:
    return step1(SieveCase.v())


def _check4_oracle(t: int) -> bool:
    if t % 2 == 0 or t % 9 == 0:
        return False
    return all(p % 3 != 2 for p in factorize(t)) if t > 1 else True


def test_check4_against_factorization() -> None:
    for t in range(1, 3000):
        assert check4(t) == _check4_oracle(t), t
    assert not check4(0)


def test_t_upper_against_real_arithmetic() -> None:
    with mp.workdps(60):
        for n in range(4):
            for z in range(max(1, n), 12):
                if z >= 7:
                    expected = 13**n
                else:
                    expected = int(floor((1 + mpf(13) ** (-mpf(z) / 2) + mpf(13) ** (-z)) * 13**n))
                assert t_upper(z, n) == expected, (z, n)


def test_default_battery() -> None:
    assert len(sieve.DEFAULT_BATTERY) == 48
    assert 13 not in sieve.DEFAULT_BATTERY
    assert sieve.DEFAULT_BATTERY[:5] == (3, 5, 7, 11, 17)


def test_square_filter_sound_on_records(list1_v: list[Step1Record]) -> None:
    for r in list1_v:
        assert isqrt(4 * r.t * 13 ** (r.z - r.n_prime) - 3) ** 2 == 4 * r.t * 13 ** (r.z - r.n_prime) - 3
        assert fast_square_filter(r.t, r.z, r.n_prime)


def test_residue_tables_accept_every_square() -> None:
    rng = random.Random(7)
    for _ in range(10**4):
        s = rng.randrange(1, 10**40)
        for p in sieve.DEFAULT_BATTERY[:12]:
            assert sieve._qr_table(p)[s * s % p]


def test_square_filter_rejects_sampled_non_squares() -> None:
    rejected = sum(not fast_square_filter(t, z, 0) for t in range(1, 200, 2) for z in range(30, 40))
    assert rejected == 100 * 10


def test_step1_case_v_count(list1_v: list[Step1Record]) -> None:
    assert len(list1_v) == 114
    assert list1_v == sorted(list1_v, key=Step1Record.sort_key)
    assert max(r.z for r in list1_v) == 7


def test_step1_matches_exact_oracle(list1_v: list[Step1Record]) -> None:
    expected = []
    for n in range(4):
        for z in range(max(1, n), 10):
            for t in range(1, t_upper(z, n) + 1):
                v = 4 * t * 13 ** (z - n) - 3
                if _check4_oracle(t) and isqrt(v) ** 2 == v:
                    expected.append(Step1Record(z, n, t))
    assert list1_v == sorted(expected, key=Step1Record.sort_key)


def test_step1_partition_invariance() -> None:
    case = SieveCase.vi(z_max=400)
    whole = step1(case, chunk=1000)
    for chunk in (1, 7, 50, 133):
        assert step1(case, chunk=chunk) == whole
    merged = sorted(
        {r for lo in range(1, 401, 37) for n in range(4) for r in step1_chunk(n, lo, min(lo + 36, 400))},
        key=Step1Record.sort_key,
    )
    assert merged == whole


def test_step1_checkpoint_resume(tmp_path: Path) -> None:
    case = SieveCase.vi(z_max=600)
    ckpt = tmp_path / "ck.json"
    full = step1(case, chunk=100)
    partial = step1(case, n_primes=[0, 1], chunk=100, checkpoint=ckpt)
    data = json.loads(ckpt.read_text())
    assert data["case"] == "vi"
    assert all(u[0] in (0, 1) for u in data["completed_chunks"])
    assert partial == [r for r in full if r.n_prime in (0, 1)]
    resumed = step1(case, chunk=100, checkpoint=ckpt, resume=True)
    assert resumed == full
    with pytest.raises(ValueError):
        step1(SieveCase.v(), chunk=100, checkpoint=ckpt, resume=True)


def test_step1_workers_match_serial() -> None:
    case = SieveCase.vi(z_max=300)
    assert step1(case, chunk=60, workers=2) == step1(case, chunk=60)


def test_step2_records_reverify(list1_v: list[Step1Record]) -> None:
    case = SieveCase.v()
    recs = step2(list1_v, case)
    assert recs
    for r in recs:
        D = 13 ** (r.z - r.n_prime)
        assert r.a**r.x + r.b**r.y == 13**r.z
        assert r.x >= max(r.y, case.x_l)
        assert gcd(r.a, r.b) == 1 and (r.a - r.b) % 2
        assert r.a % 13 in sieve.ORDER3_RESIDUES and r.b % 13 in sieve.ORDER3_RESIDUES
        assert pow(r.b, 3, D) in (1 % D, (D - 1) % D)
        assert any(abs(r.a * r.a + d * r.a + 1) % D == 0 for d in (-1, 1))
        assert 2 * r.a * r.a >= D and 2 * r.b * r.b >= D


def test_step2_order_three_flag_only_loosens(list1_v: list[Step1Record]) -> None:
    strict = step2(list1_v, SieveCase.v())
    loose = step2(list1_v, SieveCase.v(), require_order_three=False)
    assert set(strict) <= set(loose)
    assert len(loose) >= len(strict)


def test_step3_limits_pick_constants() -> None:
    small = sieve.step3_limits(Step2Record(3, 10, 7, 1, 3, 2))
    assert (small.K1, small.K3, small.unit) == (2367, 77862, 3 * 169)
    big = sieve.step3_limits(Step2Record(23, 91452, 4, 1, 5, 3))
    assert (big.K1, big.K3) == (843, 44368)
    late = sieve.step3_limits(Step2Record(16, 17, 9, 1, 9, 0))
    assert late.K3 == 68809
    with mp.workdps(40):
        assert small.X_u == int(floor(2367 * mp.log(10) * mp.log(13)))


def test_step3_planted_record() -> None:
    planted = step3([Step2Record(3, 10, 1, 1, 1, 0)], relaxed=True)
    assert [(m.X, m.Y, m.Z) for m in planted] == [(7, 1, 3)]
    # Odd k alone misses it: xY - Xy = 6 is an even multiple of 3.
    assert step3([Step2Record(3, 10, 1, 1, 1, 0)]) == []


def test_filter_primes_have_small_order() -> None:
    for q, table in sieve._filter_primes():
        assert q > 1000
        assert table[1] and table[13 % q]
        assert int(table.sum()) <= 48


def test_power_table() -> None:
    assert sieve._power_table(7, 30, 1009).tolist() == [pow(7, k, 1009) for k in range(31)]


def test_case_v_pipeline_empty(list1_v: list[Step1Record]) -> None:
    assert step3(step2(list1_v, SieveCase.v())) == []


def test_sieve_case_constructors() -> None:
    assert SieveCase.vi().z_u[3] == 70986
    assert SieveCase.vi(z_max=2000).z_u == {n: 2000 for n in range(4)}
    assert SieveCase.named("v").x_l == 3
    with pytest.raises(ValueError):
        SieveCase.named("iv")
