"""Tests for the per-prime congruence checks.

Residues are never trusted to the modular DP alone: small grids are
cross-checked against exact rational values reduced through
Residue.from_fraction, and the weak-sum aggregation over coarsenings is
checked against the direct weak-chain modular DP.
"""

import random

import pytest

from zetaflat.chainsum import Residue, eval_dp_mod, zeta_star_chain
from zetaflat.finite_padic import (
    PrimeLocalValue,
    PADIC_FIXTURES,
    SEKI_FIXTURES,
    antipode_duality_check,
    flat_mod_identity_check,
    hoffman_duality_check,
    hoffman_identity_check,
    is_prime,
    load_thresholds,
    min_passing_prime,
    padic_duality_check,
    primes_in,
    save_thresholds,
    seki_lifting_check,
    zeta_mod,
    zeta_star_mod,
)
from zetaflat.index_algebra import (
    Index,
    coarsenings,
    hoffman_dual,
    indices_of_weight,
    indices_up_to_weight,
)
from zetaflat.mzv_real import zeta_star_trunc, zeta_trunc


def sieve(limit):
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            for j in range(i * i, limit + 1, i):
                flags[j] = False
    return [i for i, f in enumerate(flags) if f]


def test_is_prime_against_sieve():
    want = set(sieve(10000))
    for m in range(10001):
        assert is_prime(m) == (m in want), m


def test_is_prime_large_and_capped():
    assert is_prime((1 << 31) - 1)  # Mersenne
    assert not is_prime((1 << 30) + 1)
    with pytest.raises(ValueError):
        is_prime(1 << 31)
    with pytest.raises(TypeError):
        is_prime(7.0)
    with pytest.raises(TypeError):
        is_prime(True)


def test_primes_in():
    assert primes_in(3, 20) == [3, 5, 7, 11, 13, 17, 19]
    assert primes_in(-5, 2) == [2]
    assert primes_in(24, 28) == []


def test_prime_local_value_validation():
    v = PrimeLocalValue(5, 2, Residue(7, 25))
    assert v.value == 7
    assert str(v) == "7 mod 25"
    with pytest.raises(ValueError):
        PrimeLocalValue(5, 2, Residue(7, 5))


def test_zeta_mod_known_values():
    assert zeta_mod((1,), 5, 1).value == 0
    assert zeta_mod((1,), 5, 2).value == 0
    assert zeta_mod((1,), 2, 1).value == 1
    with pytest.raises(ValueError):
        zeta_mod((2,), 6, 1)
    with pytest.raises(ValueError):
        zeta_mod((2,), 5, 0)


def test_zeta_mod_matches_exact_reduction():
    for k in indices_up_to_weight(4):
        if not k:
            continue
        for p in primes_in(3, 13):
            for n in (1, 2):
                want = Residue.from_fraction(zeta_trunc(k, p), p ** n)
                assert zeta_mod(k, p, n).residue == want, (k, p, n)


def test_zeta_star_mod_two_oracles():
    for k in indices_up_to_weight(4):
        if not k:
            continue
        for p in primes_in(3, 13):
            got = zeta_star_mod(k, p, 2).residue
            assert got == Residue.from_fraction(zeta_star_trunc(k, p), p * p)
            assert got == eval_dp_mod(zeta_star_chain(k), p, p * p)
    assert zeta_star_mod((2,), 7, 1).residue == zeta_mod((2,), 7, 1).residue
    want = Residue.from_fraction(zeta_star_trunc((1, 1), 5), 5)
    assert zeta_star_mod((1, 1), 5, 1).residue == want
    assert zeta_star_mod((1, 1), 2, 1).value == 1


def test_hoffman_duality():
    assert hoffman_duality_check((1,), 5).passed
    assert hoffman_duality_check((2, 1), 7).passed
    assert hoffman_duality_check((1, 2), 11).passed
    assert hoffman_duality_check((2, 1), 11).passed
    for k in indices_up_to_weight(4):
        if not k:
            continue
        for p in primes_in(3, 61):
            assert hoffman_duality_check(k, p).passed, (k, p)


def test_antipode_duality():
    assert antipode_duality_check((2,), 5).passed
    assert antipode_duality_check((1,), 3).passed
    assert antipode_duality_check((1, 1, 1), 7).passed
    for k in indices_up_to_weight(4):
        if not k:
            continue
        for p in primes_in(3, 61):
            assert antipode_duality_check(k, p).passed, (k, p)


def test_star_nonstar_moebius_bridge():
    """The two dualities talk through inclusion-exclusion over commas:
    the strict sum is the alternating sum of weak sums over coarsenings.
    Checked numerically, then used nowhere."""
    for k in indices_up_to_weight(4):
        if not k:
            continue
        for p in primes_in(3, 31):
            total = Residue(0, p)
            for l in coarsenings(k):
                term = zeta_star_mod(l, p).residue
                if (k.depth - l.depth) % 2:
                    term = -term
                total = total + term
            assert total == zeta_mod(k, p).residue, (k, p)


def test_flat_mod_identity():
    assert flat_mod_identity_check((2,), 5).passed
    assert flat_mod_identity_check((1,), 3).passed
    assert flat_mod_identity_check((2, 1), 7).passed
    for k in indices_up_to_weight(4):
        if not k:
            continue
        for p in primes_in(3, 37):
            assert flat_mod_identity_check(k, p).passed, (k, p)


def test_hoffman_binomial_identity():
    r = hoffman_identity_check((2,), 2)
    assert r.passed and r.lhs == "5/4"
    r = hoffman_identity_check((1,), 1)
    assert r.passed and r.lhs == "1/1"
    for n in range(1, 31):
        assert hoffman_identity_check((2, 1), n).passed
    for k in indices_up_to_weight(4):
        if not k:
            continue
        for n in range(1, 21):
            assert hoffman_identity_check(k, n).passed, (k, n)


def test_lifted_checks_reduce_to_mod_p():
    for k in indices_up_to_weight(4):
        if not k:
            continue
        for p in primes_in(3, 31):
            a = padic_duality_check(k, p, 1)
            b = antipode_duality_check(k, p)
            assert (a.lhs, a.rhs, a.passed) == (b.lhs, b.rhs, b.passed)
            c = seki_lifting_check(k, p, 1)
            d = hoffman_duality_check(k, p)
            assert (c.lhs, c.rhs, c.passed) == (d.lhs, d.rhs, d.passed)


def test_lifted_checks_spec_instances():
    assert padic_duality_check((2,), 13, 2).passed
    assert padic_duality_check((1, 1), 11, 3).passed
    assert seki_lifting_check((2,), 11, 2).passed
    assert seki_lifting_check((2, 1), 13, 2).passed


def test_lifted_checks_small_sweep():
    for k in indices_up_to_weight(3):
        if not k:
            continue
        for n in (2, 3):
            for p in primes_in(3, 37):
                assert padic_duality_check(k, p, n).passed, (k, p, n)
                assert seki_lifting_check(k, p, n).passed, (k, p, n)


def test_lifted_value_projects_down():
    for k in [(2,), (1, 2), (2, 1, 1)]:
        for p in (5, 13):
            base = zeta_mod(k, p, 1).value
            for n in (2, 3):
                assert zeta_mod(k, p, n).value % p == base


def test_argument_validation():
    with pytest.raises(ValueError):
        padic_duality_check((), 5, 1)
    with pytest.raises(ValueError):
        seki_lifting_check((2,), 9, 2)
    with pytest.raises(ValueError):
        padic_duality_check((2,), 5, 0)


def test_min_passing_prime_contract():
    class FakeReport:
        def __init__(self, passed):
            self.passed = passed

    calls = []

    def above_eleven(k, p, n):
        calls.append(p)
        return FakeReport(p >= 11)

    assert min_passing_prime(above_eleven, (2,), 2, lo=3, hi=31) == 11
    # walked downward and stopped right below the threshold
    assert calls == [31, 29, 23, 19, 17, 13, 11, 7]

    def never(k, p, n):
        return FakeReport(False)

    assert min_passing_prime(never, (2,), 2, lo=3, hi=31) is None

    def always(k, p, n):
        return FakeReport(True)

    assert min_passing_prime(always, (2,), 2, lo=3, hi=31) == 3


def test_packaged_thresholds_cover_the_grid():
    for name in (PADIC_FIXTURES, SEKI_FIXTURES):
        table = load_thresholds(name)
        for w in range(1, 6):
            for k in indices_of_weight(w):
                for n in (2, 3):
                    assert (Index(k), n) in table, (name, k, n)
        for p0 in table.values():
            assert 3 <= p0 <= 199
            assert is_prime(p0)


def test_threshold_roundtrip_and_override(tmp_path, monkeypatch):
    monkeypatch.setenv("ZETAFLAT_FIXTURES_DIR", str(tmp_path))
    table = {(Index((2, 1)), 2): 5, (Index((3,)), 3): 13}
    path = save_thresholds("roundtrip.txt", table)
    assert path.parent == tmp_path
    assert load_thresholds("roundtrip.txt") == table
    monkeypatch.delenv("ZETAFLAT_FIXTURES_DIR")
    with pytest.raises(FileNotFoundError):
        load_thresholds("roundtrip.txt")


def test_check_inputs_are_rendered_strings():
    r = seki_lifting_check((2, 1), 7, 2)
    assert r.inputs == {"k": "2,1", "p": "7", "n": "2"}
    assert r.check_id == "seki-lifting"
