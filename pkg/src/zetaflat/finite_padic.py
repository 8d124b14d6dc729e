"""Duality congruences for truncated sums at prime fences.

Everything here works one prime coordinate at a time: a congruence that
holds "for all primes" (or all but finitely many) is checked by reducing
the exact truncated sums mod p, or mod p^n for the lifted statements, and
sweeping p over a configurable range.  No completed quotient object is
ever built; a sweep over a prime range is the desk-scale certificate.

The lifted congruences mod p^n with n >= 2 can genuinely fail at small
primes.  For those, the sweep-then-pin protocol applies: a one-off sweep
records the smallest prime P0 from which the check passes through the top
of the range, and the pinned thresholds live in a committed fixtures file
(see `load_thresholds`).  Thresholds are measured, never guessed.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

from .chainsum import (
    Residue,
    eval_dp,
    eval_dp_mod,
    flat_chain,
    flat_support_chain,
    hoffman_weak_chain,
    zeta_chain,
)
from .index_algebra import (
    Index,
    as_index,
    coarsenings,
    format_index,
    hoffman_dual,
    oplus,
    oslash,
    parse_index,
    refinements,
    refines,
    shift_vectors,
)
from .reports import make_report

_MR_BASES = (2, 7, 61)
_PRIME_CAP = 1 << 31


def is_prime(m) -> bool:
    """Deterministic Miller-Rabin with bases 2, 7, 61.

    This base set is exact for every m below 4759123141, comfortably
    above the enforced cap of 2^31.
    """
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"need an integer, got {m!r}")
    if m >= _PRIME_CAP:
        raise ValueError(f"primality testing is capped below 2^31, got {m}")
    if m < 2:
        return False
    for b in _MR_BASES:
        if m == b:
            return True
        if m % b == 0:
            return False
    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def primes_in(lo, hi) -> list:
    """All primes p with lo <= p <= hi, ascending."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def _check_prime_exponent(p, n):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"exponent must be a positive integer, got {n!r}")


@dataclass(frozen=True)
class PrimeLocalValue:
    """One prime coordinate of a truncated sum: a residue mod p^n."""

    p: int
    n: int
    residue: Residue

    def __post_init__(self):
        if self.residue.modulus != self.p ** self.n:
            raise ValueError(
                f"residue modulus {self.residue.modulus} is not "
                f"{self.p}^{self.n}")

    @property
    def value(self):
        return self.residue.value

    def __str__(self):
        return str(self.residue)


@lru_cache(maxsize=None)
def _zeta_residue(k, p, n):
    return eval_dp_mod(zeta_chain(k), p, p ** n)


def zeta_mod(k, p, n=1) -> PrimeLocalValue:
    """The strict truncated sum at fence p, reduced mod p^n.

    Every denominator lies in [1, p-1], so reduction never meets a
    non-unit.
    """
    k = as_index(k)
    _check_prime_exponent(p, n)
    return PrimeLocalValue(p, n, _zeta_residue(tuple(k), p, n))


def zeta_star_mod(k, p, n=1) -> PrimeLocalValue:
    """The weak-inequality variant mod p^n, as a sum over coarsenings."""
    k = as_index(k)
    _check_prime_exponent(p, n)
    total = Residue(0, p ** n)
    for l in coarsenings(k):
        total = total + _zeta_residue(tuple(l), p, n)
    return PrimeLocalValue(p, n, total)


def hoffman_duality_check(k, p):
    """Check that the weak sum at k and at its Hoffman dual cancel mod p."""
    started = time.perf_counter()
    k = as_index(k)
    lhs = zeta_star_mod(k, p).residue
    rhs = -zeta_star_mod(hoffman_dual(k), p).residue
    return make_report(
        "hoffman-duality", {"k": format_index(k), "p": p}, lhs, rhs, started)


def antipode_duality_check(k, p):
    """Check the refinement-sum reflection of the strict sum mod p.

    The strict sum at k equals (-1)^depth times the sum of the strict
    sums over all refinements of k.
    """
    started = time.perf_counter()
    k = as_index(k)
    _check_prime_exponent(p, 1)
    lhs = _zeta_residue(tuple(k), p, 1)
    total = Residue(0, p)
    for l in refinements(k):
        total = total + _zeta_residue(tuple(l), p, 1)
    rhs = -total if k.depth % 2 else total
    return make_report(
        "antipode-duality", {"k": format_index(k), "p": p}, lhs, rhs, started)


def flat_mod_identity_check(k, p):
    """Check the mod-p collapse of the reflected block sum.

    At fence p the reflected factors 1/(p-m) turn into -1/m, one sign per
    block, so the block sum is congruent to (-1)^depth times the plain
    harmonic sum over the same tuple set.
    """
    started = time.perf_counter()
    k = as_index(k)
    _check_prime_exponent(p, 1)
    lhs = eval_dp_mod(flat_chain(k), p, p)
    support = eval_dp_mod(flat_support_chain(k), p, p)
    rhs = -support if k.depth % 2 else support
    return make_report(
        "flat-mod", {"k": format_index(k), "p": p}, lhs, rhs, started)


def _weak_end_table(l, upper):
    """Exact table T[v] of weak chains for l ending exactly at v <= upper."""
    table = [Fraction(0)] * (upper + 1)
    for v in range(1, upper + 1):
        table[v] = Fraction(1, v ** l[0])
    for e in l[1:]:
        run = Fraction(0)
        nxt = [Fraction(0)] * (upper + 1)
        for v in range(1, upper + 1):
            run += table[v]
            nxt[v] = run / v ** e
        table = nxt
    return table


def hoffman_identity_check(k, upper):
    """Check the binomial identity between a weak chain and its dual.

    The weak chain for k reaching the fence equals the weak chain for the
    Hoffman dual l with an alternating binomial attached to the final
    variable: sum over 1 <= m_1 <= ... <= m_s <= N of
    (-1)^(m_s - 1) binom(N, m_s) / (m_1^l_1 ... m_s^l_s).  Exact in Q.
    """
    started = time.perf_counter()
    k = as_index(k)
    if upper < 1:
        raise ValueError("the fence must be at least 1")
    lhs = eval_dp(hoffman_weak_chain(k), upper)
    table = _weak_end_table(tuple(hoffman_dual(k)), upper)
    rhs = Fraction(0)
    for v in range(1, upper + 1):
        sign = 1 if v % 2 else -1
        rhs += sign * comb(upper, v) * table[v]
    return make_report(
        "hoffman-identity", {"k": format_index(k), "N": upper},
        lhs, rhs, started)


def padic_duality_check(k, p, n=1):
    """Check the lifted reflection of the strict sum mod p^n.

    The strict sum at k is congruent mod p^n to (-1)^depth times
    sum over 0 <= i < n of p^i times the strict sums at all indices m
    squeezed between l (+) k and l (/) k, for every non-negative shift
    vector l of total i.  At n=1 only i=0 survives and the squeeze
    degenerates to the plain refinement sum.
    """
    started = time.perf_counter()
    k = as_index(k)
    if not k:
        raise ValueError("need a nonempty index")
    _check_prime_exponent(p, n)
    mod = p ** n
    lhs = _zeta_residue(tuple(k), p, n)
    total = Residue(0, mod)
    for i in range(n):
        weight = Residue(p ** i, mod)
        for shift in shift_vectors(k.depth, i):
            lo = oplus(shift, k)
            hi = oslash(shift, k)
            for m in refinements(lo):
                if refines(m, hi):
                    total = total + _zeta_residue(tuple(m), p, n) * weight
    rhs = -total if k.depth % 2 else total
    return make_report(
        "padic-duality",
        {"k": format_index(k), "p": p, "n": n}, lhs, rhs, started)


def seki_lifting_check(k, p, n=1):
    """Check the lifted cancellation of weak sums with appended ones.

    Both truncated series sum p^i times the weak sum at the index with i
    ones appended, i < n; the check passes when the series for k and for
    its Hoffman dual cancel mod p^n.  At n=1 this is the plain weak-sum
    cancellation mod p.
    """
    started = time.perf_counter()
    k = as_index(k)
    if not k:
        raise ValueError("need a nonempty index")
    _check_prime_exponent(p, n)
    mod = p ** n

    def series(base):
        total = Residue(0, mod)
        for i in range(n):
            ext = Index(tuple(base) + (1,) * i)
            total = total + zeta_star_mod(ext, p, n).residue * Residue(p ** i, mod)
        return total

    lhs = series(k)
    rhs = -series(hoffman_dual(k))
    return make_report(
        "seki-lifting",
        {"k": format_index(k), "p": p, "n": n}, lhs, rhs, started)


def min_passing_prime(check, k, n, lo=3, hi=199):
    """Smallest P0 with `check(k, p, n)` passing for every prime in [P0, hi].

    Walks the range downward and stops at the first failure, so the
    result certifies the whole tail.  Returns None when even the largest
    prime in range fails.
    """
    best = None
    for p in reversed(primes_in(lo, hi)):
        if not check(k, p, n).passed:
            break
        best = p
    return best


PADIC_FIXTURES = "padic_thresholds.txt"
SEKI_FIXTURES = "seki_thresholds.txt"

_DATA_DIR = Path(__file__).resolve().parent / "data"


def fixtures_dir() -> Path:
    """Directory holding pinned threshold files.

    Defaults to the packaged data directory; the ZETAFLAT_FIXTURES_DIR
    environment variable points somewhere else (used by the pinning tool
    and by tests that exercise regression detection).
    """
    override = os.environ.get("ZETAFLAT_FIXTURES_DIR")
    return Path(override) if override else _DATA_DIR


def load_thresholds(name) -> dict:
    """Read an 'index;n;P0' fixtures file into {(index, n): P0}."""
    table = {}
    for raw in (fixtures_dir() / name).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        text, n, p0 = line.split(";")
        table[(parse_index(text), int(n))] = int(p0)
    return table


def save_thresholds(name, table) -> Path:
    """Write {(index, n): P0} in the line format load_thresholds reads."""
    path = fixtures_dir() / name
    lines = [f"{format_index(key)};{n};{p0}"
             for (key, n), p0 in sorted(table.items())]
    path.write_text("\n".join(lines) + "\n")
    return path
