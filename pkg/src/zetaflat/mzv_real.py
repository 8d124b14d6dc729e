"""Truncated multiple harmonic sums over the rationals.

The central pair: the strict truncated sum

    zeta_trunc(k, N)  =  sum over 0 < n_1 < ... < n_r < N of prod 1/n_i^k_i

and its reflected block form zeta_flat(k, N), a sum with one variable per
unit of weight, weak inequalities inside blocks, and a factor 1/(N - n) at
each block opening.  The two are equal for every admissible k and every N;
this module also carries the fully strict Riemann-sum variant (which is
NOT equal), the weak-inequality star sum, the mixed decay sums, the exact
duality discrepancy decomposition, and the convergence table for the
duality defect.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .chainsum import (
    ChainSpec,
    decay_chain,
    equality_strata,
    eval_dp,
    eval_enum,
    flat_chain,
    reflect_chain,
    riemann_chain,
    zeta_chain,
    zeta_star_chain,
)
from .index_algebra import Index, as_index, coarsenings, dual, format_index
from .reports import decimal_str, make_report


def _eval(spec, upper, method):
    if method == "dp":
        return eval_dp(spec, upper)
    if method == "enum":
        return eval_enum(spec, upper)
    raise ValueError(f"unknown evaluation method {method!r}")


def zeta_trunc(k, upper, method="dp") -> Fraction:
    """Strict truncated sum of depth len(k) below the fence `upper`."""
    return _eval(zeta_chain(k), upper, method)


def zeta_star_trunc(k, upper, method="dp") -> Fraction:
    """Weak-inequality variant; equals the sum of zeta_trunc over coarsenings."""
    k = as_index(k)
    total = Fraction(0)
    for l in coarsenings(k):
        total += zeta_trunc(l, upper, method)
    return total


def zeta_flat(k, upper, method="dp") -> Fraction:
    """Reflected block form of a nonempty index; equals zeta_trunc."""
    return _eval(flat_chain(k), upper, method)


def riemann_sum(k, upper, method="dp") -> Fraction:
    """Fully strict variant of zeta_flat; converges to the same limit but
    differs from zeta_trunc at finite fences (the weak in-block
    inequalities carry real mass)."""
    return _eval(riemann_chain(k), upper, method)


def decay_sum(a, b, upper, method="dp") -> Fraction:
    """Strict chain sum with mixed factors 1/((N - n)^a_i * n^b_i)."""
    return _eval(decay_chain(a, b), upper, method)


@dataclass(frozen=True)
class DiscrepancyTerm:
    sign: int
    tied: frozenset
    spec: ChainSpec
    value: Fraction


@dataclass(frozen=True)
class DiscrepancyBreakdown:
    """Exact decomposition of zeta_trunc(k, N) - zeta_trunc(dual(k), N).

    The defect of the duality at a finite fence is a signed sum of fully
    strict chain sums with mixed factors: the strata of the reflected block
    form of k that tie at least one weak relation, minus the strata of the
    reflected image of the block form of dual(k).  `lhs` is the defect;
    the term values always add up to it exactly.
    """

    index: Index
    upper: int
    lhs: Fraction
    terms: tuple

    def signed_total(self) -> Fraction:
        return sum((t.sign * t.value for t in self.terms), Fraction(0))

    @property
    def holds(self) -> bool:
        return self.lhs == self.signed_total()


def discrepancy(k, upper, method="dp") -> DiscrepancyBreakdown:
    """Decompose the duality defect of an admissible index exactly."""
    k = as_index(k)
    kd = dual(k)
    side_a = flat_chain(k)
    side_b = reflect_chain(flat_chain(kd))
    # Reflecting the dual's block form reproduces the weights of k's own
    # block form position by position; only the relation pattern differs.
    # That is the combinatorial heart of the duality, so check it here.
    for p, q in zip(side_a.positions, side_b.positions):
        if p.weight != q.weight:
            raise AssertionError(
                f"weight mismatch between block forms of {tuple(k)} and its dual")
    lhs = zeta_trunc(k, upper, method) - zeta_trunc(kd, upper, method)
    terms = []
    for sign, spec in ((1, side_a), (-1, side_b)):
        for tied, merged in equality_strata(spec):
            if not tied:
                continue
            terms.append(DiscrepancyTerm(
                sign=sign, tied=tied, spec=merged,
                value=_eval(merged, upper, method)))
    return DiscrepancyBreakdown(index=k, upper=upper, lhs=lhs, terms=tuple(terms))


def log2_discretization_check(upper):
    """Alternating harmonic partial sum against its reflected tail form.

    sum_{n=1}^{2N-1} (-1)^(n-1)/n  ==  sum_{n=0}^{N-1} 1/(N+n), exactly.
    """
    started = time.perf_counter()
    n = upper
    lhs = sum((Fraction((-1) ** (j - 1), j) for j in range(1, 2 * n)), Fraction(0))
    rhs = sum((Fraction(1, n + j) for j in range(n)), Fraction(0))
    return make_report("log2", {"upper": n}, lhs, rhs, started)


@dataclass(frozen=True)
class ConvergenceRow:
    upper: int
    diff: Fraction
    decimal: str


def duality_convergence(k, uppers, method="dp") -> list:
    """Table of |zeta_trunc(k, N) - zeta_trunc(dual(k), N)| over fences N."""
    k = as_index(k)
    kd = dual(k)
    rows = []
    for n in uppers:
        diff = abs(zeta_trunc(k, n, method) - zeta_trunc(kd, n, method))
        rows.append(ConvergenceRow(upper=n, diff=diff, decimal=decimal_str(diff)))
    return rows
