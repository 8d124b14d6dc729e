"""Connectors, connected sums, and the telescoping route between the
strict truncated sum and its reflected block form.

The connector C_N(n, m) = binom(m, n) / binom(N, n) couples a strict
ascending chain on the left to a reflected block chain on the right.  Two
transport identities move one exponent at a time across the connector;
depth many applications telescope zeta_trunc(k, N+1) into
zeta_flat(k, N+1), and `telescope` materializes the whole route as a
trace of equal-valued connected sums.

The right-side chain follows the tilde relation rule: the gap AFTER
position j (the last gap ending at the fence N) is strict exactly when j
opens a block of the right index.  Every block opening is followed by a
strict gap, which is precisely what keeps the reflected factors
1/(N - m) away from zero.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .chainsum import eval_dp, flat_chain, zeta_chain
from .index_algebra import Index, as_index, boundary_set_tilde, format_index
from .reports import fraction_str, make_report


@lru_cache(maxsize=None)
def connector(upper, n, m) -> Fraction:
    """binom(m, n) / binom(N, n) for 0 <= n <= m <= N."""
    if not 0 <= n <= m <= upper:
        raise ValueError(f"need 0 <= n <= m <= N, got n={n}, m={m}, N={upper}")
    return Fraction(comb(m, n), comb(upper, n))


def transport_weight_down_check(upper, n, m):
    """A harmonic factor crosses the connector:

    (1/n) C_N(n, m)  ==  sum_{n <= b <= m} C_N(n, b) (1/b),  0 < n <= m <= N.
    """
    started = time.perf_counter()
    if not 0 < n <= m <= upper:
        raise ValueError(f"need 0 < n <= m <= N, got n={n}, m={m}, N={upper}")
    lhs = Fraction(1, n) * connector(upper, n, m)
    rhs = sum((connector(upper, n, b) * Fraction(1, b) for b in range(n, m + 1)),
              Fraction(0))
    return make_report("transport1", {"N": upper, "n": n, "m": m},
                       lhs, rhs, started)


def transport_weight_up_check(upper, n, m):
    """A harmonic factor re-emerges reflected on the far side:

    sum_{n < a <= m} (1/a) C_N(a, m)  ==  sum_{n <= b < m} C_N(n, b) / (N - b),
    for 0 <= n < m <= N.
    """
    started = time.perf_counter()
    if not 0 <= n < m <= upper:
        raise ValueError(f"need 0 <= n < m <= N, got n={n}, m={m}, N={upper}")
    lhs = sum((Fraction(1, a) * connector(upper, a, m) for a in range(n + 1, m + 1)),
              Fraction(0))
    rhs = sum((connector(upper, n, b) * Fraction(1, upper - b)
               for b in range(n, m)), Fraction(0))
    return make_report("transport2", {"N": upper, "n": n, "m": m},
                       lhs, rhs, started)


def connector_difference_failures(upper):
    """One-step difference identities behind the transports.

    For 0 < n < b <= N:  (1/n)(C_N(n,b) - C_N(n,b-1)) == C_N(n,b)/b.
    For 0 < a <= b < N:  (1/a)(C_N(a,b+1) - C_N(a,b))
                             == (C_N(a-1,b) - C_N(a,b))/(N-b).

    Returns the (kind, first, second) triples that fail; empty means both
    families hold everywhere at this N.
    """
    bad = []
    for b in range(1, upper + 1):
        for n in range(1, b):
            lhs = Fraction(1, n) * (connector(upper, n, b) - connector(upper, n, b - 1))
            rhs = connector(upper, n, b) * Fraction(1, b)
            if lhs != rhs:
                bad.append(("step-down", n, b))
    for b in range(1, upper):
        for a in range(1, b + 1):
            lhs = Fraction(1, a) * (connector(upper, a, b + 1) - connector(upper, a, b))
            rhs = (connector(upper, a - 1, b) - connector(upper, a, b)) * Fraction(1, upper - b)
            if lhs != rhs:
                bad.append(("step-up", a, b))
    return bad


def _left_table(k, upper):
    """A[v] = sum over 0 < n_1 < ... < n_r = v of prod 1/n_i^k_i."""
    front = [Fraction(0)] * (upper + 1)
    for v in range(1, upper + 1):
        front[v] = Fraction(1, v ** k[0])
    for exp in k[1:]:
        nxt = [Fraction(0)] * (upper + 1)
        run = Fraction(0)
        for v in range(1, upper + 1):
            run += front[v - 1]
            if run:
                nxt[v] = run * Fraction(1, v ** exp)
        front = nxt
    return front


def _right_table(l, upper):
    """B[u] = reflected block sum over tilde-rule chains with m_1 = u."""
    w = l.weight
    starts = boundary_set_tilde(l)

    def factor(j, m):
        return (Fraction(1, upper - m) if j in starts else Fraction(1, m))

    top = upper - 1 if w in starts else upper
    table = [Fraction(0)] * (upper + 2)
    for m in range(1, top + 1):
        table[m] = factor(w, m)
    for j in range(w - 1, 0, -1):
        shift = 1 if j in starts else 0
        suffix = [Fraction(0)] * (upper + 2)
        for m in range(upper, 0, -1):
            suffix[m] = suffix[m + 1] + table[m]
        nxt = [Fraction(0)] * (upper + 2)
        for m in range(1, upper + 1):
            tail = suffix[m + shift] if m + shift <= upper else Fraction(0)
            if tail:
                nxt[m] = factor(j, m) * tail
        table = nxt
    return table


def connected_sum(upper, left, right) -> Fraction:
    """The connector-coupled double sum Z_N(left | right).

    Boundary cases are definitions, not computations: an empty right side
    means zeta_trunc(left, N+1), an empty left side zeta_flat(right, N+1).
    Both sides empty is rejected.
    """
    left = as_index(left)
    right = as_index(right)
    if upper < 1:
        raise ValueError("the fence N must be at least 1")
    if not left and not right:
        raise ValueError("connected sum needs at least one nonempty side")
    if not right:
        return eval_dp(zeta_chain(left), upper + 1)
    if not left:
        return eval_dp(flat_chain(right), upper + 1)
    a = _left_table(left, upper)
    b = _right_table(right, upper)
    total = Fraction(0)
    for u in range(1, upper + 1):
        if not b[u]:
            continue
        inner = Fraction(0)
        for v in range(1, u + 1):
            if a[v]:
                inner += a[v] * connector(upper, v, u)
        total += inner * b[u]
    return total


def transport_step_check(upper, head, tail, rest):
    """One telescoping move: the exponent `tail` crosses the connector.

    Checks Z_N(head + (tail) | rest) == Z_N(head | (tail) + rest).  With
    empty `head` this lands on the left boundary convention, with empty
    `rest` it starts from the right one, and with both empty it is the
    depth-one identity between the two conventions.
    """
    started = time.perf_counter()
    head = as_index(head)
    rest = as_index(rest)
    if not isinstance(tail, int) or tail < 1:
        raise ValueError(f"the transported exponent must be a positive integer, got {tail!r}")
    lhs = connected_sum(upper, Index(tuple(head) + (tail,)), rest)
    rhs = connected_sum(upper, head, Index((tail,) + tuple(rest)))
    return make_report(
        "transport-step",
        {"N": upper, "head": format_index(head) or "-",
         "tail": tail, "rest": format_index(rest) or "-"},
        lhs, rhs, started)


@dataclass(frozen=True)
class TelescopeStage:
    left: Index
    right: Index
    value: Fraction

    def line(self, upper) -> str:
        return (f"Z_{upper}({format_index(self.left)} | "
                f"{format_index(self.right)}) = {fraction_str(self.value)}")


@dataclass(frozen=True)
class TelescopeTrace:
    """The full telescoping route for one index at one fence.

    Stage j carries left = k[: r - j] and right = k[r - j :]; stage 0 is
    the strict truncated sum at N+1, stage r the reflected block form at
    N+1, and every stage in between a genuine connected sum.  All stage
    values are equal exactly when the route telescopes.
    """

    index: Index
    upper: int
    stages: tuple

    @property
    def all_equal(self) -> bool:
        return all(s.value == self.stages[0].value for s in self.stages)

    def to_text(self) -> str:
        return "\n".join(s.line(self.upper) for s in self.stages)

    def to_json_dict(self) -> dict:
        return {
            "index": format_index(self.index),
            "N": self.upper,
            "stages": [
                {"left": format_index(s.left), "right": format_index(s.right),
                 "value": fraction_str(s.value)}
                for s in self.stages
            ],
            "all_equal": self.all_equal,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def telescope(k, upper) -> TelescopeTrace:
    """Evaluate every stage of the telescoping route for a nonempty index."""
    k = as_index(k)
    if not k:
        raise ValueError("need a nonempty index")
    if upper < 1:
        raise ValueError("the fence N must be at least 1")
    r = k.depth
    stages = []
    for j in range(r + 1):
        left = Index(k[:r - j])
        right = Index(k[r - j:])
        stages.append(TelescopeStage(
            left=left, right=right, value=connected_sum(upper, left, right)))
    return TelescopeTrace(index=k, upper=upper, stages=tuple(stages))
