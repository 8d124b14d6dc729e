"""Compilation and exact evaluation of constrained chain sums.

A chain sum ranges over integer tuples 0 R n_1 R n_2 ... R n_k R N where
each relation R is < or <=, and each position contributes a factor
1/((N - n)^a * n^e).  Truncated multiple harmonic sums, their reflected
Riemann-sum forms, weak-inequality star variants, and the boundary sums
behind the duality discrepancy all compile to this shape.

Two exact evaluators share the compiled form: `eval_enum` enumerates every
tuple directly and is kept as the trusted oracle; `eval_dp` is the
prefix-sum dynamic program used everywhere at scale.  `eval_dp_mod` runs
the dynamic program in Z/m.  All three run on the active kernel backend
(compiled extension or pure Python) and agree bit for bit.

Internally values are integers scaled by lcm(1..N)^degree, so no rational
reduction happens until the final Fraction is formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import backend
from .errors import NonUnitError
from .index_algebra import Index, as_index, boundary_set_tilde


@dataclass(frozen=True)
class Weight:
    """Per-position factor 1/((N - n)^refl * n^harm)."""

    refl: int = 0
    harm: int = 0

    def __post_init__(self):
        if self.refl < 0 or self.harm < 0:
            raise ValueError("weight exponents must be non-negative")
        if self.refl + self.harm < 1:
            raise ValueError("a weight needs total degree at least 1")

    @property
    def degree(self):
        return self.refl + self.harm

    def denominator_at(self, n, upper):
        return (upper - n) ** self.refl * n ** self.harm


HARMONIC = Weight(harm=1)
REFLECTED = Weight(refl=1)


class Position(NamedTuple):
    weight: Weight
    strict_before: bool


@dataclass(frozen=True)
class ChainSpec:
    """A compiled chain: positions with entering relations, plus the
    relation against the upper fence N (strict by default)."""

    positions: tuple
    terminal_strict: bool = True

    def __post_init__(self):
        if not self.positions:
            raise ValueError("a chain needs at least one position")
        for pos in self.positions:
            if not isinstance(pos, Position):
                raise ValueError(f"expected Position, got {pos!r}")

    @property
    def length(self):
        return len(self.positions)

    @property
    def degree(self):
        return sum(p.weight.degree for p in self.positions)


def zeta_chain(k) -> ChainSpec:
    """Strictly increasing chain with factors 1/n_i^k_i."""
    k = as_index(k)
    if not k:
        raise ValueError("need a nonempty index")
    return ChainSpec(tuple(Position(Weight(harm=p), True) for p in k))


def zeta_star_chain(k) -> ChainSpec:
    """Weakly increasing chain (strict against both fences)."""
    k = as_index(k)
    if not k:
        raise ValueError("need a nonempty index")
    return ChainSpec(tuple(
        Position(Weight(harm=p), i == 0) for i, p in enumerate(k)))


def hoffman_weak_chain(k) -> ChainSpec:
    """Weakly increasing chain allowed to reach the fence: 1 <= n_1 <= ... <= n_r <= N."""
    k = as_index(k)
    if not k:
        raise ValueError("need a nonempty index")
    return ChainSpec(tuple(
        Position(Weight(harm=p), i == 0) for i, p in enumerate(k)),
        terminal_strict=False)


def flat_chain(k) -> ChainSpec:
    """The reflected block form of a nonempty index.

    One position per unit of weight; relations are strict exactly where a
    block of k opens (and against both fences); the factor is 1/(N - n) at
    block-opening positions and 1/n elsewhere.  Defined for every index;
    admissibility only matters for the N -> infinity limit.
    """
    return _block_chain(k, REFLECTED, strict_only_at_starts=True)


def flat_support_chain(k) -> ChainSpec:
    """Same tuple set as flat_chain(k) but with every factor 1/n."""
    return _block_chain(k, HARMONIC, strict_only_at_starts=True)


def riemann_chain(k) -> ChainSpec:
    """Fully strict variant of flat_chain(k): the plain Riemann sum shape.

    Only admissible indices are accepted; for the others the sum this
    shape discretizes does not converge.
    """
    k = as_index(k)
    if not k.admissible:
        raise ValueError(f"index {tuple(k)} is not admissible")
    return _block_chain(k, REFLECTED, strict_only_at_starts=False)


def _block_chain(k, start_weight, strict_only_at_starts):
    k = as_index(k)
    if not k:
        raise ValueError("need a nonempty index")
    starts = boundary_set_tilde(k)
    positions = []
    for i in range(1, k.weight + 1):
        w = start_weight if i in starts else HARMONIC
        strict = (i in starts) if strict_only_at_starts else True
        positions.append(Position(w, strict))
    return ChainSpec(tuple(positions))


def decay_chain(a, b) -> ChainSpec:
    """Strict chain with mixed factors 1/((N - n)^a_i * n^b_i).

    Requires a_1 >= 1, b_k >= 1, every a_i + b_i >= 1, and total degree
    at least k + 1; the shape whose value decays like a power of log N
    over N.
    """
    a = tuple(a)
    b = tuple(b)
    if len(a) != len(b) or not a:
        raise ValueError("need matching nonempty exponent tuples")
    if any(x < 0 for x in a + b):
        raise ValueError("exponents must be non-negative")
    if a[0] < 1 or b[-1] < 1:
        raise ValueError("need a_1 >= 1 and b_k >= 1")
    if any(x + y < 1 for x, y in zip(a, b)):
        raise ValueError("every position needs total degree >= 1")
    if sum(a) + sum(b) < len(a) + 1:
        raise ValueError("total degree must exceed the chain length")
    return ChainSpec(tuple(
        Position(Weight(refl=x, harm=y), True) for x, y in zip(a, b)))


def reflect_chain(spec: ChainSpec) -> ChainSpec:
    """Reverse a chain through n -> N - n.

    Positions reverse and their factor exponents swap roles; the relation
    entering the first new position is the old terminal relation, relation
    j >= 2 is the old relation entering mirror position, and the new
    terminal relation is the old first one.  Value-preserving for any spec
    and any N.
    """
    k = spec.length
    old = spec.positions
    positions = []
    for j in range(k):
        mirror = old[k - 1 - j]
        w = Weight(refl=mirror.weight.harm, harm=mirror.weight.refl)
        strict = spec.terminal_strict if j == 0 else old[k - j].strict_before
        positions.append(Position(w, strict))
    return ChainSpec(tuple(positions), terminal_strict=old[0].strict_before)


def equality_strata(spec: ChainSpec):
    """Split a chain over the equality pattern of its weak relations.

    Yields (pattern, merged) pairs, one per subset of the weak interior
    relations: the pattern is the frozenset of (0-based) positions fused
    into their predecessor, and merged is the fully strict chain with the
    tied positions fused and their exponents added.  The values of the
    merged chains over a common fence sum to the value of `spec`.
    Requires a chain that is strict against both fences.
    """
    if not spec.positions[0].strict_before or not spec.terminal_strict:
        raise ValueError("stratification needs strict fences")
    weak = [i for i in range(1, spec.length) if not spec.positions[i].strict_before]
    for mask in range(1 << len(weak)):
        tied = frozenset(weak[j] for j in range(len(weak)) if mask >> j & 1)
        merged_weights = []
        for i, pos in enumerate(spec.positions):
            if i in tied:
                prev = merged_weights[-1]
                merged_weights[-1] = Weight(
                    refl=prev.refl + pos.weight.refl,
                    harm=prev.harm + pos.weight.harm)
            else:
                merged_weights.append(pos.weight)
        merged = ChainSpec(tuple(Position(w, True) for w in merged_weights))
        yield tied, merged


@lru_cache(maxsize=64)
def _lcm_upto(n):
    return math.lcm(*range(1, n + 1)) if n >= 1 else 1


def _bands(spec, upper):
    k = spec.length
    stricts = [p.strict_before for p in spec.positions]
    lbs = [0] * k
    lbs[0] = 1 if stricts[0] else 0
    for i in range(1, k):
        lbs[i] = lbs[i - 1] + (1 if stricts[i] else 0)
    ubs = [0] * k
    ubs[k - 1] = upper - 1 if spec.terminal_strict else upper
    for i in range(k - 2, -1, -1):
        ubs[i] = ubs[i + 1] - (1 if stricts[i + 1] else 0)
    return stricts, lbs, ubs


def _plan(spec, upper):
    """Denominator tables and bands for evaluating `spec` at fence `upper`.

    Returns None when the tuple set is empty.  Raises if some reachable
    point has a zero denominator (a weight undefined there).
    """
    if upper < 0:
        raise ValueError("upper fence must be non-negative")
    stricts, lbs, ubs = _bands(spec, upper)
    if any(lb > ub for lb, ub in zip(lbs, ubs)):
        return None
    dens = []
    for i, pos in enumerate(spec.positions):
        row = [0] * (upper + 1)
        for n in range(lbs[i], ubs[i] + 1):
            d = pos.weight.denominator_at(n, upper)
            if d == 0:
                raise ValueError(
                    f"weight at position {i + 1} undefined at n={n} "
                    f"(zero denominator with fence {upper})")
            row[n] = d
        dens.append(row)
    return dens, stricts, lbs, ubs


def eval_enum(spec: ChainSpec, upper) -> Fraction:
    """Sum the chain by direct enumeration (the oracle evaluator)."""
    plan = _plan(spec, upper)
    if plan is None:
        return Fraction(0)
    dens, stricts, lbs, ubs = plan
    lcm = _lcm_upto(upper)
    scale = lcm ** spec.degree
    num = backend.enum_sum(dens, stricts, lbs, ubs, scale)
    return Fraction(num, scale)


def eval_dp(spec: ChainSpec, upper) -> Fraction:
    """Sum the chain by the prefix-sum dynamic program (the workhorse)."""
    plan = _plan(spec, upper)
    if plan is None:
        return Fraction(0)
    dens, stricts, lbs, ubs = plan
    lcm = _lcm_upto(upper)
    lams = [lcm ** p.weight.degree for p in spec.positions]
    num = backend.dp_sum(dens, stricts, lbs, ubs, lams)
    return Fraction(num, lcm ** spec.degree)


def eval_dp_mod(spec: ChainSpec, upper, modulus) -> Residue:
    """Sum the chain in Z/modulus.

    Every per-position denominator on the feasible band must be a unit;
    otherwise NonUnitError identifies the first offender.  When the exact
    value has a denominator coprime to the modulus, this equals the exact
    value reduced.
    """
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    plan = _plan(spec, upper)
    if plan is None:
        return Residue(0, modulus)
    dens, stricts, lbs, ubs = plan
    dens_mod = [[d % modulus for d in row] for row in dens]
    value = backend.dp_sum_mod(dens_mod, stricts, lbs, ubs, modulus)
    return Residue(value, modulus)


@dataclass(frozen=True)
class Residue:
    """An element of Z/modulus with explicit, checked inversion."""

    value: int
    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise ValueError("modulus must be an integer >= 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _match(self, other):
        if not isinstance(other, Residue):
            raise TypeError(f"cannot combine Residue with {other!r}")
        if other.modulus != self.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")
        return other

    def __add__(self, other):
        other = self._match(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other):
        other = self._match(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other):
        other = self._match(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def inverse(self) -> Residue:
        try:
            inv = pow(self.value, -1, self.modulus)
        except ValueError:
            raise NonUnitError(
                f"{self.value} is not a unit mod {self.modulus}",
                value=self.value, modulus=self.modulus) from None
        return Residue(inv, self.modulus)

    @classmethod
    def from_fraction(cls, q, modulus) -> Residue:
        q = Fraction(q)
        den = cls(q.denominator, modulus).inverse()
        return cls(q.numerator, modulus) * den

    def __str__(self):
        return f"{self.value} mod {self.modulus}"
