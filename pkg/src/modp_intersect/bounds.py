"""Binomial coefficients, theorem bound formulas and hypothesis dispatch.

Bound values are exact big integers; F_p arithmetic enters only through
the binomial-basis transform used by the linear-form checkers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional, Sequence

from .errors import PreconditionUnmet, UnknownTag
from .gfp import PrimeModulus

if TYPE_CHECKING:  # pragma: no cover
    from .families import SetFamily


def binom(n: int, k: int) -> int:
    """Exact C(n, k); zero when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative: {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def binom_sum(n: int, lo: int, hi: int) -> int:
    """Sum of C(n, i) for lo <= i <= hi, with out-of-range terms clamped to 0."""
    return sum(binom(n, i) for i in range(max(lo, 0), hi + 1))


@dataclass(frozen=True)
class IntersectionSpec:
    """The parameter tuple (p, K, L).

    K holds the admissible member sizes mod p, L the admissible pairwise
    intersection sizes mod p.  Both are nonempty, strictly increasing,
    disjoint subsets of {0, ..., p-1}.
    """

    modulus: PrimeModulus
    K: tuple[int, ...]
    L: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.modulus.p
        object.__setattr__(self, "K", tuple(self.K))
        object.__setattr__(self, "L", tuple(self.L))
        for name, values in (("K", self.K), ("L", self.L)):
            if not values:
                raise ValueError(f"{name} must be nonempty")
            if any(not 0 <= v < p for v in values):
                raise ValueError(f"{name} entries must lie in [0, {p - 1}]: {values}")
            if any(a >= b for a, b in zip(values, values[1:])):
                raise ValueError(f"{name} must be strictly increasing: {values}")
        if set(self.K) & set(self.L):
            raise ValueError(f"K and L must be disjoint: {self.K} vs {self.L}")

    @classmethod
    def of(cls, p: int, K: Sequence[int], L: Sequence[int]) -> "IntersectionSpec":
        return cls(PrimeModulus(p), tuple(K), tuple(L))

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def r(self) -> int:
        return len(self.K)

    @property
    def s(self) -> int:
        return len(self.L)

    @property
    def k_min(self) -> int:
        return self.K[0]

    @property
    def k_max(self) -> int:
        return self.K[-1]


class TheoremTag(str, Enum):
    """Fixed enumeration of the implemented bound formulas."""

    RW = "RW"
    FW = "FW"
    FW2 = "FW2"
    ABS = "ABS"
    SNEVILY = "Snevily"
    QR = "QR"
    HK = "HK"
    CHEN_LIU = "ChenLiu"
    LIU_YANG_1 = "LiuYang1"
    LIU_YANG_2 = "LiuYang2"
    MAIN = "Main"
    COR = "Cor"


# Tags whose hypothesis needs an actual family (uniformity), not just (n, p, K, L).
FAMILY_DEPENDENT_TAGS = frozenset({TheoremTag.RW, TheoremTag.FW2})


def bound_value(tag: TheoremTag, n: int, spec: IntersectionSpec) -> int:
    """Exact value of the named bound formula at ground-set size n."""
    if n < 1:
        raise PreconditionUnmet(f"n must be at least 1: {n}")
    try:
        tag = TheoremTag(tag)
    except ValueError:
        raise UnknownTag(f"unknown theorem tag: {tag!r}") from None
    s, r = spec.s, spec.r
    if tag in (TheoremTag.RW, TheoremTag.FW2):
        return binom(n, s)
    if tag is TheoremTag.FW:
        return binom_sum(n, 0, s)
    if tag in (TheoremTag.ABS, TheoremTag.QR, TheoremTag.HK):
        return binom_sum(n, s - r + 1, s)
    if tag is TheoremTag.SNEVILY:
        return binom_sum(n - 1, 0, s)
    # ChenLiu, LiuYang1, LiuYang2, Main, Cor share the (n-1)-row window.
    return binom_sum(n - 1, s - 2 * r + 1, s)


@dataclass(frozen=True)
class BoundEntry:
    tag: TheoremTag
    holds: bool
    value: Optional[int]
    family_dependent: bool = False


@dataclass(frozen=True)
class BoundReport:
    """Per-theorem applicability and bound table for one instance."""

    n: int
    spec: IntersectionSpec
    entries: tuple[BoundEntry, ...]

    def entry(self, tag: TheoremTag) -> BoundEntry:
        for e in self.entries:
            if e.tag is tag:
                return e
        raise UnknownTag(f"unknown theorem tag: {tag!r}")

    def applicable(self) -> tuple[BoundEntry, ...]:
        return tuple(e for e in self.entries if e.holds)


def _hypothesis_holds(tag: TheoremTag, n: int, spec: IntersectionSpec,
                      family: "Optional[SetFamily]") -> bool:
    s, r, p = spec.s, spec.r, spec.p
    if tag is TheoremTag.RW:
        # Needs uniformity plus exact (not mod-p) intersection sizes in L.
        if family is None or family.m == 0 or not family.is_uniform():
            return False
        lset = set(spec.L)
        return all(c in lset for c in family.pairwise_intersection_sizes())
    if tag is TheoremTag.FW2:
        if family is None or family.m == 0 or not family.is_uniform():
            return False
        return family.uniform_size() % p not in set(spec.L)
    if tag is TheoremTag.FW or tag is TheoremTag.SNEVILY:
        return True  # disjointness of K and L is already a spec invariant
    if tag in (TheoremTag.ABS, TheoremTag.LIU_YANG_2):
        return r * (s - r + 1) <= p - 1 and n >= s + spec.k_max
    if tag is TheoremTag.QR:
        return n >= 2 * s - r
    if tag in (TheoremTag.HK, TheoremTag.COR):
        return n >= s + spec.k_max
    if tag is TheoremTag.CHEN_LIU:
        return spec.k_min > max(spec.L)
    if tag is TheoremTag.LIU_YANG_1:
        return all(k > s - r for k in spec.K)
    if tag is TheoremTag.MAIN:
        return n >= 2 * s - 2 * r + 1
    raise UnknownTag(f"unknown theorem tag: {tag!r}")


def applicability(n: int, spec: IntersectionSpec,
                  family: "Optional[SetFamily]" = None) -> BoundReport:
    """Evaluate every theorem hypothesis exactly and attach bounds that apply.

    The uniformity-based tags (RW, FW2) depend on the family, not just the
    parameters; without a family they are reported as not holding and
    flagged family-dependent.
    """
    if n < 1:
        raise PreconditionUnmet(f"n must be at least 1: {n}")
    entries = []
    for tag in TheoremTag:
        holds = _hypothesis_holds(tag, n, spec, family)
        entries.append(BoundEntry(
            tag=tag,
            holds=holds,
            value=bound_value(tag, n, spec) if holds else None,
            family_dependent=tag in FAMILY_DEPENDENT_TAGS,
        ))
    return BoundReport(n=n, spec=spec, entries=tuple(entries))


def pascal_equivalence_check(n: int, s: int, r: int) -> bool:
    """Whether the (n-1)-row window sum equals its alternating n-row form.

    The two closed forms are sum_{i=s-2r+1..s} C(n-1, i) and
    sum_{j=0..r-1} C(n, s-2j); they must agree whenever s-2r+1 >= 0.
    """
    if n < 1 or s < 0 or r < 1:
        raise PreconditionUnmet(f"need n >= 1, s >= 0, r >= 1: {(n, s, r)}")
    lhs = binom_sum(n - 1, s - 2 * r + 1, s)
    rhs = sum(binom(n, s - 2 * j) for j in range(r))
    return lhs == rhs


def strengthening_check(n: int, s: int, r: int) -> bool:
    """Whether C(n, s-2i) < C(n, s-i) for all 1 <= i <= r-1.

    This is the term-by-term comparison showing the window bound beats the
    r-top-terms bound once n >= 2s-2.
    """
    if n < 2 * s - 2:
        raise PreconditionUnmet(f"need n >= 2s-2: n={n}, s={s}")
    if r < 2 or s - 2 * (r - 1) < 0:
        raise PreconditionUnmet(f"need r >= 2 and s >= 2r-2: s={s}, r={r}")
    return all(binom(n, s - 2 * i) < binom(n, s - i) for i in range(1, r))


def hk_inequality_check(n: int, k: int, c: int) -> bool:
    """Whether C(n, k-1-c) + C(n, c) <= C(n, k), for 0 <= c < k <= n/2."""
    if not (0 <= c < k and 2 * k <= n):
        raise PreconditionUnmet(f"need 0 <= c < k <= n/2: {(n, k, c)}")
    return binom(n, k - 1 - c) + binom(n, c) <= binom(n, k)


@dataclass(frozen=True)
class BinomialBasisPoly:
    """Coefficients a_0..a_d of sum_i a_i * C(x, i) over F_p."""

    modulus: PrimeModulus
    coeffs: tuple[int, ...]

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        """Value at an integer point, via integer binomials reduced mod p."""
        p = self.modulus.p
        return sum(a * binom(x, i) for i, a in enumerate(self.coeffs)) % p


def to_binomial_basis(roots: Sequence[int], shift: int,
                      modulus: PrimeModulus) -> BinomialBasisPoly:
    """Expand prod_j (x + shift - root_j) in the binomial basis over F_p.

    Coefficients come from forward differences of the values at
    x = 0..d, so the expansion agrees with the product at every integer
    point even when the degree reaches or exceeds p (where the C(x, i)
    are no longer a polynomial basis).
    """
    p = modulus.p
    d = len(roots)
    reduced = [r % p for r in roots]
    sh = shift % p

    def value(x: int) -> int:
        acc = 1
        for root in reduced:
            acc = acc * (x + sh - root) % p
        return acc

    work = [value(x) for x in range(d + 1)]
    coeffs = []
    for _ in range(d + 1):
        coeffs.append(work[0])
        work = [(b - a) % p for a, b in zip(work, work[1:])]
    return BinomialBasisPoly(modulus=modulus, coeffs=tuple(coeffs))
