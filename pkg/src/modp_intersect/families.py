"""Set families, condition validation and the linear-form rank checkers.

Subsets of [n] are carried as machine-word bit patterns: element i is
bit i-1.  Inclusion tests are mask tests, which matters because the
inclusion system enumerates every index set up to the degree cap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .bounds import IntersectionSpec, binom, binom_sum, to_binomial_basis
from .errors import (
    DegreeTooLarge,
    FormatError,
    Inapplicable,
    InvalidFamily,
    PreconditionUnmet,
)
from .gfp import MatrixFp, PrimeModulus, quotient_dimension


def mask_of(elements: Iterable[int], n: int) -> int:
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside [1, {n}]")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def subsets_by_size(elements: Sequence[int], max_size: int) -> Iterator[tuple[int, ...]]:
    """All subsets of size <= max_size, ordered by (size, lexicographic)."""
    for size in range(min(max_size, len(elements)) + 1):
        yield from combinations(elements, size)


def _member_sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (mask.bit_count(), elements_of(mask))


@dataclass(frozen=True)
class SetFamily:
    """A list of distinct subsets of [n], split around the last element.

    Members are normalized so that the first t of them avoid element n
    and the rest contain it; each block is sorted by (size, lex).
    """

    n: int
    members: tuple[int, ...]
    t: int

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SetFamily":
        if n < 1:
            raise ValueError(f"ground-set size must be >= 1: {n}")
        masks = list(masks)
        if len(set(masks)) != len(masks):
            raise InvalidFamily("family members must be pairwise distinct")
        top = 1 << (n - 1)
        if any(m >> n for m in masks):
            raise ValueError("member outside the ground set")
        without = sorted((m for m in masks if not m & top), key=_member_sort_key)
        withn = sorted((m for m in masks if m & top), key=_member_sort_key)
        return cls(n=n, members=tuple(without + withn), t=len(without))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls.from_masks(n, (mask_of(s, n) for s in sets))

    @property
    def m(self) -> int:
        return len(self.members)

    def to_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of(mask) for mask in self.members)

    def is_uniform(self) -> bool:
        sizes = {mask.bit_count() for mask in self.members}
        return len(sizes) <= 1

    def uniform_size(self) -> int:
        if not self.is_uniform() or self.m == 0:
            raise InvalidFamily("family is not uniform")
        return self.members[0].bit_count()

    def pairwise_intersection_sizes(self) -> Iterator[int]:
        for i in range(self.m):
            for j in range(i + 1, self.m):
                yield (self.members[i] & self.members[j]).bit_count()


@dataclass(frozen=True)
class ValidationReport:
    """Exact listing of size and intersection violations (empty means valid)."""

    size_violations: tuple[tuple[int, int], ...]
    intersection_violations: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.size_violations and not self.intersection_violations


def validate(family: SetFamily, spec: IntersectionSpec) -> ValidationReport:
    """Check |A_i| mod p in K and |A_i & A_j| mod p in L; violations are data."""
    p = spec.p
    kset, lset = set(spec.K), set(spec.L)
    size_bad = []
    for i, mask in enumerate(family.members):
        residue = mask.bit_count() % p
        if residue not in kset:
            size_bad.append((i, residue))
    inter_bad = []
    for i in range(family.m):
        for j in range(i + 1, family.m):
            residue = (family.members[i] & family.members[j]).bit_count() % p
            if residue not in lset:
                inter_bad.append((i, j, residue))
    return ValidationReport(tuple(size_bad), tuple(inter_bad))


def _require_valid(family: SetFamily, spec: IntersectionSpec) -> None:
    report = validate(family, spec)
    if not report.ok:
        raise InvalidFamily(
            f"{len(report.size_violations)} size and "
            f"{len(report.intersection_violations)} intersection violations"
        )


@dataclass(frozen=True)
class LinearFormSystem:
    """Inclusion system: one row per index set I, one column per member.

    Entry (I, j) is 1 exactly when I is contained in member j.  Rows are
    ordered by (|I|, lex); the catalog records that order.
    """

    matrix: MatrixFp
    row_index_catalog: tuple[tuple[int, ...], ...]


def build_inclusion_system(family: SetFamily, modulus: PrimeModulus,
                           degree_cap: int) -> LinearFormSystem:
    """Rows for every I in the index ground set [n-1] with |I| <= degree_cap."""
    n = family.n
    if degree_cap > n - 1:
        raise DegreeTooLarge(f"degree cap {degree_cap} exceeds {n - 1}")
    catalog = tuple(subsets_by_size(range(1, n), degree_cap))
    rows = np.zeros((len(catalog), family.m), dtype=np.int64)
    for r, subset in enumerate(catalog):
        imask = mask_of(subset, n) if subset else 0
        for c, member in enumerate(family.members):
            if imask & member == imask:
                rows[r, c] = 1
    return LinearFormSystem(matrix=MatrixFp(rows, modulus), row_index_catalog=catalog)


def _system_cap(family: SetFamily, spec: IntersectionSpec) -> int:
    # index sets live in [n-1]; levels above n-1 are empty anyway
    return min(spec.s, family.n - 1)


def check_trivial_kernel(family: SetFamily,
                         spec: IntersectionSpec) -> tuple[bool, Optional[np.ndarray]]:
    """True iff the inclusion system (degree cap s) has only the zero solution.

    When false, the first kernel basis vector is returned as a witness; for
    valid families that never happens, so a witness signals a bug upstream.
    """
    _require_valid(family, spec)
    system = build_inclusion_system(family, spec.modulus, _system_cap(family, spec))
    kernel = system.matrix.kernel_basis()
    if kernel:
        return False, kernel[0]
    return True, None


def dimension_upper_bound(family: SetFamily, spec: IntersectionSpec) -> int:
    """Rank of the inclusion system; the family size never exceeds it."""
    _require_valid(family, spec)
    system = build_inclusion_system(family, spec.modulus, _system_cap(family, spec))
    r = system.matrix.rank()
    assert family.m <= r, "valid family larger than its form span; elimination bug"
    return r


def check_level_elimination(family: SetFamily, spec: IntersectionSpec,
                            level: int) -> bool:
    """Verify the identity eliminating level (level + 2r) of the inclusion forms.

    With f(x) = prod_j (x - (k_j - level)) * prod_j (x - (k_j - 1 - level))
    expanded as c + sum_{j>=1} a_j C(x, j), the combination
    sum_j a_j * (sum over supersets H of I at level+j of L_H) must equal
    -c * L_I for every index set I at the given level.  The check expands
    both sides column by column over the family members; meaningful for
    families whose member sizes lie in K mod p.
    """
    n, p, r, s = family.n, spec.p, spec.r, spec.s
    if p <= 2 * r:
        raise Inapplicable(f"needs p > 2r: p={p}, r={r}")
    if not 0 <= level <= s - 2 * r + 1:
        raise Inapplicable(f"level {level} outside [0, {s - 2 * r + 1}]")
    if level + 2 * r > n - 1:
        raise Inapplicable(f"level {level} + 2r exceeds {n - 1}")

    roots = [(k - level) % p for k in spec.K]
    roots += [(k - 1 - level) % p for k in spec.K]
    coeffs = to_binomial_basis(roots, 0, spec.modulus).coeffs
    c = coeffs[0]

    members = family.members
    m = family.m
    ground = list(range(1, n))
    for base in combinations(ground, level):
        imask = mask_of(base, n) if base else 0
        rest = [e for e in ground if not (imask >> (e - 1)) & 1]
        lhs = np.zeros(m, dtype=np.int64)
        for j in range(1, 2 * r + 1):
            aj = coeffs[j]
            if aj == 0:
                continue
            for extra in combinations(rest, j):
                hmask = imask | mask_of(extra, n)
                for col, member in enumerate(members):
                    if hmask & member == hmask:
                        lhs[col] += aj
        lhs %= p
        for col, member in enumerate(members):
            expected = (-c) % p if imask & member == imask else 0
            if lhs[col] != expected:
                return False
    return True


def check_quotient_count(family: SetFamily, modulus: PrimeModulus,
                         u: int, v: int) -> bool:
    """Bound the quotient of level-v forms by their level-u aggregates.

    dim(span{L_J : |J| = v} / span{sum_{J superset I} L_J : |I| = u})
    must be at most C(n-1, v) - C(n-1, u), for 0 < u < v < p and
    u + v <= n - 1.
    """
    n, p = family.n, modulus.p
    if not (0 < u < v < p):
        raise PreconditionUnmet(f"need 0 < u < v < p: u={u}, v={v}, p={p}")
    if u + v > n - 1:
        raise PreconditionUnmet(f"need u + v <= n - 1: {u}+{v} > {n - 1}")

    ground = list(range(1, n))
    members = family.members
    v_masks = [mask_of(subset, n) for subset in combinations(ground, v)]
    top_rows = np.zeros((len(v_masks), family.m), dtype=np.int64)
    for r, jmask in enumerate(v_masks):
        for c, a in enumerate(members):
            if jmask & a == jmask:
                top_rows[r, c] = 1
    u_masks = [mask_of(subset, n) for subset in combinations(ground, u)]
    agg_rows = np.zeros((len(u_masks), family.m), dtype=np.int64)
    for r, imask in enumerate(u_masks):
        for jdx, jmask in enumerate(v_masks):
            if imask & jmask == imask:
                agg_rows[r] += top_rows[jdx]

    top = MatrixFp(top_rows, modulus)
    agg = MatrixFp(agg_rows, modulus)
    dim = quotient_dimension(top, agg)
    return dim <= binom(n - 1, v) - binom(n - 1, u)


def _level_span(family: SetFamily, modulus: PrimeModulus,
                lo: int, hi: int) -> MatrixFp:
    n = family.n
    rows = []
    for size in range(lo, min(hi, n - 1) + 1):
        for subset in combinations(range(1, n), size):
            imask = mask_of(subset, n)
            rows.append([1 if imask & a == imask else 0 for a in family.members])
    return MatrixFp.from_rows(rows, family.m, modulus)


def check_dimension_recursion(family: SetFamily, spec: IntersectionSpec,
                              level: int) -> bool:
    """Verify the per-level dimension inequality behind the window bound.

    sum_{j=level..level+2r-1} C(n-1, j)
      + dim(span(levels level..s) / span(levels level..level+2r-1))
    must not exceed sum_{j=s-2r+1..s} C(n-1, j).  Both quotient ranks are
    computed exactly; the base level (level = s-2r+1) gives equality.
    """
    n, r, s = family.n, spec.r, spec.s
    if not 0 <= level <= s - 2 * r + 1:
        raise PreconditionUnmet(f"level {level} outside [0, {s - 2 * r + 1}]")
    if n < 2 * s - 2 * r + 1:
        raise PreconditionUnmet(f"need n >= 2s - 2r + 1: n={n}")

    wide = _level_span(family, spec.modulus, level, s)
    narrow = _level_span(family, spec.modulus, level, level + 2 * r - 1)
    quotient = quotient_dimension(wide, narrow)
    lhs = binom_sum(n - 1, level, level + 2 * r - 1) + quotient
    rhs = binom_sum(n - 1, s - 2 * r + 1, s)
    return lhs <= rhs


# ---------------------------------------------------------------------------
# family file format (canonical JSON document)

_FAMILY_KEYS = ("n", "p", "K", "L", "sets")


def family_to_json(family: SetFamily, spec: IntersectionSpec) -> str:
    """Canonical serialization: fixed key order, sets sorted by (size, lex)."""
    sets = sorted(family.to_sets(), key=lambda s: (len(s), s))
    doc = {
        "n": family.n,
        "p": spec.p,
        "K": list(spec.K),
        "L": list(spec.L),
        "sets": [list(s) for s in sets],
    }
    return json.dumps(doc) + "\n"


def family_from_json(text: str) -> tuple[SetFamily, IntersectionSpec]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"family document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != set(_FAMILY_KEYS):
        raise FormatError(f"family document needs exactly the keys {_FAMILY_KEYS}")
    n, p = doc["n"], doc["p"]
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"n must be a positive integer: {n!r}")
    try:
        spec = IntersectionSpec.of(p, doc["K"], doc["L"])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad spec parameters: {exc}") from exc
    sets = doc["sets"]
    if not isinstance(sets, list):
        raise FormatError("sets must be an array")
    for s in sets:
        if not isinstance(s, list) or any(not isinstance(e, int) for e in s):
            raise FormatError(f"each set must be an integer array: {s!r}")
        if any(a >= b for a, b in zip(s, s[1:])):
            raise FormatError(f"set elements must be strictly increasing: {s}")
    try:
        family = SetFamily.from_sets(n, sets)
    except (InvalidFamily, ValueError) as exc:
        raise FormatError(str(exc)) from exc
    return family, spec


def read_family(path) -> tuple[SetFamily, IntersectionSpec]:
    with open(path, encoding="utf-8") as fh:
        return family_from_json(fh.read())


def write_family(path, family: SetFamily, spec: IntersectionSpec) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(family_to_json(family, spec))
