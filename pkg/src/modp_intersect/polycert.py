"""Multilinear polynomials over F_p and the independence / counting certificates.

A multilinear polynomial on n 0/1-valued variables is a map from
monomials (subsets of [n], stored as bit masks) to nonzero residues.
Products reduce x_i^2 to x_i, so evaluation agrees with the defining
product on every point of {0,1}^n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .bounds import IntersectionSpec, TheoremTag, binom, bound_value, hk_inequality_check
from .errors import (
    BadIndexSet,
    CaseMismatch,
    FormatError,
    HypothesisUnmet,
    InvalidFamily,
    MixedContext,
    PreconditionUnmet,
    RankDeficit,
    StepFailure,
)
from .families import (
    SetFamily,
    build_inclusion_system,
    mask_of,
    subsets_by_size,
    validate,
)
from .gfp import MatrixFp, PrimeModulus


class MultilinearPoly:
    """Sparse multilinear polynomial over F_p in n 0/1-valued variables."""

    __slots__ = ("n", "modulus", "terms")

    def __init__(self, n: int, modulus: PrimeModulus, terms: Optional[dict] = None):
        self.n = n
        self.modulus = modulus
        p = modulus.p
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                c = coeff % p
                if c:
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def constant(cls, value: int, n: int, modulus: PrimeModulus) -> "MultilinearPoly":
        return cls(n, modulus, {0: value})

    @classmethod
    def variable(cls, index: int, n: int, modulus: PrimeModulus) -> "MultilinearPoly":
        if not 1 <= index <= n:
            raise ValueError(f"variable index {index} outside [1, {n}]")
        return cls(n, modulus, {1 << (index - 1): 1})

    @classmethod
    def linear_form(cls, support_mask: int, constant: int, n: int,
                    modulus: PrimeModulus) -> "MultilinearPoly":
        """sum of x_i over the support, plus a constant."""
        terms = {0: constant}
        mask = support_mask
        while mask:
            low = mask & -mask
            terms[low] = 1
            mask ^= low
        return cls(n, modulus, terms)

    def _check_context(self, other: "MultilinearPoly") -> None:
        if self.n != other.n or self.modulus != other.modulus:
            raise MixedContext(
                f"cannot combine polynomials on (n={self.n}, p={self.modulus.p}) "
                f"and (n={other.n}, p={other.modulus.p})"
            )

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        self._check_context(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, 0) + coeff
        return MultilinearPoly(self.n, self.modulus, out)

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return self + other.scaled(-1)

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return poly_mul_reduce(self, other)

    def scaled(self, scalar: int) -> "MultilinearPoly":
        return MultilinearPoly(
            self.n, self.modulus,
            {mono: coeff * scalar for mono, coeff in self.terms.items()},
        )

    def coefficient(self, mono: int) -> int:
        return self.terms.get(mono, 0)

    def degree(self) -> int:
        return max((mono.bit_count() for mono in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, point_mask: int) -> int:
        """Value at the 0/1 point whose support is point_mask."""
        total = 0
        for mono, coeff in self.terms.items():
            if mono & point_mask == mono:
                total += coeff
        return total % self.modulus.p

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultilinearPoly)
            and self.n == other.n
            and self.modulus == other.modulus
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"MultilinearPoly(n={self.n}, p={self.modulus.p}, {len(self.terms)} terms)"


def poly_mul_reduce(f: MultilinearPoly, g: MultilinearPoly) -> MultilinearPoly:
    """Product with every variable power capped at one (monomial union)."""
    f._check_context(g)
    p = f.modulus.p
    out: dict[int, int] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            mono = m1 | m2
            out[mono] = (out.get(mono, 0) + c1 * c2) % p
    return MultilinearPoly(f.n, f.modulus, out)


def member_poly(member_mask: int, n: int, spec: IntersectionSpec) -> MultilinearPoly:
    """prod over l in L of (sum_{a in member} x_a - l), multilinearized.

    Evaluating at the incidence vector of B gives
    prod_l (|member & B| - l) mod p, so the polynomial vanishes exactly
    at sets whose intersection with the member has size in L mod p.
    """
    poly = MultilinearPoly.constant(1, n, spec.modulus)
    for l in spec.L:
        poly = poly * MultilinearPoly.linear_form(member_mask, -l, n, spec.modulus)
    return poly


def anchor_poly(index_set: Sequence[int], n: int,
                spec: IntersectionSpec) -> MultilinearPoly:
    """(1 - x_n) times the monomial on the index set; vanishes when x_n = 1."""
    index_set = tuple(index_set)
    if n in index_set:
        raise BadIndexSet(f"index set must avoid element {n}")
    if len(index_set) > spec.s - 1:
        raise BadIndexSet(f"index set size {len(index_set)} exceeds {spec.s - 1}")
    mono = mask_of(index_set, n) if index_set else 0
    one_minus_last = MultilinearPoly(n, spec.modulus, {0: 1, 1 << (n - 1): -1})
    return one_minus_last * MultilinearPoly(n, spec.modulus, {mono: 1})


def size_window(spec: IntersectionSpec) -> tuple[int, ...]:
    """Residues of K and K-1 mod p, deduplicated and sorted."""
    p = spec.p
    return tuple(sorted({k % p for k in spec.K} | {(k - 1) % p for k in spec.K}))


def window_poly(index_set: Sequence[int], n: int,
                spec: IntersectionSpec) -> MultilinearPoly:
    """Window annihilator times a monomial on [n-1].

    The annihilator is prod over h in the size window of
    (x_1 + ... + x_{n-1} - h); it vanishes at every point whose first
    n-1 coordinates sum into the window mod p.
    """
    index_set = tuple(index_set)
    if n in index_set:
        raise BadIndexSet(f"index set must avoid element {n}")
    if len(index_set) > spec.s - 2 * spec.r:
        raise BadIndexSet(
            f"index set size {len(index_set)} exceeds {spec.s - 2 * spec.r}"
        )
    head = (1 << (n - 1)) - 1  # x_1 .. x_{n-1}
    poly = MultilinearPoly.constant(1, n, spec.modulus)
    for h in size_window(spec):
        poly = poly * MultilinearPoly.linear_form(head, -h, n, spec.modulus)
    mono = mask_of(index_set, n) if index_set else 0
    return poly * MultilinearPoly(n, spec.modulus, {mono: 1})


class GapCase(str, Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"


@dataclass(frozen=True)
class GapStructure:
    """Window residues inside [1, n-1], the largest gap, and the case tag.

    ``case_tag`` is None exactly when n < s + max(K), where none of the
    four classification chains applies.
    """

    range_bound: int
    residues: tuple[int, ...]
    window_hits: tuple[int, ...]
    max_gap: int
    case_tag: Optional[GapCase]


def gap_structure(n: int, spec: IntersectionSpec) -> GapStructure:
    """Classify the instance and measure the gap of the size-window hits."""
    if n < 2:
        raise PreconditionUnmet(f"need n >= 2: {n}")
    bound = n - 1
    residues = size_window(spec)
    residue_set = set(residues)
    hits = tuple(x for x in range(1, bound + 1) if x % spec.p in residue_set)
    if hits:
        gaps = [hits[0] + 1, bound - hits[-1] + 1]
        gaps += [b - a for a, b in zip(hits, hits[1:])]
        max_gap = max(gaps)
    else:
        max_gap = bound + 1  # the whole range is one gap
    s, k_lo, k_hi, p = spec.s, spec.k_min, spec.k_max, spec.p
    r = spec.r
    case: Optional[GapCase] = None
    if s + k_hi - 1 <= bound < p + k_lo - 1:
        case = GapCase.CASE1
    elif s + k_hi - 1 < p + k_lo - 1 <= bound:
        case = GapCase.CASE2
    elif (s - 2 * r + 1) + k_hi < p + k_lo - 1 <= s + k_hi - 1 <= bound:
        case = GapCase.CASE3
    elif p + k_lo - 1 <= (s - 2 * r + 1) + k_hi <= s + k_hi - 1 <= bound:
        case = GapCase.CASE4
    return GapStructure(
        range_bound=bound,
        residues=residues,
        window_hits=hits,
        max_gap=max_gap,
        case_tag=case,
    )


def _monomial_catalog(n: int, max_degree: int) -> list[int]:
    return [
        mask_of(subset, n) if subset else 0
        for subset in subsets_by_size(range(1, n + 1), max_degree)
    ]


def _coefficient_matrix(polys: Sequence[MultilinearPoly], n: int,
                        max_degree: int, modulus: PrimeModulus) -> MatrixFp:
    catalog = _monomial_catalog(n, max_degree)
    index = {mono: i for i, mono in enumerate(catalog)}
    rows = np.zeros((len(polys), len(catalog)), dtype=np.int64)
    for r, poly in enumerate(polys):
        for mono, coeff in poly.terms.items():
            rows[r, index[mono]] = coeff
    return MatrixFp(rows, modulus)


def check_gap_lemma(residues: Sequence[int], range_bound: int, g: int,
                    modulus: PrimeModulus) -> bool:
    """Independence of the window product times all monomials of size < g.

    Builds prod_{h in residues} (x_1 + ... + x_N - h) over N = range_bound
    variables, multiplies by every monomial with at most g-1 variables,
    and reports whether the coefficient matrix has full row rank.  The
    expected answer is yes whenever the residue hits in [1, N] leave a
    gap of size at least g+1.
    """
    if g < 1:
        raise PreconditionUnmet(f"need g >= 1: {g}")
    if range_bound > 20:
        raise PreconditionUnmet(f"desk scale is range_bound <= 20: {range_bound}")
    n = range_bound
    head = (1 << n) - 1
    base = MultilinearPoly.constant(1, n, modulus)
    for h in residues:
        base = base * MultilinearPoly.linear_form(head, -h, n, modulus)
    polys = []
    for subset in subsets_by_size(range(1, n + 1), g - 1):
        mono = mask_of(subset, n) if subset else 0
        polys.append(base * MultilinearPoly(n, modulus, {mono: 1}))
    degree_cap = min(n, len(tuple(residues)) + g - 1)
    matrix = _coefficient_matrix(polys, n, degree_cap, modulus)
    return matrix.rank() == len(polys)


class CertificateKind(str, Enum):
    INDEPENDENCE = "independence"
    CASE4_COUNTING = "case4_counting"
    DIMENSION_BOUND = "dimension_bound"


@dataclass(frozen=True)
class Case4Step:
    description: str
    lhs: int
    rhs: int
    holds: bool


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable evidence for one bound derivation.

    Independence and dimension-bound certificates carry the labeled
    matrix with its rank and pivot columns; counting certificates carry
    the admissible size decomposition and the ordered inequality log.
    """

    kind: CertificateKind
    n: int
    spec: IntersectionSpec
    derived_bound: int
    labels: tuple[str, ...] = ()
    rows: int = 0
    cols: int = 0
    rank: int = 0
    pivot_columns: tuple[int, ...] = ()
    admissible_sizes: tuple[int, ...] = ()
    size_binomials: tuple[int, ...] = ()
    translate_count: int = 0
    delta: int = 0
    a_values: tuple[int, ...] = ()
    steps: tuple[Case4Step, ...] = ()

    def to_json(self) -> str:
        doc: dict = {
            "kind": self.kind.value,
            "n": self.n,
            "p": self.spec.p,
            "K": list(self.spec.K),
            "L": list(self.spec.L),
            "derived_bound": self.derived_bound,
        }
        if self.kind in (CertificateKind.INDEPENDENCE, CertificateKind.DIMENSION_BOUND):
            doc["labels"] = list(self.labels)
            doc["rows"] = self.rows
            doc["cols"] = self.cols
            doc["rank"] = self.rank
            doc["pivot_columns"] = list(self.pivot_columns)
        else:
            doc["admissible_sizes"] = list(self.admissible_sizes)
            doc["size_binomials"] = list(self.size_binomials)
            doc["translate_count"] = self.translate_count
            doc["delta"] = self.delta
            doc["a_values"] = list(self.a_values)
            doc["steps"] = [
                {"description": s.description, "lhs": s.lhs, "rhs": s.rhs,
                 "holds": s.holds}
                for s in self.steps
            ]
        return json.dumps(doc) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"certificate is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise FormatError("certificate must be a JSON object")
        try:
            kind = CertificateKind(doc["kind"])
            spec = IntersectionSpec.of(doc["p"], doc["K"], doc["L"])
            common = dict(kind=kind, n=doc["n"], spec=spec,
                          derived_bound=doc["derived_bound"])
            if kind in (CertificateKind.INDEPENDENCE, CertificateKind.DIMENSION_BOUND):
                return cls(
                    labels=tuple(doc["labels"]),
                    rows=doc["rows"],
                    cols=doc["cols"],
                    rank=doc["rank"],
                    pivot_columns=tuple(doc["pivot_columns"]),
                    **common,
                )
            return cls(
                admissible_sizes=tuple(doc["admissible_sizes"]),
                size_binomials=tuple(doc["size_binomials"]),
                translate_count=doc["translate_count"],
                delta=doc["delta"],
                a_values=tuple(doc["a_values"]),
                steps=tuple(
                    Case4Step(s["description"], s["lhs"], s["rhs"], s["holds"])
                    for s in doc["steps"]
                ),
                **common,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad certificate field: {exc}") from exc


def _format_label_set(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(e) for e in subset) + "}"


def _certificate_polys(family: SetFamily,
                       spec: IntersectionSpec) -> tuple[list[str], list[MultilinearPoly]]:
    n, s, r = family.n, spec.s, spec.r
    labels: list[str] = []
    polys: list[MultilinearPoly] = []
    for idx, member in enumerate(family.members):
        labels.append(f"f:{idx}")
        polys.append(member_poly(member, n, spec))
    for subset in subsets_by_size(range(1, n), s - 1):
        labels.append(f"q:{_format_label_set(subset)}")
        polys.append(anchor_poly(subset, n, spec))
    for subset in subsets_by_size(range(1, n), s - 2 * r):
        labels.append(f"g:{_format_label_set(subset)}")
        polys.append(window_poly(subset, n, spec))
    return labels, polys


def independence_certificate(family: SetFamily,
                             spec: IntersectionSpec) -> Certificate:
    """Assemble the three polynomial families and certify their joint rank.

    Valid for instances classified Case 1-3 with n >= s + max(K).  The
    derived bound is the monomial count minus the two monomial-family
    sizes, which the construction forces to equal the window bound.
    """
    report = validate(family, spec)
    if not report.ok:
        raise InvalidFamily("family violates the size or intersection conditions")
    n, s, r = family.n, spec.s, spec.r
    if n < s + spec.k_max:
        raise HypothesisUnmet(f"needs n >= s + max(K) = {s + spec.k_max}, got {n}")
    structure = gap_structure(n, spec)
    if structure.case_tag is GapCase.CASE4:
        raise CaseMismatch("instance is classified Case4; use case4_certificate")
    if structure.case_tag is None:
        raise HypothesisUnmet("no case classification applies")

    labels, polys = _certificate_polys(family, spec)
    degree_cap = min(s, n)
    matrix = _coefficient_matrix(polys, n, degree_cap, spec.modulus)
    matrix_rank = matrix.rank()
    if matrix_rank != len(polys):
        raise RankDeficit(
            f"expected rank {len(polys)}, got {matrix_rank}; "
            "independence failed for a valid instance"
        )
    q_count = sum(1 for lab in labels if lab.startswith("q:"))
    w_count = sum(1 for lab in labels if lab.startswith("g:"))
    derived = matrix.cols - q_count - w_count
    expected = bound_value(TheoremTag.COR, n, spec)
    assert derived == expected, "monomial count identity broke; formula bug"
    return Certificate(
        kind=CertificateKind.INDEPENDENCE,
        n=n,
        spec=spec,
        derived_bound=derived,
        labels=tuple(labels),
        rows=matrix.rows,
        cols=matrix.cols,
        rank=matrix_rank,
        pivot_columns=matrix.pivot_columns(),
    )


def dimension_certificate(family: SetFamily, spec: IntersectionSpec) -> Certificate:
    """Inclusion-system rank certificate for instances with n >= 2s - 2r + 1.

    Rows are the inclusion forms up to level s, columns the family
    members; full column rank re-proves the trivial-kernel property and
    the derived bound is the window bound under this hypothesis.
    """
    report = validate(family, spec)
    if not report.ok:
        raise InvalidFamily("family violates the size or intersection conditions")
    n, s, r = family.n, spec.s, spec.r
    if n < 2 * s - 2 * r + 1:
        raise HypothesisUnmet(f"needs n >= 2s - 2r + 1 = {2 * s - 2 * r + 1}, got {n}")
    system = build_inclusion_system(family, spec.modulus, min(s, n - 1))
    matrix = system.matrix
    matrix_rank = matrix.rank()
    if matrix_rank != family.m:
        raise RankDeficit(
            f"inclusion system rank {matrix_rank} below family size {family.m}"
        )
    derived = bound_value(TheoremTag.MAIN, n, spec)
    assert family.m <= derived, "window bound violated by a valid family; bug"
    labels = tuple(
        "L:" + _format_label_set(subset) for subset in system.row_index_catalog
    )
    return Certificate(
        kind=CertificateKind.DIMENSION_BOUND,
        n=n,
        spec=spec,
        derived_bound=derived,
        labels=labels,
        rows=matrix.rows,
        cols=matrix.cols,
        rank=matrix_rank,
        pivot_columns=matrix.pivot_columns(),
    )


def _case4_steps(n: int, spec: IntersectionSpec) -> tuple[
        tuple[Case4Step, ...], tuple[int, ...], tuple[int, ...], int, int,
        tuple[int, ...]]:
    p, r, s = spec.p, spec.r, spec.s
    K = spec.K
    k_lo, k_hi = K[0], K[-1]
    steps: list[Case4Step] = []

    def le(description: str, lhs: int, rhs: int) -> None:
        steps.append(Case4Step(description, lhs, rhs, lhs <= rhs))

    def eq(description: str, lhs: int, rhs: int) -> None:
        steps.append(Case4Step(description, lhs, rhs, lhs == rhs))

    le("largest admissible size within window: k_max <= s - 2r", k_hi, s - 2 * r)
    le("residue budget: r + s <= p", r + s, p)
    le("modulus squeeze: p <= s - 2r + 2 + k_max - k_min",
       p, s - 2 * r + 2 + k_hi - k_lo)
    le("window forces 5r - 1 <= s", 5 * r - 1, s)
    le("size spread: 3r - 2 + k_min <= k_max", 3 * r - 2 + k_lo, k_hi)

    delta = 2 * s - 2 * r - n
    le("size deficit nonnegative: 0 <= delta", 0, delta)
    # Derivable window: delta <= s - 5r + 2 - k_min (tight form of the
    # s - 5r + 1 window, which presumes k_min >= 1).
    le("size deficit window: delta <= s - 5r + 2 - k_min",
       delta, s - 5 * r + 2 - k_lo)

    sizes = tuple(x for x in range(0, n + 1) if x % p in set(K))
    translated = sum(1 for k in K if p + k <= n)
    le("at least one translated size: 1 <= c", 1, translated)
    le("translated sizes within count: c <= r", translated, r)
    expected_sizes = tuple(sorted(list(K) + [p + K[i] for i in range(translated)]))
    steps.append(Case4Step(
        "admissible sizes are the K values and their first c translates",
        len(sizes), len(expected_sizes), sizes == expected_sizes,
    ))

    window_values = [binom(n, s - 2 * j) for j in range(r)]
    eq("window minimum sits at the top index",
       min(window_values), binom(n, s))

    k = n - s
    a_values = []
    for i in range(translated):
        a = s - 3 * r - delta - K[i]
        a_values.append(a)
        le(f"offset a_{i + 1} nonnegative", 0, a)
        le(f"offset a_{i + 1} within window", a, s - 3 * r - delta)
        pair = binom(n, K[i]) + binom(n, p + K[i])
        shifted = binom(n, k - r - a) + binom(n, a)
        le(f"pair {i + 1}: raw sizes vs shifted indices", pair, shifted)
        relaxed = binom(n, k - 1 - a) + binom(n, a)
        le(f"pair {i + 1}: shift the lower index up to k - 1 - a", shifted, relaxed)
        hk_ok = hk_inequality_check(n, k, a)
        steps.append(Case4Step(
            f"pair {i + 1}: paired binomial inequality at (k={k}, c={a})",
            relaxed, binom(n, k), hk_ok and relaxed <= binom(n, k),
        ))
        eq(f"pair {i + 1}: complement identity C(n, k) = C(n, s)",
           binom(n, k), binom(n, s))
    for i in range(translated, r):
        le(f"untranslated size {i + 1}: C(n, k_i) <= C(n, s)",
           binom(n, K[i]), binom(n, s))

    total = sum(binom(n, sz) for sz in sizes)
    le("size-support total vs r copies of the top term",
       total, r * binom(n, s))
    window_total = sum(window_values)
    le("r copies of the top term vs the window sum",
       r * binom(n, s), window_total)
    eq("window sum equals the derived bound",
       window_total, bound_value(TheoremTag.COR, n, spec))

    size_binomials = tuple(binom(n, sz) for sz in sizes)
    return tuple(steps), sizes, size_binomials, translated, delta, tuple(a_values)


def case4_certificate(n: int, spec: IntersectionSpec) -> Certificate:
    """Counting certificate for Case4 instances with n <= 2s - 2r.

    Records the admissible member sizes, the size-deficit decomposition
    and every inequality in the chain; raises StepFailure on the first
    step that does not hold exactly.
    """
    structure = gap_structure(n, spec)
    if structure.case_tag is not GapCase.CASE4:
        raise CaseMismatch(
            f"instance is classified {structure.case_tag}, not Case4"
        )
    if n > 2 * spec.s - 2 * spec.r:
        raise CaseMismatch(
            f"Case4 counting applies only for n <= 2s - 2r = "
            f"{2 * spec.s - 2 * spec.r}, got {n}"
        )
    steps, sizes, size_binomials, translated, delta, a_values = _case4_steps(n, spec)
    for step in steps:
        if not step.holds:
            raise StepFailure(
                f"step failed: {step.description} ({step.lhs} vs {step.rhs})"
            )
    return Certificate(
        kind=CertificateKind.CASE4_COUNTING,
        n=n,
        spec=spec,
        derived_bound=bound_value(TheoremTag.COR, n, spec),
        admissible_sizes=sizes,
        size_binomials=size_binomials,
        translate_count=translated,
        delta=delta,
        a_values=a_values,
        steps=steps,
    )


def build_certificate(family: SetFamily, spec: IntersectionSpec) -> Certificate:
    """Dispatch on the case classification, with the rank-bound fallback.

    Cases 1-3 produce an independence certificate; Case4 with
    n <= 2s - 2r a counting certificate; everything else falls back to
    the inclusion-system rank certificate when n >= 2s - 2r + 1.
    """
    n, s, r = family.n, spec.s, spec.r
    if n >= s + spec.k_max:
        structure = gap_structure(n, spec)
        if structure.case_tag in (GapCase.CASE1, GapCase.CASE2, GapCase.CASE3):
            return independence_certificate(family, spec)
        if structure.case_tag is GapCase.CASE4:
            if n <= 2 * s - 2 * r:
                return case4_certificate(n, spec)
            return dimension_certificate(family, spec)
    if n >= 2 * s - 2 * r + 1:
        return dimension_certificate(family, spec)
    raise HypothesisUnmet(
        "no theorem hypothesis applies: "
        f"n < s + max(K) = {s + spec.k_max} and n < 2s - 2r + 1 = {2 * s - 2 * r + 1}"
    )


def verify_certificate(cert: Certificate, family: SetFamily,
                       spec: IntersectionSpec) -> list[str]:
    """Re-derive everything a certificate records; return mismatch names.

    The returned list is empty when the certificate checks out; otherwise
    it names the divergent fields in the order they were found.
    """
    problems: list[str] = []
    if cert.n != family.n:
        problems.append("n")
    if cert.spec != spec:
        problems.append("spec")
    if problems:
        return problems

    if cert.kind is CertificateKind.CASE4_COUNTING:
        try:
            fresh = case4_certificate(cert.n, spec)
        except (CaseMismatch, StepFailure) as exc:
            return [f"case4 rebuild failed: {exc}"]
        for name in ("admissible_sizes", "size_binomials", "translate_count",
                     "delta", "a_values", "steps", "derived_bound"):
            if getattr(fresh, name) != getattr(cert, name):
                problems.append(name)
                break
        if not all(step.holds for step in cert.steps):
            problems.append("steps")
        return problems

    if cert.kind is CertificateKind.INDEPENDENCE:
        labels, polys = _certificate_polys(family, spec)
        matrix = _coefficient_matrix(polys, family.n,
                                     min(spec.s, family.n), spec.modulus)
        expected_rank = len(polys)
        derived = matrix.cols - sum(1 for lab in labels if lab[0] in "qg")
    else:
        system = build_inclusion_system(family, spec.modulus,
                                        min(spec.s, family.n - 1))
        labels = ["L:" + _format_label_set(sub) for sub in system.row_index_catalog]
        matrix = system.matrix
        expected_rank = family.m
        derived = bound_value(TheoremTag.MAIN, cert.n, spec)

    if tuple(labels) != cert.labels:
        problems.append("labels")
    if (matrix.rows, matrix.cols) != (cert.rows, cert.cols):
        problems.append("dims")
    if problems:
        return problems
    if matrix.rank() != cert.rank or cert.rank != expected_rank:
        problems.append("rank")
    if matrix.pivot_columns() != cert.pivot_columns:
        problems.append("pivot_columns")
    if problems:
        return problems
    # Independent confirmation: the recorded pivot submatrix has full rank.
    sub = MatrixFp(matrix.array[:, list(cert.pivot_columns)], spec.modulus)
    if sub.rank() != cert.rank:
        problems.append("pivot_submatrix")
    if derived != cert.derived_bound:
        problems.append("derived_bound")
    return problems


def read_certificate(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return Certificate.from_json(fh.read())


def write_certificate(path, cert: Certificate) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(cert.to_json())
