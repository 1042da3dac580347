import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import oracle_binom
from modp_intersect import (
    IntersectionSpec,
    PreconditionUnmet,
    PrimeModulus,
    SetFamily,
    TheoremTag,
    UnknownTag,
    applicability,
    binom,
    bound_value,
    hk_inequality_check,
    pascal_equivalence_check,
    strengthening_check,
    to_binomial_basis,
)


def test_binom_examples():
    assert binom(4, 2) == 6
    assert binom(5, -1) == 0
    assert binom(30, 15) == 155117520  # frozen from the product/divide oracle
    assert binom(30, 15) == oracle_binom(30, 15)


def test_binom_rejects_negative_n():
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_binom_against_oracle():
    for n in range(0, 40):
        for k in range(-2, n + 3):
            assert binom(n, k) == oracle_binom(n, k)


def test_binom_pascal_recurrence():
    for n in range(1, 61):
        for k in range(0, n + 1):
            assert binom(n, k) == binom(n - 1, k) + binom(n - 1, k - 1)


ODD_TOWN = IntersectionSpec.of(2, [1], [0])


def test_bound_value_examples():
    assert bound_value(TheoremTag.COR, 4, ODD_TOWN) == 4   # C(3,1)+C(3,0)
    assert bound_value(TheoremTag.ABS, 4, ODD_TOWN) == 4   # C(4,1)
    assert bound_value(TheoremTag.FW, 4, ODD_TOWN) == 5    # C(4,1)+C(4,0)
    assert bound_value(TheoremTag.SNEVILY, 4, ODD_TOWN) == 4
    spec = IntersectionSpec.of(5, [2], [0, 1])
    assert bound_value(TheoremTag.COR, 10, spec) == 45     # C(9,1)+C(9,2)


def test_bound_value_unknown_tag():
    with pytest.raises(UnknownTag):
        bound_value("NotATag", 4, ODD_TOWN)


def test_applicability_examples():
    report = applicability(4, ODD_TOWN)
    assert report.entry(TheoremTag.COR).holds          # 4 >= 1 + 1
    assert report.entry(TheoremTag.MAIN).holds         # 4 >= 2 - 2 + 1
    assert report.entry(TheoremTag.QR).holds           # 4 >= 2 - 1

    report = applicability(2, IntersectionSpec.of(5, [3], [0, 1]))
    assert not report.entry(TheoremTag.COR).holds      # 2 < 2 + 3

    report = applicability(6, IntersectionSpec.of(5, [2], [1]))
    entry = report.entry(TheoremTag.ABS)
    assert entry.holds and entry.value == 6            # r(s-r+1)=1 <= 4, 6 >= 3


def test_applicability_family_dependent_tags():
    report = applicability(4, ODD_TOWN)
    for tag in (TheoremTag.RW, TheoremTag.FW2):
        entry = report.entry(tag)
        assert entry.family_dependent and not entry.holds and entry.value is None

    # uniform odd-town family: singletons
    family = SetFamily.from_sets(4, [[1], [2], [3], [4]])
    report = applicability(4, ODD_TOWN, family)
    fw2 = report.entry(TheoremTag.FW2)
    assert fw2.holds and fw2.value == 4                # k=1, 1 mod 2 not in {0}
    rw = report.entry(TheoremTag.RW)
    assert rw.holds and rw.value == 4                  # exact L-intersecting too

    # mixed sizes: both stay off
    mixed = SetFamily.from_sets(5, [[1], [1, 2, 3]])
    report = applicability(5, ODD_TOWN, mixed)
    assert not report.entry(TheoremTag.FW2).holds
    assert not report.entry(TheoremTag.RW).holds


def test_rw_needs_exact_intersections():
    # 7-sets meeting in 6 points: mod-5 valid, exact sizes escape L
    spec = IntersectionSpec.of(5, [2], [1])
    family = SetFamily.from_sets(8, [[1, 2, 3, 4, 5, 6, 7], [1, 2, 3, 4, 5, 6, 8]])
    assert validate_ok(family, spec)
    report = applicability(8, spec, family)
    assert not report.entry(TheoremTag.RW).holds       # |A & B| = 6 not in {1}
    assert report.entry(TheoremTag.FW2).holds          # k=7, 7 mod 5 = 2 not in L


def validate_ok(family, spec):
    from modp_intersect import validate

    return validate(family, spec).ok


def test_bound_monotonicity_over_grid():
    # FW >= ABS >= Cor whenever n >= 2s-2 and s-2r+1 >= 0
    from modp_intersect import spec_grid

    for p in (2, 3, 5):
        for spec in spec_grid(p, 2, 3):
            s, r = spec.s, spec.r
            if s - 2 * r + 1 < 0:
                continue
            for n in range(max(1, 2 * s - 2), 13):
                fw = bound_value(TheoremTag.FW, n, spec)
                abs_ = bound_value(TheoremTag.ABS, n, spec)
                cor = bound_value(TheoremTag.COR, n, spec)
                assert fw >= abs_ >= cor


def test_pascal_equivalence_examples():
    assert pascal_equivalence_check(10, 4, 2)   # both sides 255
    assert pascal_equivalence_check(5, 2, 1)    # both sides 10
    assert pascal_equivalence_check(3, 1, 1)
    from modp_intersect.bounds import binom_sum

    assert binom_sum(9, 1, 4) == 255
    assert binom(10, 4) + binom(10, 2) == 255


def test_pascal_equivalence_rejects_bad_parameters():
    with pytest.raises(PreconditionUnmet):
        pascal_equivalence_check(0, 1, 1)


def test_strengthening_examples():
    assert strengthening_check(10, 4, 2)    # C(10,2)=45 < C(10,3)=120
    assert strengthening_check(6, 4, 2)     # 15 < 20
    with pytest.raises(PreconditionUnmet):
        strengthening_check(5, 4, 2)        # 5 < 2s-2 = 6
    with pytest.raises(PreconditionUnmet):
        strengthening_check(10, 4, 1)       # r < 2


def test_strengthening_over_valid_range():
    for s in range(2, 12):
        for r in range(2, (s + 2) // 2 + 1):
            if s - 2 * (r - 1) < 0:
                continue
            for n in range(2 * s - 2, 2 * s + 8):
                if n < 1:
                    continue
                assert strengthening_check(n, s, r)


def test_hk_inequality_examples():
    assert hk_inequality_check(10, 4, 1)    # 45 + 10 <= 210
    assert hk_inequality_check(4, 2, 0)     # 5 <= 6
    with pytest.raises(PreconditionUnmet):
        hk_inequality_check(10, 6, 1)       # k > n/2


def test_hk_inequality_small_exhaustive():
    for n in range(1, 26):
        for k in range(1, n // 2 + 1):
            for c in range(0, k):
                assert hk_inequality_check(n, k, c)


def test_binomial_basis_examples():
    pm = PrimeModulus(5)
    assert to_binomial_basis([1], 0, pm).coeffs == (4, 1)      # x - 1
    assert to_binomial_basis([], 0, pm).coeffs == (1,)         # constant 1
    assert to_binomial_basis([0, 1], 0, pm).coeffs == (0, 0, 2)  # x(x-1) = 2 C(x,2)


def test_binomial_basis_shift_matches_composition():
    # expanding with shift=1 is expanding the same product at x+1
    pm = PrimeModulus(7)
    roots = [2, 5, 5]
    shifted = to_binomial_basis(roots, 1, pm)
    plain = to_binomial_basis(roots, 0, pm)
    for x in range(7):
        assert shifted.evaluate(x) == plain.evaluate(x + 1)


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_binomial_basis_round_trip(data):
    p = data.draw(st.sampled_from((2, 3, 5, 7, 11, 13)))
    pm = PrimeModulus(p)
    degree = data.draw(st.integers(0, 8))
    roots = data.draw(st.lists(st.integers(0, p - 1), min_size=degree,
                               max_size=degree))
    shift = data.draw(st.integers(0, p - 1))
    expanded = to_binomial_basis(roots, shift, pm)
    assert len(expanded.coeffs) == degree + 1
    for x in range(p):
        direct = 1
        for root in roots:
            direct = direct * (x + shift - root) % p
        assert expanded.evaluate(x) == direct


def test_spec_validation():
    with pytest.raises(ValueError):
        IntersectionSpec.of(5, [], [1])
    with pytest.raises(ValueError):
        IntersectionSpec.of(5, [2], [2])        # not disjoint
    with pytest.raises(ValueError):
        IntersectionSpec.of(5, [2, 1], [0])     # not increasing
    with pytest.raises(ValueError):
        IntersectionSpec.of(5, [5], [0])        # out of range
    spec = IntersectionSpec.of(5, [2, 3], [0, 1])
    assert (spec.r, spec.s, spec.k_min, spec.k_max) == (2, 2, 2, 3)
