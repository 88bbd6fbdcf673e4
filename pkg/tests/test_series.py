import pytest

from quadalg.series import (TruncatedSeries, dominates, gs_bound,
                            gs_coefficient_closed, invert, pretty,
                            truncate_at_first_negative)


def test_invert_identity():
    assert invert([1], 3).coeffs == (1, 0, 0, 0)


def test_invert_geometric_square():
    # (1 - t)^-2 = sum (q+1) t^q
    assert invert([1, -2, 1], 5).coeffs == (1, 2, 3, 4, 5, 6)


def test_invert_recurrence_oracle():
    # independent oracle: run the convolution recurrence directly
    def rec(n, d, cap):
        a = [1]
        for q in range(1, cap + 1):
            prev2 = a[q - 2] if q >= 2 else 0
            a.append(n * a[q - 1] - d * prev2)
        return tuple(a)

    assert invert([1, -4, 6], 5).coeffs == rec(4, 6, 5) == (1, 4, 10, 16, 4, -80)
    for n in (2, 5, 9):
        for d in (0, 3, n * n):
            assert invert([1, -n, d], 7).coeffs == rec(n, d, 7)


def test_invert_requires_unit():
    with pytest.raises(ValueError):
        invert([2, 1], 3)


def test_invert_times_poly_is_one():
    poly = [1, -3, 3, -1]
    inv = invert(poly, 8).coeffs
    for q in range(9):
        conv = sum(poly[i] * inv[q - i] for i in range(min(q, 3) + 1))
        assert conv == (1 if q == 0 else 0)


def test_bar_truncation():
    s = TruncatedSeries((1, 2, 0, -1, 5))
    assert truncate_at_first_negative(s).coeffs == (1, 2, 0, 0, 0)
    s = TruncatedSeries((1, 3, 6, 9, 9, 0, -27))
    assert truncate_at_first_negative(s).coeffs == (1, 3, 6, 9, 9, 0, 0)
    s = TruncatedSeries((1, 4, 0, 2))
    assert truncate_at_first_negative(s) == s


def test_bar_truncation_idempotent_nonnegative():
    for coeffs in [(1, -1, 5), (0, 0, -2, 3), (1, 2, 3)]:
        once = truncate_at_first_negative(TruncatedSeries(coeffs))
        assert all(c >= 0 for c in once.coeffs)
        assert truncate_at_first_negative(once) == once


def test_gs_bound_pinned_values():
    assert gs_bound(7, 19, 5).coeffs == (1, 7, 30, 77, 0, 0)
    assert gs_bound(4, 5, 6).coeffs == (1, 4, 11, 24, 41, 44, 0)
    assert gs_bound(3, 3, 6).coeffs == (1, 3, 6, 9, 9, 0, 0)


def test_gs_bound_range_check():
    with pytest.raises(ValueError):
        gs_bound(2, 5, 4)
    with pytest.raises(ValueError):
        gs_bound(3, -1, 4)


def test_closed_forms():
    assert gs_coefficient_closed(3, 5, 7) == 5**3 - 2 * 5 * 7
    assert gs_coefficient_closed(4, 4, 6) == 4
    assert gs_coefficient_closed(5, 3, 3) == 0
    with pytest.raises(ValueError):
        gs_coefficient_closed(6, 3, 3)


def test_closed_forms_match_inverse():
    for n in range(2, 11):
        for d in range(0, n * n + 1):
            inv = invert([1, -n, d], 5)
            for q in range(2, 6):
                assert gs_coefficient_closed(q, n, d) == inv[q]


def test_dominates():
    a = TruncatedSeries((1, 3, 6))
    assert dominates(a, a)
    assert dominates(a, TruncatedSeries((1, 3, 5)))
    assert not dominates(TruncatedSeries((1, 3, 4)), TruncatedSeries((1, 3, 5)))
    with pytest.raises(ValueError):
        dominates(a, TruncatedSeries((1, 3)))


def test_pretty():
    assert str(gs_bound(3, 3, 5)) == "1 + 3t + 6t^2 + 9t^3 + 9t^4"
    assert pretty((1, 1, 0, 2)) == "1 + t + 2t^3"
    assert pretty((0, 0)) == "0"
    assert pretty((1, -2)) == "1 - 2t"
