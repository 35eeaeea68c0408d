import pytest

from fgdist.errors import LengthMismatchError, SeriesMismatchError, SubstitutionError, TruncationError
from fgdist.power_series import TruncatedSeries, VariableSet, coefficient, series_pow, substitute


XY = VariableSet(("x", "y"))


def series(terms, cap=6, p=3, vars=XY, box=None):
    return TruncatedSeries(vars, cap, p, terms, box)


class TestVariableSet:
    """Test variable layout in tensor powers."""

    def test_layout(self):
        """Test factor-major variable numbering."""
        pair = XY.with_rank(2)
        assert pair.size == 4
        assert pair.index("y", factor=1) == 3
        assert pair.factor_slice(1) == slice(2, 4)

    def test_format(self):
        """Test monomial text."""
        assert XY.format_exponent((2, 1)) == "x^2 y"
        assert XY.with_rank(2).format_exponent((1, 0, 0, 0)) == "x⊗1"

    def test_invalid(self):
        """Test duplicate names and bad ranks are refused."""
        with pytest.raises(ValueError):
            VariableSet(("x", "x"))
        with pytest.raises(ValueError):
            VariableSet(("x",), 4)


class TestArithmetic:
    """Test ring operations inside the truncation frame."""

    def test_construction_reduces(self):
        """Test coefficients are reduced and zeros dropped."""
        f = series({(1, 0): 4, (0, 1): 3})
        assert dict(f.terms) == {(1, 0): 1}

    def test_add_and_multiply(self):
        """Test (1 + x)(1 - x) = 1 - x^2."""
        one_plus = series({(0, 0): 1, (1, 0): 1})
        one_minus = series({(0, 0): 1, (1, 0): -1})
        product = one_plus * one_minus

        assert dict(product.terms) == {(0, 0): 1, (2, 0): 2}
        assert (one_plus + one_minus).constant_term == 2

    def test_truncation(self):
        """Test terms above the cap are discarded."""
        x = TruncatedSeries.variable(XY, 0, 3, 5)
        assert not x ** 4
        assert x ** 3 == series({(3, 0): 1}, cap=3, p=5)

    def test_frobenius_of_binomial(self):
        """Test (x + y)^p = x^p + y^p."""
        for p in (2, 3, 5):
            x_plus_y = series({(1, 0): 1, (0, 1): 1}, cap=2 * p, p=p)
            assert dict(series_pow(x_plus_y, p).terms) == {(p, 0): 1, (0, p): 1}

    def test_box(self):
        """Test the per-variable box truncates too."""
        f = series({(1, 0): 1, (0, 1): 1}, box=(1, 2))
        square = f * f
        assert dict(square.terms) == {(1, 1): 2, (0, 2): 1}

    def test_frame_mismatch(self):
        """Test series of different frames do not combine."""
        with pytest.raises(SeriesMismatchError):
            series({(1, 0): 1}, cap=4) + series({(1, 0): 1}, cap=5)


class TestCoefficients:
    """Test coefficient access."""

    def test_inside_frame(self):
        """Test absent coefficients are zero inside the frame."""
        f = series({(1, 1): 2})
        assert coefficient(f, (1, 1)) == 2
        assert f.coefficient((2, 0)) == 0

    def test_outside_frame(self):
        """Test asking beyond the cap or box is an error."""
        f = series({(1, 1): 2}, cap=2, box=(1, 2))
        with pytest.raises(TruncationError):
            f.coefficient((3, 0))
        with pytest.raises(TruncationError):
            f.coefficient((2, 0))
        with pytest.raises(LengthMismatchError):
            f.coefficient((1,))

    def test_truncate_only_lowers(self):
        """Test truncate refuses to raise the cap."""
        f = series({(1, 1): 2}, cap=4)
        assert not f.truncate(1)
        with pytest.raises(TruncationError):
            f.truncate(5)


class TestStructure:
    """Test tensor helpers and substitution."""

    def test_swap_and_bidegree(self):
        """Test τ and bidegrees on a rank-2 series."""
        pair = XY.with_rank(2)
        f = TruncatedSeries(pair, 4, 3, {(1, 0, 0, 1): 1})
        assert dict(f.swap_factors().terms) == {(0, 1, 1, 0): 1}
        assert f.bidegree((1, 0, 0, 1)) == (1, 1)
        assert not f.filter_bidegree(0, 4)

    def test_substitute(self):
        """Test x -> x + y, y -> y composes exactly."""
        f = series({(2, 0): 1, (0, 1): 1})
        images = [series({(1, 0): 1, (0, 1): 1}), series({(0, 1): 1})]
        result = substitute(f, images)
        assert dict(result.terms) == {(2, 0): 1, (1, 1): 2, (0, 2): 1, (0, 1): 1}

    def test_substitute_constant_refused(self):
        """Test images with a constant term are refused."""
        f = series({(1, 0): 1})
        images = [series({(0, 0): 1}), series({(0, 1): 1})]
        with pytest.raises(SubstitutionError):
            f.substitute(images)

    def test_restrict_and_relabel(self):
        """Test setting y to 0 and embedding back."""
        f = series({(1, 0): 1, (1, 1): 1})
        x_only = f.restrict([0], VariableSet(("x",)))
        assert dict(x_only.terms) == {(1,): 1}
        back = x_only.relabel(XY, [0])
        assert dict(back.terms) == {(1, 0): 1}

    def test_text(self):
        """Test the canonical ascending text."""
        f = series({(0, 0): 2, (2, 1): 1, (1, 0): 1})
        assert f.to_text() == "2 + x + x^2 y"
        assert series({}).to_text() == "0"
