import pytest

from fgdist.dist_algebra import DistLevel
from fgdist.errors import InputError, LevelEscapeError, OperandError
from fgdist.formal_group import builtin_law, default_cap
from fgdist.models import PoissonTableModel
from fgdist.splay_poisson import (
    Biderivation,
    PoissonTable,
    SplayDescription,
    SplayElement,
    check_jacobi,
    check_skew_and_constants,
    check_strongly_filtered,
    check_strongly_multiplicative,
    check_table,
    extend_biderivation,
    extract_pi,
    parse_element,
    table_from_model,
    table_to_model,
)


def make_dist(name, p, level):
    return DistLevel(builtin_law(name, p, default_cap(p, level)), level)


def t2_table(p, level):
    return extract_pi(make_dist("t2", p, level))


class TestSplayDescription:
    """Test generator bookkeeping of a splay."""

    def setup_method(self):
        """Build the T2 splay at p=2, R=1."""
        self.splay = SplayDescription.from_dist(make_dist("t2", 2, 1))

    def test_generators(self):
        """Test ids, blocks and weights."""
        splay = self.splay
        assert splay.coords == ("x", "y")
        assert splay.generator_count == 4
        assert splay.generator_block == (0, 0, 1, 1)
        assert splay.block_offsets == (0, 2)
        assert splay.weights == (1, 2, 1, 2)
        assert [splay.label(g) for g in range(4)] == ["x", "x^2", "y", "y^2"]
        assert splay.local(3) == (1, 1)
        assert list(splay.block_span(1)) == [2, 3]

    def test_words(self):
        """Test word parsing, formatting and normality."""
        splay = self.splay
        assert splay.parse_word("x x^2 y") == (0, 1, 2)
        assert splay.format_word((0, 1, 2)) == "x x^2 y"
        assert splay.format_word(()) == "1"
        assert splay.degree((0, 1, 2)) == 4
        assert splay.is_normal((0, 1, 3))
        assert not splay.is_normal((2, 0))
        assert not splay.is_normal((0, 0))

        with pytest.raises(LevelEscapeError):
            splay.parse_word("x^4")
        with pytest.raises(OperandError):
            splay.parse_word("x^3")

    def test_normal_words(self):
        """Test there are p^(generator count) normal words, sorted by degree."""
        words = self.splay.normal_words()
        assert len(words) == 16
        assert words[0] == ()
        assert words[-1] == (0, 1, 2, 3)
        degrees = [self.splay.degree(w) for w in words]
        assert degrees == sorted(degrees)

    def test_straighten(self):
        """Test sorting and Frobenius replacement."""
        splay = self.splay
        assert splay.straighten((2, 0)) == {(0, 2): 1}
        assert splay.straighten((0, 0)) == {(0,): 1}
        assert splay.straighten((2, 2)) == {}

    def test_coproduct(self):
        """Test Δ(δ_{x^2}) in normal words."""
        assert self.splay.coproduct(1) == {((1,), ()): 1, ((0,), (0,)): 1, ((), (1,)): 1}
        assert self.splay.coproduct_word(()) == {((), ()): 1}

    def test_elements(self):
        """Test element validation and parsing."""
        splay = self.splay
        assert parse_element(splay, "y x").terms == {(0, 2): 1}
        assert parse_element(splay, "x x").terms == {(0,): 1}
        assert not parse_element(splay, "y y")
        assert parse_element(splay, "y x + x^2").to_text() == "x^2 + x y"

        with pytest.raises(LevelEscapeError):
            SplayElement(splay, {(2, 0): 1})

    def test_swapped(self):
        """Test exchanging adjacent blocks."""
        swapped = self.splay.swapped(0)
        assert swapped.coords == ("y", "x")
        assert self.splay.translate(0, swapped) == 2
        assert self.splay.translate(3, swapped) == 1

        with pytest.raises(InputError):
            self.splay.swapped(1)

    def test_non_commutative_block(self):
        """Test a non-commutative block is refused."""
        with pytest.raises(InputError):
            SplayDescription([make_dist("t2", 2, 0)])


class TestExtraction:
    """Test the canonical table of a distribution algebra."""

    def test_t2_tables(self):
        """Test the T2 brackets on generators."""
        table = t2_table(2, 1)
        assert len(table) == 1
        assert table.bracket(2, 1).to_text() == "y"
        assert table.bracket(1, 2).to_text() == "y"
        assert not table.bracket(2, 0)
        assert table.to_text() == "π(y, x^2) = y"

        table = t2_table(3, 0)
        assert table.to_text() == "π(y, x) = y"
        assert table.bracket(0, 1).terms == {(1,): 2}

    def test_commutative_law(self):
        """Test a commutative product has the empty table."""
        table = extract_pi(make_dist("ga,gm", 3, 0))
        assert len(table) == 0
        assert table.to_text() == "(empty table)"
        assert table.cross_pairs() == [(1, 0)]


class TestBiderivation:
    """Test the extension of a table to words."""

    def test_leibniz(self):
        """Test the Leibniz rule in both arguments."""
        table = t2_table(3, 0)
        bider = Biderivation(table)
        assert bider((1, 1), (0,)).terms == {(1, 1): 2}
        assert bider((1,), (0, 0)).terms == {(0, 1): 2}
        assert not bider((), (0,))

    def test_quotient(self):
        """Test normalizing in the quotient picks up the bracket."""
        table = t2_table(3, 0)
        value = extend_biderivation(table, (1,), (0, 0), quotient=True)
        assert value.terms == {(0, 1): 2, (1,): 1}


class TestChecks:
    """Test the table checks and their failures."""

    def test_canonical_tables_pass(self):
        """Test extracted tables pass every check."""
        for p, level in [(2, 0), (2, 1), (3, 0), (3, 1)]:
            report = check_table(t2_table(p, level))
            assert report.passed, report.to_text()
        assert check_jacobi(t2_table(2, 1)).facts['triples'] == 20

    def test_slack(self):
        """Test the filtration slack is reported per entry."""
        report = check_strongly_filtered(t2_table(2, 1))
        assert report.facts['slack'] == {"y,x^2": 1}

    def test_skew_failure(self):
        """Test a reverse entry that is not the negation is refused."""
        table = t2_table(3, 0)
        broken = table.with_entry(0, 1, table.bracket(1, 0))
        report = check_skew_and_constants(broken)
        assert report.result("skew-symmetry").passed is False
        assert report.result("skew-symmetry").witness == "(x, y)"

    def test_internal_symmetry_failure(self):
        """Test a bracket inside one block is refused."""
        table = t2_table(2, 1)
        broken = table.with_entry(1, 0, table.splay.generator_element(0))
        report = check_table(broken)
        assert report.first_failure().name == "internal-symmetry"
        assert report.first_failure().witness == "(x^2, x)"

    def test_filtration_failure(self):
        """Test a bracket of too high degree is refused."""
        table = t2_table(3, 0)
        broken = table.with_entry(1, 0, table.splay.element({(0, 1): 1}))
        report = check_table(broken)
        assert report.first_failure().name == "strongly-filtered"
        assert report.first_failure().witness == "(y, x): degree 2"

    def test_jacobi_failure(self):
        """Test a spurious bracket breaks the Jacobi identity."""
        table = t2_table(3, 1)
        broken = table.with_entry(3, 0, table.splay.generator_element(0))
        assert check_strongly_filtered(broken).passed
        assert check_jacobi(broken).passed is False
        assert check_table(broken).result("jacobi").passed is False

    def test_strong_multiplicativity_failure(self):
        """Test a constant bracket between additive blocks is refused."""
        splay = SplayDescription.from_dist(make_dist("ga,ga", 3, 0))
        table = PoissonTable(splay, {(1, 0): splay.unit()})
        assert check_jacobi(table).passed
        report = check_strongly_multiplicative(table)
        assert report.passed is False
        assert report.first_failure().witness == "(y_2, y_1)"


class TestSerialization:
    """Test the table JSON model."""

    def test_round_trip(self):
        """Test a table survives its JSON model."""
        for p, level in [(2, 1), (3, 1)]:
            table = t2_table(p, level)
            payload = table_to_model(table).model_dump_json()
            restored = table_from_model(PoissonTableModel.model_validate_json(payload))
            assert restored.to_text() == table.to_text()
            assert restored.splay.coords == ("x", "y")

    def test_entry_text(self):
        """Test entries are written with generator labels."""
        model = table_to_model(t2_table(2, 1))
        assert model.level == 1
        assert [(e.eta, e.zeta) for e in model.entries] == [("y", "x^2")]
        assert [(t.monomial, t.coeff) for t in model.entries[0].value] == [("y", 1)]
