import dataclasses
from types import MappingProxyType

import pytest

from fgdist.dist_algebra import DistLevel
from fgdist.errors import AxiomViolation, InputError
from fgdist.formal_group import builtin_law, default_cap
from fgdist.models import AlgebraModel
from fgdist.reconstruct import (
    algebra_from_model,
    algebra_to_model,
    build_U,
    check_associativity,
    compare_with_oracle,
    dvps_verify,
    format_coproduct,
    swap_order_equivalence,
)
from fgdist.splay_poisson import PoissonTable, SplayDescription, extract_pi


def make_dist(name, p, level):
    return DistLevel(builtin_law(name, p, default_cap(p, level)), level)


def reconstruct(dist):
    table = extract_pi(dist)
    return build_U(table.splay, table)


class TestBuild:
    """Test the reconstruction of U from the splay and the table."""

    def setup_method(self):
        """Reconstruct T2 at p=2, R=1."""
        self.dist = make_dist("t2", 2, 1)
        self.U = reconstruct(self.dist)

    def test_shape(self):
        """Test the basis and the stored structure constants."""
        U = self.U
        assert U.dimension == 16
        assert U.p == 2
        assert len(U.products) == 256
        assert U.basis[0] == ()

    def test_products(self):
        """Test the commutation relation in U."""
        U = self.U
        assert U.product((2,), (1,)).to_text() == "x^2 y + y"
        assert U.product((1,), (2,)).to_text() == "x^2 y"
        y, x2 = U.splay.generator_element(2), U.splay.generator_element(1)
        assert U.multiply(y, x2).to_text() == "x^2 y + y"
        assert U.multiply(U.unit(), y) == y

    def test_coproduct(self):
        """Test the coproduct on generators and words."""
        U = self.U
        assert format_coproduct(U, U.coproducts[(1,)]) == "x^2⊗1 + x⊗x + 1⊗x^2"
        assert U.coproducts[(1,)] == U.splay.coproduct(1)
        assert U.comul(U.unit()) == {((), ()): 1}
        assert len(U.coproducts[(1, 2)]) == 6

    def test_additive_presentation(self):
        """Test E_J and its coproduct."""
        U = self.U
        assert U.additive_element((2, 0)).terms == {(1,): 1}
        assert U.additive_element((0, 0)) == U.unit()
        assert len(U.additive_comul((1, 1))) == 4

    def test_text(self):
        """Test the summary lists non-trivial products."""
        text = self.U.to_text()
        assert text.splitlines()[0] == "U: dimension 16 over F_2, level 1"
        assert "y · x^2 = x^2 y + y" in text

    def test_refusals(self):
        """Test bad tables are refused before reconstruction."""
        table = extract_pi(make_dist("t2", 3, 0))
        broken = table.with_entry(1, 0, table.splay.element({(0, 1): 1}))
        with pytest.raises(AxiomViolation) as excinfo:
            build_U(broken.splay, broken)
        assert excinfo.value.axiom == "strongly-filtered"

        other = SplayDescription.from_dist(make_dist("t2", 3, 0))
        with pytest.raises(InputError):
            build_U(other, table)


ORACLE_GRID = [
    ("ga", 2, 0), ("ga", 3, 1),
    ("gm", 2, 1), ("gm", 3, 0),
    ("t2", 2, 0), ("t2", 2, 1), ("t2", 3, 0), ("t2", 3, 1), ("t2", 5, 0),
    ("ga,gm", 2, 0), ("ga,gm", 2, 1), ("ga,gm", 3, 0),
]


class TestVerification:
    """Test the coproduct verification and the oracle comparison."""

    @pytest.mark.parametrize("name, p, level", ORACLE_GRID)
    def test_round_trip_against_oracle(self, name, p, level):
        """Test U reproduces Dist(G) and carries a compatible coproduct."""
        dist = make_dist(name, p, level)
        U = reconstruct(dist)
        report = compare_with_oracle(U, dist)
        assert report.passed, report.to_text()
        assert report.facts['structure_constants'] == dist.dimension ** 2
        verification = dvps_verify(U)
        assert verification.passed, verification.to_text()

    def test_dvps(self):
        """Test the coproduct is an algebra map, coassociative and counital."""
        U = reconstruct(make_dist("t2", 2, 1))
        report = dvps_verify(U)
        assert report.passed, report.to_text()
        assert report.facts['scope'] == "all basis pairs"

        generators = dvps_verify(U, "generators")
        assert generators.passed
        assert generators.facts['scope'] == "generator × basis pairs"

        with pytest.raises(InputError):
            dvps_verify(U, "some")

    def test_corrupted_products(self):
        """Test a wrong structure constant is caught."""
        dist = make_dist("t2", 2, 1)
        U = reconstruct(dist)
        products = dict(U.products)
        products[((2,), (1,))] = U.splay.element({(1, 2): 1})
        corrupted = dataclasses.replace(U, products=MappingProxyType(products))

        assert dvps_verify(corrupted, "all").result("multiplicative").passed is False
        oracle = compare_with_oracle(corrupted, dist)
        assert oracle.first_failure().witness == "(y, x^2)"

    def test_missing_bracket(self):
        """Test dropping the only bracket diverges from Dist(G) at (y, x^2)."""
        dist = make_dist("t2", 2, 1)
        table = extract_pi(dist).without_entry(2, 1)
        U = build_U(table.splay, table)
        report = compare_with_oracle(U, dist)
        assert report.passed is False
        assert report.first_failure().witness == "(y, x^2)"
        assert report.first_failure().detail == "U gives x^2 y, Dist(G) gives x^2 y + y"

    def test_oracle_mismatch(self):
        """Test the oracle must match coordinates, p and level."""
        U = reconstruct(make_dist("t2", 2, 1))
        with pytest.raises(InputError):
            compare_with_oracle(U, make_dist("t2", 2, 0))
        with pytest.raises(InputError):
            compare_with_oracle(U, make_dist("ga,gm", 2, 1))

    def test_associativity(self):
        """Test U is associative."""
        report = check_associativity(reconstruct(make_dist("t2", 2, 1)))
        assert report.passed
        assert report.facts['triples'] == 16 ** 3


class TestSwap:
    """Test the order-swap equivalence."""

    @pytest.mark.parametrize("p, level", [(2, 0), (2, 1), (3, 0), (3, 1)])
    def test_swap_passes(self, p, level):
        """Test the transported table matches under the block antipodes."""
        table = extract_pi(make_dist("t2", p, level))
        report = swap_order_equivalence(table.splay, table, 0)
        assert report.passed, report.to_text()
        assert report.facts['checked_pairs'] == (level + 1) ** 2
        assert report.facts['unchecked_pairs'] == 0

    def test_swapped_table(self):
        """Test the single bracket of T2 survives the swap."""
        for p, level in [(2, 1), (3, 0)]:
            table = extract_pi(make_dist("t2", p, level))
            assert swap_order_equivalence(table.splay, table, 0).facts['swapped_entries'] == 1

    def test_swap_without_antipode(self):
        """Test leaving out the multiplicative block's antipode fails at p=3."""
        table = extract_pi(make_dist("t2", 3, 0))
        report = swap_order_equivalence(table.splay, table, 0, antipode_blocks=[1])
        assert report.passed is False
        assert report.first_failure().witness == "(y, x)"

    def test_single_block(self):
        """Test a single block swaps vacuously."""
        splay = SplayDescription.from_dist(make_dist("gm", 3, 0))
        report = swap_order_equivalence(splay, PoissonTable(splay))
        assert report.passed
        assert report.results[0].detail == "single block"


class TestSerialization:
    """Test the algebra JSON model."""

    def test_round_trip(self):
        """Test a reconstructed algebra survives its JSON model."""
        dist = make_dist("t2", 2, 1)
        U = reconstruct(dist)
        payload = algebra_to_model(U).model_dump_json()
        restored = algebra_from_model(AlgebraModel.model_validate_json(payload))

        assert restored.dimension == U.dimension
        assert restored.to_text() == U.to_text()
        assert compare_with_oracle(restored, dist).passed
        assert dvps_verify(restored).passed

    def test_missing_products(self):
        """Test an algebra file without every structure constant is refused."""
        model = algebra_to_model(reconstruct(make_dist("t2", 2, 0)))
        truncated = model.model_copy(update={"products": model.products[:-1]})
        with pytest.raises(InputError):
            algebra_from_model(truncated)
