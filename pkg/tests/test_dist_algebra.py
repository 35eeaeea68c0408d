import itertools

import pytest

from fgdist.config import Settings
from fgdist.dist_algebra import (
    DistLevel,
    MultMonomial,
    additive_to_mult,
    antipode,
    canonical_commutator,
    check_hopf_axioms,
    dist_comul,
    dist_mul,
    filtration_degree,
    frobenius_power,
    mult_combination_to_additive,
    pair,
)
from fgdist.errors import LevelEscapeError, OperandError, TruncationError
from fgdist.formal_group import builtin_law, builtin_t2, default_cap, load_custom


def make_level(name, p, level, **kwargs):
    return DistLevel(builtin_law(name, p, default_cap(p, level)), level, **kwargs)


UNIPOTENT_COORDS = ["u12", "u23", "u34", "u13", "u24", "u14"]


def unipotent_law():
    """Upper unitriangular 4x4 matrices over F_2; each entry its own additive block."""
    def term(left=(), right=()):
        return {"left": [int(c in left) for c in UNIPOTENT_COORDS],
                "right": [int(c in right) for c in UNIPOTENT_COORDS], "coeff": 1}

    comul = {c: [term(left=[c]), term(right=[c])] for c in UNIPOTENT_COORDS}
    comul["u13"].append(term(left=["u12"], right=["u23"]))
    comul["u24"].append(term(left=["u23"], right=["u34"]))
    comul["u14"] += [term(left=["u12"], right=["u24"]), term(left=["u13"], right=["u34"])]
    return {"p": 2, "cap": 2, "coords": UNIPOTENT_COORDS,
            "blocks": [{"kind": "additive", "coords": [c]} for c in UNIPOTENT_COORDS], "comul": comul}


class TestProducts:
    """Test multiplication through the pairing."""

    def test_known_products(self):
        """Test hand-computed products."""
        test_cases = [
            (("gm", 3, 0), (1,), (1,), {(2,): 2, (1,): 1}),
            (("ga", 2, 0), (1,), (1,), {}),
            (("ga", 3, 1), (1,), (2,), {}),
            (("t2", 2, 1), (1, 0), (0, 2), {(1, 2): 1}),
            (("t2", 2, 1), (2, 0), (0, 1), {(2, 1): 1, (1, 1): 1}),
            (("t2", 2, 1), (0, 1), (2, 0), {(2, 1): 1, (1, 1): 1, (0, 1): 1}),
        ]
        for args, I, J, expected in test_cases:
            level = make_level(*args)
            assert dict(dist_mul(level.delta(I), level.delta(J)).terms) == expected, (args, I, J)

    def test_additive_binomials(self):
        """Test G_a products are binomial coefficients."""
        level = make_level("ga", 3, 1)
        product = level.delta((1,)) * level.delta((3,))
        assert dict(product.terms) == {(4,): 1}

    def test_unit(self):
        """Test 1 is the two-sided unit."""
        level = make_level("t2", 2, 1)
        for J in level.basis():
            delta = level.delta(J)
            assert level.unit() * delta == delta
            assert delta * level.unit() == delta

    def test_associativity(self):
        """Test associativity on every basis triple."""
        level = make_level("t2", 2, 1)
        basis = [level.delta(J) for J in level.basis()]
        for a, b, c in itertools.product(basis, repeat=3):
            assert (a * b) * c == a * (b * c)

    def test_table_modes_agree(self):
        """Test the per-pair walk gives the full table's structure constants."""
        law = builtin_t2(2, 6)
        full = DistLevel(law, 1, settings=Settings(full_table_limit=10 ** 6))
        walked = DistLevel(law, 1, settings=Settings(full_table_limit=0))
        for I, J in itertools.product(full.basis(), repeat=2):
            assert dict(full.basis_product(I, J)) == dict(walked.basis_product(I, J))

    def test_filtration(self):
        """Test degree(u v) <= degree(u) + degree(v)."""
        level = make_level("t2", 2, 1)
        for I, J in itertools.product(level.basis(), repeat=2):
            product = level.delta(I) * level.delta(J)
            assert filtration_degree(product) <= sum(I) + sum(J)

    def test_scalars(self):
        """Test scalar multiples reduce mod p."""
        level = make_level("gm", 3, 0)
        assert (level.delta((1,)) * 4) == level.delta((1,))
        assert 3 * level.delta((1,)) == level.zero()
        assert not level.zero()


class TestLevel:
    """Test the level bookkeeping."""

    def test_dimension(self):
        """Test the dimension (p^(R+1))^n."""
        assert make_level("t2", 2, 1).dimension == 16
        assert make_level("ga", 3, 0).dimension == 3
        assert make_level("gm", 3, 0).basis() == [(0,), (1,), (2,)]

    def test_escape(self):
        """Test indices above the bound are refused."""
        level = make_level("t2", 2, 1)
        with pytest.raises(LevelEscapeError):
            level.delta((4, 0))
        with pytest.raises(LevelEscapeError):
            MultMonomial.from_index((4,), 2, 1)

    def test_cap(self):
        """Test a cap below 2(p^(R+1)-1) needs unsafe_cap."""
        law = builtin_t2(2, 3)
        with pytest.raises(TruncationError):
            DistLevel(law, 1)
        assert DistLevel(law, 1, unsafe_cap=True).unsafe_cap

    def test_parse_and_text(self):
        """Test the operand syntax."""
        level = make_level("t2", 2, 1)
        u = level.parse("d[x^2 y] + d[y]")
        assert dict(u.terms) == {(2, 1): 1, (0, 1): 1}
        assert filtration_degree(u) == 3

        m = level.parse("m[x:0,1;y:1,0]")
        assert m.to_text() == "d[x^2 y] + d[x y]"
        assert level.parse("1") == level.unit()
        assert level.parse("0") == level.zero()

        gm = make_level("gm", 3, 0)
        assert (gm.delta((1,)) * gm.delta((1,))).to_text() == "2 d[x^2] + d[x]"

        with pytest.raises(OperandError):
            level.parse("d[z]")

    def test_pair(self):
        """Test the Kronecker pairing."""
        assert pair((1, 2), (1, 2), 3).residue == 1
        assert pair((1, 2), (2, 1), 3).residue == 0


class TestCoproduct:
    """Test the divided-power coproduct."""

    def test_unit(self):
        """Test Δ(1) = 1⊗1."""
        level = make_level("gm", 3, 0)
        assert dict(dist_comul(level.unit()).terms) == {((0,), (0,)): 1}

    def test_divided_power(self):
        """Test Δ(δ_{x^2}) = δ_{x^2}⊗1 + δ_x⊗δ_x + 1⊗δ_{x^2}."""
        level = make_level("gm", 3, 0)
        coproduct = dist_comul(level.delta((2,)))
        assert dict(coproduct.terms) == {((2,), (0,)): 1, ((1,), (1,)): 1, ((0,), (2,)): 1}
        assert coproduct.to_text() == "d[x^2]⊗1 + d[x]⊗d[x] + 1⊗d[x^2]"

    def test_counit(self):
        """Test both counit projections recover the element."""
        level = make_level("t2", 2, 1)
        u = level.parse("d[x^2 y] + d[y^3] + 1")
        assert dist_comul(u).apply_counit_left() == u
        assert dist_comul(u).apply_counit_right() == u

    def test_bialgebra(self):
        """Test Δ is multiplicative on basis pairs."""
        level = make_level("t2", 2, 1)
        basis = [level.delta(J) for J in level.basis()]
        for a, b in itertools.product(basis, repeat=2):
            assert dist_comul(a * b) == dist_comul(a) * dist_comul(b)


class TestBasisChange:
    """Test the additive and multiplicative bases."""

    def test_known_expansions(self):
        """Test small expansions."""
        ga = make_level("ga", 2, 1)
        mono = MultMonomial(((1, 1),))
        assert dict(ga.mult_to_additive(mono).terms) == {(3,): 1}
        assert dict(ga.mult_to_additive(MultMonomial(((0, 0),))).terms) == {(0,): 1}

        gm = make_level("gm", 3, 0)
        assert additive_to_mult(gm.delta((2,))) == {MultMonomial(((2,),)): 2, MultMonomial(((1,),)): 1}
        assert additive_to_mult(gm.unit()) == {MultMonomial(((0,),)): 1}

    def test_inverse_both_ways(self):
        """Test the two basis changes are mutually inverse."""
        test_cases = [("ga", 2, 2), ("gm", 3, 1), ("gm", 2, 2), ("t2", 2, 1), ("ga,gm", 3, 0)]
        for args in test_cases:
            level = make_level(*args)
            for J in level.basis():
                delta = level.delta(J)
                assert mult_combination_to_additive(level, additive_to_mult(delta)) == delta
                mono = MultMonomial.from_index(J, level.p, level.level)
                assert additive_to_mult(level.mult_to_additive(mono)) == {mono: 1}


class TestFrobeniusAndCommutators:
    """Test p-th powers and commutators of generators."""

    def test_frobenius(self):
        """Test F vanishes on G_a and fixes G_m generators."""
        ga = make_level("ga", 3, 1)
        gm = make_level("gm", 3, 1)
        t2 = make_level("t2", 2, 1)
        for g in range(2):
            assert not frobenius_power(ga, g)
            assert frobenius_power(gm, g) == gm.generator_element(g)
            assert frobenius_power(t2, g) == t2.generator_element(g)
            assert not frobenius_power(t2, 2 + g)

    def test_commutators(self):
        """Test commutators of T2 generators."""
        t2 = make_level("t2", 2, 1)
        x2, y = t2.delta((2, 0)), t2.delta((0, 1))
        assert dict(canonical_commutator(x2, y).terms) == {(0, 1): 1}

        t3 = make_level("t2", 3, 1)
        assert not canonical_commutator(t3.delta((1, 0)), t3.delta((0, 3)))

        gm = make_level("gm", 3, 1)
        assert not canonical_commutator(gm.delta((1,)), gm.delta((3,)))

    def test_commutator_filtration(self):
        """Test degree π_c(δ_{x^{p^s}}, δ_{y^{p^r}}) <= p^r + p^s - 1."""
        for p in (2, 3):
            level = make_level("t2", p, 1)
            for r, s in itertools.product(range(2), repeat=2):
                bracket = canonical_commutator(level.delta((p ** s, 0)), level.delta((0, p ** r)))
                assert filtration_degree(bracket) <= p ** r + p ** s - 1


class TestAntipode:
    """Test the antipode."""

    def test_values(self):
        """Test S on G_a and G_m."""
        ga = make_level("ga", 3, 1)
        for n in range(ga.bound + 1):
            assert antipode(ga.delta((n,))) == ga.delta((n,)).scale((-1) ** n)

        gm = make_level("gm", 2, 1)
        assert antipode(gm.unit()) == gm.unit()
        assert antipode(gm.delta((1,))) == gm.delta((1,))
        assert dict(antipode(gm.delta((2,))).terms) == {(1,): 1, (2,): 1}

    def test_hopf_axioms(self):
        """Test the Hopf axioms on the generators."""
        for args in [("t2", 2, 1), ("gm", 3, 0), ("ga", 2, 1), ("t2", 3, 0)]:
            report = check_hopf_axioms(make_level(*args))
            assert report.passed, report.to_text()

    def test_hopf_axioms_on_basis(self):
        """Test the antipode axiom on every basis element."""
        level = make_level("t2", 2, 1)
        report = check_hopf_axioms(level, [level.delta(J) for J in level.basis()[:6]])
        assert report.result("antipode-axiom").passed
        assert report.result("antipode-anti-morphism").passed

    def test_inverse_terms_above_the_law_cap(self):
        """Test S keeps inverse terms of degree above the cap inside the level box."""
        level = DistLevel(load_custom(unipotent_law()), 0)
        # i(u14) = u14 + u12 u24 + u13 u34 + u12 u23 u34 over F_2
        image = antipode(level.delta((1, 1, 1, 0, 0, 0)))
        assert image.terms.get((0, 0, 0, 0, 0, 1)) == 1
        image = antipode(level.delta((1, 0, 0, 0, 1, 0)))
        assert image.terms.get((0, 0, 0, 0, 0, 1)) == 1
