import json
import shutil
import tempfile
from pathlib import Path

import pytest

from fgdist.errors import AxiomViolation, InputError, LawParseError
from fgdist.formal_group import (
    builtin_additive,
    builtin_law,
    builtin_multiplicative,
    builtin_t2,
    default_cap,
    dump_law,
    inverse_series,
    law_from_model,
    load_custom,
    parse_law_model,
    validate,
)
from fgdist.power_series import TruncatedSeries


def closure_failing_law():
    """Two additive blocks, but m(y) picks up x⊗x."""
    return {
        "p": 3,
        "cap": 4,
        "coords": ["x", "y"],
        "blocks": [{"kind": "additive", "coords": ["x"]}, {"kind": "additive", "coords": ["y"]}],
        "comul": {
            "x": [{"left": [1, 0], "right": [0, 0], "coeff": 1},
                  {"left": [0, 0], "right": [1, 0], "coeff": 1}],
            "y": [{"left": [0, 1], "right": [0, 0], "coeff": 1},
                  {"left": [0, 0], "right": [0, 1], "coeff": 1},
                  {"left": [1, 0], "right": [1, 0], "coeff": 1}],
        },
    }


def non_associative_law():
    """m(x) = x⊗1 + 1⊗x + x^2⊗x, which breaks coassociativity at p=3."""
    return {
        "p": 3,
        "cap": 4,
        "coords": ["x"],
        "blocks": [{"kind": "custom", "coords": ["x"]}],
        "comul": {
            "x": [{"left": [1], "right": [0], "coeff": 1},
                  {"left": [0], "right": [1], "coeff": 1},
                  {"left": [2], "right": [1], "coeff": 1}],
        },
    }


class TestBuiltins:
    """Test the built-in laws."""

    def test_builtins_validate(self):
        """Test every built-in passes validation."""
        test_cases = [
            ("ga", 3, 0),
            ("gm", 2, 1),
            ("t2", 2, 1),
            ("t2", 3, 1),
            ("ga,gm", 3, 0),
        ]
        for name, p, level in test_cases:
            report = validate(builtin_law(name, p, default_cap(p, level)))
            assert report.passed, report.to_text()

    def test_t2_is_not_commutative(self):
        """Test the whole T2 law is non-commutative while its blocks are."""
        report = validate(builtin_t2(2, 6))
        assert report.passed
        assert report.facts['commutative'] is False
        assert builtin_multiplicative(2, 6).is_commutative

    def test_t2_blocks(self):
        """Test the T2 blocks are G_m and G_a."""
        t2 = builtin_t2(3, 8)
        assert t2.restrict(0) == builtin_multiplicative(3, 8)
        assert t2.restrict(1) == builtin_additive(3, 8)

    def test_products(self):
        """Test products concatenate coordinates and blocks."""
        law = builtin_law("ga,gm", 3, 4)
        assert law.coords == ("y", "x")
        assert len(law.blocks) == 2
        assert law.name == "ga×gm"

        twice = builtin_law("ga,ga", 3, 4)
        assert twice.coords == ("y_1", "y_2")

    def test_unknown_builtin(self):
        """Test unknown names are input errors."""
        with pytest.raises(InputError):
            builtin_law("sl2", 3, 4)

    def test_default_cap(self):
        """Test the cap 2(p^(R+1) - 1)."""
        assert default_cap(2, 1) == 6
        assert default_cap(3, 0) == 4


class TestInverse:
    """Test the inverse series."""

    def test_additive(self):
        """Test i(y) = -y."""
        law = builtin_additive(5, 6)
        (inverse,) = inverse_series(law)
        assert dict(inverse.terms) == {(1,): 4}

    def test_inverse_cancels(self):
        """Test m(x, i(x)) = 0 up to the cap."""
        for law in (builtin_multiplicative(3, 8), builtin_t2(2, 6), builtin_t2(3, 8)):
            xs = [TruncatedSeries.variable(law.variables, k, law.cap, law.p) for k in range(law.n)]
            inverse = list(inverse_series(law))
            for m in law.comul:
                assert not m.substitute(xs + inverse)

    def test_multiplicative(self):
        """Test i(x) = -x + x^2 - x^3 + ... for G_m."""
        (inverse,) = inverse_series(builtin_multiplicative(5, 4))
        assert dict(inverse.terms) == {(1,): 4, (2,): 1, (3,): 4, (4,): 1}


class TestCustomLaws:
    """Test loading and validating custom laws."""

    def setup_method(self):
        """Create a temporary directory for law files."""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """Clean up temporary files."""
        shutil.rmtree(self.temp_dir)

    def test_round_trip(self):
        """Test dump_law output loads back to the same law."""
        law = builtin_t2(3, 8)
        assert load_custom(dump_law(law)) == law
        assert load_custom(json.dumps(dump_law(law))) == law

    def test_load_from_file(self):
        """Test a law file path is read."""
        path = Path(self.temp_dir) / "gm.json"
        path.write_text(json.dumps(dump_law(builtin_multiplicative(2, 6))), encoding='utf-8')
        assert load_custom(path) == builtin_multiplicative(2, 6)
        assert load_custom(str(path)) == builtin_multiplicative(2, 6)

    def test_closure_failure(self):
        """Test a block leaking into another is refused with its axiom."""
        report = validate(law_from_model(parse_law_model(closure_failing_law())))
        assert [r.name for r in report.failures()] == ["block-closure"]

        with pytest.raises(AxiomViolation) as excinfo:
            load_custom(closure_failing_law())
        assert excinfo.value.axiom == "block-closure"

    def test_coassociativity_failure(self):
        """Test a non-coassociative series is refused."""
        report = validate(law_from_model(parse_law_model(non_associative_law())))
        assert report.result("coassociativity").passed is False
        assert report.result("counit").passed is True

    def test_malformed_descriptions(self):
        """Test malformed input raises LawParseError."""
        bad_prime = dict(non_associative_law(), p=4)
        bad_coeff = non_associative_law()
        bad_coeff["comul"]["x"][0]["coeff"] = 7
        missing_file = str(Path(self.temp_dir) / "missing.json")

        test_cases = ["{not json", bad_prime, bad_coeff, missing_file]
        for description in test_cases:
            with pytest.raises(LawParseError):
                parse_law_model(description)
