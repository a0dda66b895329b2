"""
Tests for the operational calculus layer.

Groups:
    1. Parameter polynomials
    2. Operational expressions, rendering and ring laws
    3. Fractional expressions and annihilation
    4. Operator matrices and determinants
    5. Lowering to sampled signals
"""

from fractions import Fraction

import numpy as np
import pytest
from scipy.special import gamma

from pyfracident.errors import ModelError
from pyfracident.estimators import Group, ModelSpec
from pyfracident.fracops import frac_integral
from pyfracident.opcalc import (
    ONE,
    FracOpExpr,
    OperatorMatrix,
    OpExpr,
    ParamPoly,
    build_P,
    build_operator_matrix,
    check_bindings,
    det,
    fractional_kernel,
    generate_equations,
    lower,
    lower_shifted,
    lower_shifted_at,
    lower_term_at,
    make_monomial,
    monomial_split,
    monomial_str,
    normalize,
    sorted_tags,
)
from pyfracident.signals import SampledSignal, convolve, repeated_integral, t_weight

DT = 1e-3
T = 1.0

ALPHA = make_monomial({"alpha": 1})

# ── Shared fixtures ──────────────────────────────────────────────────────────


@pytest.fixture(scope="module")
def y():
    return OpExpr.signal("y")


@pytest.fixture(scope="module")
def u():
    return OpExpr.signal("u")


@pytest.fixture(scope="module")
def bindings():
    return {
        "u": SampledSignal.from_function(lambda t: np.cos(3 * t), T, DT),
        "y": SampledSignal.from_function(lambda t: 1.0 + t**2, T, DT),
    }


# ── 1. Parameter polynomials ────────────────────────────────────────────────


class TestParamPoly:
    def test_canonical_rendering(self):
        a = ParamPoly.symbol("alpha")
        assert str((a - 1) * ParamPoly.symbol("E0")) == "E0*alpha - E0"

    def test_parse_and_evaluate(self):
        p = ParamPoly.parse("1/2*alpha + 2")
        assert p.evaluate({"alpha": 1.0}) == pytest.approx(2.5)

    def test_parse_powers_and_signs(self):
        p = ParamPoly.parse("-2*a1^2 + b - 3")
        assert p.coefficient(make_monomial({"a1": 2})) == -2
        assert p.constant_term == -3
        assert p.degree == 2
        assert p.symbols == frozenset({"a1", "b"})

    @pytest.mark.parametrize("text", ["", "alpha +", "2 alpha", "a^-1", "(a)"])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            ParamPoly.parse(text)

    def test_exact_cancellation(self):
        a = ParamPoly.symbol("a")
        assert ((a + 1) ** 2 - a * a - 2 * a - 1).is_zero

    def test_float_coefficients_are_exact_decimals(self):
        assert ParamPoly.const(0.1).constant_value() == Fraction(1, 10)

    def test_equality_with_numbers_and_hash(self):
        assert ParamPoly.const(2) == 2
        assert ParamPoly.parse("a + 1") == ParamPoly.parse("1 + a")
        assert hash(ParamPoly.parse("a + 1")) == hash(ParamPoly.parse("1 + a"))

    def test_evaluate_on_arrays(self):
        p = ParamPoly.parse("a*b")
        out = p.evaluate({"a": np.array([1.0, 2.0]), "b": np.array([3.0, 4.0])})
        np.testing.assert_allclose(out, [3.0, 8.0])

    def test_evaluate_missing_value(self):
        with pytest.raises(KeyError):
            ParamPoly.symbol("a").evaluate({})

    def test_constant_value_of_symbolic_poly(self):
        with pytest.raises(ValueError):
            ParamPoly.symbol("a").constant_value()

    def test_rename(self):
        assert ParamPoly.parse("c_1*alpha").rename({"c_1": "kappa"}) == ParamPoly.parse(
            "alpha*kappa"
        )


class TestMonomials:
    def test_make_monomial_merges_and_sorts(self):
        assert make_monomial([("b", 1), ("a", 2), ("b", 1), ("c", 0)]) == (("a", 2), ("b", 2))

    @pytest.mark.parametrize("powers", [{"1a": 1}, {"a": -1}, {"a": 0.5}])
    def test_make_monomial_rejects(self, powers):
        with pytest.raises(ValueError):
            make_monomial(powers)

    def test_split(self):
        m = make_monomial({"E0": 1, "alpha": 1, "E1": 2})
        inside, outside = monomial_split(m, {"E1"})
        assert inside == (("E1", 2),)
        assert outside == (("E0", 1), ("alpha", 1))

    def test_str(self):
        assert monomial_str(ONE) == "1"
        assert monomial_str(make_monomial({"E0": 1, "alpha": 2})) == "E0*alpha^2"


# ── 2. Operational expressions ──────────────────────────────────────────────


class TestOpExpr:
    def test_product_rule_rendering(self, y, u):
        assert (y * u).dds().render() == "1*u*y' + 1*u'*y"

    def test_power_rule(self):
        assert OpExpr.power_of_s(-2, 3).dds() == OpExpr.power_of_s(-3, -6)

    def test_constant_derivative_vanishes(self):
        assert OpExpr.constant(5).dds().is_zero

    def test_like_terms_merge(self, y):
        e = y.shift(-1) * 2 + y.shift(-1).scale("alpha") - y.shift(-1) * 2
        assert len(e) == 1
        assert e.render() == "alpha*s^-1*y"

    def test_negative_terms_render_with_minus(self, y, u):
        e = y - u.scale("E0")
        assert e.render() == "-E0*u + 1*y"

    def test_multinomial_coefficient_is_parenthesized(self, y):
        assert y.scale("a + 1").render() == "(a + 1)*y"

    def test_terms_order_by_descending_power(self, y):
        e = y.shift(-2) + y + y.shift(1)
        assert [term.s_power for term in e.terms()] == [1, 0, -2]

    def test_inspection(self, y, u):
        e = (y * u).scale("E0").shift(-1) + OpExpr.power_of_s(2)
        assert e.max_s_power == 2
        assert e.signal_ids == frozenset({"u", "y"})
        assert e.symbols == frozenset({"E0"})

    def test_negative_derivative_order_rejected(self):
        with pytest.raises(ValueError):
            OpExpr.signal("y", order=-1)

    def test_zero_renders(self):
        assert OpExpr.zero().render() == "0"
        assert not OpExpr.zero()

    def test_rename(self, y):
        assert y.scale("c_1").rename({"c_1": "kappa"}) == y.scale("kappa")


def random_expr(rng, n_terms=3):
    """Sum of scaled, shifted products of u, y and their s-derivatives."""
    e = OpExpr.zero()
    for _ in range(n_terms):
        term = OpExpr.constant(int(rng.choice([-3, -2, -1, 1, 2, 3])))
        for _ in range(int(rng.integers(0, 3))):
            term = term * OpExpr.signal(str(rng.choice(["u", "y"])), int(rng.integers(0, 2)))
        term = term.shift(int(rng.integers(-2, 2)))
        if rng.random() < 0.5:
            term = term.scale(str(rng.choice(["a", "alpha", "E0"])))
        e = e + term
    return e


class TestRingLaws:
    @pytest.mark.parametrize("seed", range(6))
    def test_associativity(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = (random_expr(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)

    @pytest.mark.parametrize("seed", range(6))
    def test_distributivity(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = (random_expr(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c

    @pytest.mark.parametrize("seed", range(6))
    def test_commutativity_and_inverse(self, seed):
        rng = np.random.default_rng(seed)
        a, b = random_expr(rng), random_expr(rng)
        assert a * b == b * a
        assert (a - a).is_zero

    @pytest.mark.parametrize("seed", range(6))
    def test_dds_product_rule(self, seed):
        rng = np.random.default_rng(seed)
        a, b = random_expr(rng), random_expr(rng)
        assert (a * b).dds() == a.dds() * b + a * b.dds()

    @pytest.mark.parametrize("seed", range(6))
    def test_dds_is_linear(self, seed):
        rng = np.random.default_rng(seed)
        a, b = random_expr(rng), random_expr(rng)
        assert (a.scale("E0") + b).dds() == a.dds().scale("E0") + b.dds()


# ── 3. Fractional expressions ───────────────────────────────────────────────


class TestFracOpExpr:
    def test_dds_brings_down_the_exponent(self, y):
        e = FracOpExpr({"alpha": y})
        assert e.dds().slot("alpha").render() == "1*y' + alpha*s^-1*y"

    def test_slots_merge_and_drop_zero(self, y):
        e = FracOpExpr({"alpha": y}) + FracOpExpr({"alpha": -y, 0: y})
        assert [str(tag) for tag in e.tags] == ["0"]

    def test_nonlinear_tag_rejected(self, y):
        with pytest.raises(ValueError):
            FracOpExpr({"alpha^2": y})

    def test_annihilate_removes_constant_slot(self, y):
        """(s d/ds - beta) kills c*s^beta."""
        e = FracOpExpr({"beta": OpExpr.constant(3), 0: y})
        out = e.annihilate("beta")
        assert out.slot("beta").is_zero
        assert out.slot(0) == OpExpr.signal("y", 1).shift(1) - y.scale("beta")

    def test_tag_order_known_first(self):
        tags = sorted_tags([ParamPoly.parse("alpha"), ParamPoly.const(1), ParamPoly.const(0)])
        assert [str(t) for t in tags] == ["0", "1", "alpha"]

    def test_symbols_include_tags(self, y):
        e = FracOpExpr({"beta": y.scale("c")})
        assert e.symbols == frozenset({"beta", "c"})


# ── 4. Operator matrices ────────────────────────────────────────────────────


class TestOperatorMatrix:
    def test_single_entry(self, y):
        assert det(OperatorMatrix(((y,),))).render() == "1*y"

    def test_non_square_rejected(self, y):
        with pytest.raises(ModelError):
            OperatorMatrix(((y, y),))
        with pytest.raises(ModelError):
            OperatorMatrix(())

    def test_two_group_determinant(self, y, u):
        """Rows are the equation and its s-derivative; the exponent drops out."""
        matrix, tags = build_operator_matrix(FracOpExpr({0: y, "alpha": u}))
        assert [str(t) for t in tags] == ["0", "alpha"]
        expected = y * (u.dds() + u.shift(-1).scale("alpha")) - u * y.dds()
        assert matrix.det() == expected

    def test_three_by_three_cofactor_expansion(self):
        c = OpExpr.constant
        m = OperatorMatrix(((c(2), c(0), c(1)), (c(1), c(3), c(0)), (c(0), c(1), c(4))))
        assert det(m) == c(25)

    def test_recursive_rows_are_repeated_dds(self, y, u):
        """Row i of build_P holds the slots of the i-fold d/ds of row 0."""
        model = ModelSpec(
            (
                Group(0, y - u.scale("a")),
                Group("alpha", u.scale("b")),
                Group("beta", y.shift(-1).scale("c") + u),
            )
        )
        P, tags = build_P(model)
        equation = FracOpExpr({group.exponent: group.expr for group in model.groups})
        matrix, matrix_tags = build_operator_matrix(equation)
        columns = [str(tag) for tag in matrix_tags]
        assert sorted(str(tag) for tag in tags) == sorted(columns)
        for i in range(3):
            for j, tag in enumerate(tags):
                assert P[i, j] == matrix[i, columns.index(str(tag))], (i, str(tag))

    def test_zero_equation_rejected(self):
        with pytest.raises(ModelError):
            build_operator_matrix(FracOpExpr())


# ── 5. Lowering ──────────────────────────────────────────────────────────────


class TestLowering:
    def test_normalize(self, y):
        e, k = normalize(y.shift(2) + y)
        assert k == 2
        assert e.max_s_power == 0
        assert normalize(y.shift(-1))[1] == 0

    def test_product_becomes_convolution(self, y, u, bindings):
        out = lower(u * y.dds(), bindings)
        expected = convolve(bindings["u"], t_weight(bindings["y"], 1))
        np.testing.assert_allclose(out[ONE].values, expected.values)

    def test_negative_power_integrates(self, y, bindings):
        out = lower((y * 2).shift(-2) + y.shift(-1).scale("alpha"), bindings)
        np.testing.assert_allclose(
            out[ONE].values, 2 * repeated_integral(bindings["y"], 2).values
        )
        np.testing.assert_allclose(out[ALPHA].values, repeated_integral(bindings["y"], 1).values)

    def test_factorless_term_is_kernel(self, bindings):
        out = lower(OpExpr.power_of_s(-2), bindings)
        assert out[ONE].at(0.5) == pytest.approx(0.5)

    def test_positive_power_rejected(self, y, bindings):
        with pytest.raises(ModelError):
            lower(y.shift(1), bindings)

    def test_free_constant_rejected(self, bindings):
        with pytest.raises(ModelError):
            lower(OpExpr.constant(1), bindings)

    def test_unbound_signal_rejected(self, bindings):
        with pytest.raises(ModelError, match="not bound: z"):
            lower(OpExpr.signal("z"), bindings)

    def test_every_unbound_signal_is_named(self, y, bindings):
        expr = y.shift(-1) + OpExpr.signal("w").shift(-1) + OpExpr.signal("z").shift(-2)
        with pytest.raises(ModelError, match="not bound: w, z"):
            lower(expr, bindings)
        with pytest.raises(ModelError, match="not bound: w"):
            lower_shifted(expr, -0.5, bindings)

    def test_unbound_factor_at_a_single_time(self, bindings):
        with pytest.raises(ModelError, match="not bound"):
            lower_term_at((("z", 0),), -1.0, bindings, 10)

    def test_check_bindings(self, bindings):
        check_bindings(set(bindings), bindings)
        with pytest.raises(ModelError):
            check_bindings(["q"], bindings)

    def test_no_bindings_rejected(self, y):
        with pytest.raises(ModelError):
            lower(y, {})

    def test_lowering_is_additive(self, y, u, bindings):
        first = (y * u).scale("a").shift(-1) + y.shift(-2) + OpExpr.signal("u", 1).shift(-1)
        second = u.scale("a").shift(-1) + (y * y).shift(-1) - y.shift(-2).scale("E0")
        total = lower(first + second, bindings)
        parts = [lower(first, bindings), lower(second, bindings)]
        assert set(total) == set(parts[0]) | set(parts[1])
        for mono, signal in total.items():
            expected = sum(part[mono].values for part in parts if mono in part)
            scale = np.max(np.abs(expected))
            np.testing.assert_allclose(signal.values, expected, rtol=0, atol=1e-12 * scale)

    def test_dividing_by_s_integrates_the_lowered_signal(self, y, u, bindings):
        e = (y * u).scale("a") + OpExpr.signal("y", 1) * u - (u * u).scale("E0")
        shifted = lower(e.shift(-1), bindings)
        for mono, signal in lower(e, bindings).items():
            expected = repeated_integral(signal, 1).values
            scale = np.max(np.abs(expected))
            np.testing.assert_allclose(shifted[mono].values, expected, rtol=0, atol=1e-12 * scale)

    def test_generate_equations_integrates_each_row(self, y, bindings):
        base = lower(y.shift(-1), bindings)
        equations = generate_equations(base, 2)
        assert len(equations) == 3
        np.testing.assert_allclose(
            equations[2][ONE].values, repeated_integral(base[ONE], 2).values
        )
        with pytest.raises(ValueError):
            generate_equations(base, -1)

    def test_fractional_shift_uses_gl_integral(self, y, bindings):
        out = lower_shifted(y.shift(-1), 0.5, bindings)
        expected = frac_integral(bindings["y"], 0.5)
        np.testing.assert_allclose(out[ONE].values, expected.values)

    def test_pointwise_shift_matches_full(self, y, u, bindings):
        e = (u * y).scale("alpha").shift(-1) + y.shift(-2)
        full = lower_shifted(e, -0.3, bindings)
        at = lower_shifted_at(e, -0.3, bindings, 700)
        for mono, value in at.items():
            assert value == pytest.approx(full[mono].values[700], rel=1e-10)

    def test_pointwise_positive_power_rejected(self, y, bindings):
        with pytest.raises(ModelError):
            lower_term_at((("y", 0),), 0.5, bindings, 10)

    def test_fractional_kernel(self):
        k = fractional_kernel(0.25, 5, 0.5)
        assert k.values[0] == 0.0
        assert k.values[4] == pytest.approx(1 / gamma(0.5))
        np.testing.assert_allclose(fractional_kernel(0.25, 5, 1.0).values, np.ones(5))

    def test_pointwise_factorless_term(self, bindings):
        assert lower_term_at((), -1.0, bindings, 0) == 1.0
        assert lower_term_at((), -1.5, bindings, 1000) == pytest.approx(1 / gamma(1.5))
