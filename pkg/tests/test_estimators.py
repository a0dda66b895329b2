"""
Tests for model declarations, regression helpers and the general pipeline.

Groups:
    1. Model declarations and grouping
    2. Model presets and model files
    3. Regression helpers (sweep, batched solve, back-solve, results)
    4. Elimination: initial-value terms and identification equations
    5. General identification (first-order lag, error paths)
"""

import logging

import numpy as np
import pytest

from pyfracident.errors import CoherenceError, ModelError, SingularRegressorError
from pyfracident.estimators import (
    Group,
    IdentOptions,
    IdentResult,
    InitRegime,
    ModelSpec,
    backsolve,
    check_coherence,
    coherence_residual,
    diffusion_wave_model,
    evaluation_indices,
    first_order_model,
    identification_equation,
    identify_general,
    initial_value_terms,
    is_overparametrized,
    load_model_file,
    lowered_equations,
    model_from_dict,
    model_to_dict,
    preprocess,
    recover_theta2,
    refine_physical,
    solve_batched,
    solve_system,
    voigt_model,
)
from pyfracident.estimators.regression import regressor_from_arrays
from pyfracident.fracops import Convention
from pyfracident.io import dump_yaml
from pyfracident.opcalc import OpExpr, ParamPoly, make_monomial

from .conftest import FIRST_ORDER, relative_error

Y = OpExpr.signal("y")
U = OpExpr.signal("u")

VOIGT_FILE = {
    "name": "voigt-file",
    "signals": {"input": "u", "output": "y"},
    "convention": "rl",
    "regime": "homogeneous",
    "groups": [
        {
            "exponent": "0",
            "terms": [{"coeff": "1", "factors": ["y"]}, {"coeff": "-E0", "factors": ["u"]}],
        },
        {"exponent": "alpha", "factor": "E1", "terms": [{"coeff": "-1", "factors": ["u"]}]},
    ],
}


def equation_residual(model, u, y, values, index=-1):
    """Relative imbalance of the lowered identification equation at given parameters."""
    _, (base,) = lowered_equations(model, u, y, 0)
    total, scale = 0.0, 0.0
    for mono, signal in base.items():
        weight = 1.0
        for name, power in mono:
            weight *= values[name] ** power
        contribution = weight * signal.values[index]
        total += contribution
        scale = max(scale, abs(contribution))
    return abs(total) / scale


# ── 1. Model declarations ───────────────────────────────────────────────────


class TestModelSpec:
    def test_parameter_stages(self):
        model = voigt_model()
        assert model.theta1 == frozenset({"alpha", "E0"})
        assert model.theta2 == frozenset({"E1"})
        assert model.r == 1

    def test_integer_offsets_fold_into_groups(self):
        """s^(alpha+1) E joins the alpha group as s^alpha (s E)."""
        model = ModelSpec((Group(0, Y), Group("alpha + 1", U), Group("alpha", U.scale("b"))))
        assert [str(tag) for tag in model.tags] == ["0", "alpha"]
        assert model.groups[1].expr == U.shift(1) + U.scale("b")

    def test_known_integer_exponent_joins_free_group(self):
        model = ModelSpec((Group(0, Y), Group(1, U)))
        assert len(model.groups) == 1
        assert model.groups[0].expr == Y + U.shift(1)

    def test_folded_groups_need_equal_factors(self):
        with pytest.raises(ModelError):
            ModelSpec((Group(0, Y), Group("a", U, "k"), Group("a + 1", U, "m")))

    def test_needs_a_known_exponent(self):
        with pytest.raises(ModelError, match="known"):
            ModelSpec((Group("alpha", Y),))

    def test_distinct_signal_ids(self):
        with pytest.raises(ModelError):
            ModelSpec((Group(0, Y),), input_id="y", output_id="y")

    def test_unknown_signals(self):
        with pytest.raises(ModelError, match="unknown signals"):
            ModelSpec((Group(0, Y + OpExpr.signal("z")),))

    def test_inhomogeneous_regime_needs_order_bound(self):
        with pytest.raises(ModelError):
            ModelSpec((Group(0, Y), Group("alpha", U)), regime="identify")

    def test_group_validation(self):
        with pytest.raises(ModelError):
            Group("alpha^2", Y)
        with pytest.raises(ModelError):
            Group(0, Y, factor=0)

    def test_regime_names(self):
        assert InitRegime.parse("eliminate-init") is InitRegime.ELIMINATE
        assert InitRegime.parse("Identify") is InitRegime.IDENTIFY
        with pytest.raises(ValueError):
            InitRegime.parse("guess")

    def test_with_regime(self):
        model = voigt_model().with_regime("identify-init", order_bound=1)
        assert model.regime is InitRegime.IDENTIFY
        assert model.order_bound == 1


class TestIdentOptions:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n_extra": -1},
            {"theta2_extra": 0.5},
            {"t_min": -1.0},
            {"n_times": 0},
            {"rcond": 0.0},
            {"coherence_tol": -1.0},
        ],
    )
    def test_rejects_invalid_values(self, kwargs):
        with pytest.raises(ValueError):
            IdentOptions(**kwargs)


# ── 2. Presets and model files ──────────────────────────────────────────────


class TestModelFiles:
    def test_file_declaration_matches_preset(self):
        model = model_from_dict(VOIGT_FILE)
        assert model.groups == voigt_model().groups
        assert model.name == "voigt-file"

    def test_dict_round_trip(self):
        model = diffusion_wave_model()
        again = model_from_dict(model_to_dict(model))
        assert again.groups == model.groups
        assert (again.input_id, again.output_id) == ("h", "g")

    def test_load_model_file(self, tmp_path):
        path = tmp_path / "model.yaml"
        dump_yaml(VOIGT_FILE, path)
        model = load_model_file(path)
        assert model.theta2 == frozenset({"E1"})

    @pytest.mark.parametrize(
        "change",
        [
            {"extra": 1},
            {"groups": []},
            {"convention": "hilfer"},
            {"groups": [{"exponent": "0", "terms": [{"factors": ["y!"]}]}]},
            {"groups": [{"exponent": "0", "terms": [{"s": 0.5, "factors": ["y"]}]}]},
            {"groups": [{"exponent": "0", "terms": [{"coeff": "2 y", "factors": ["y"]}]}]},
            {"groups": [{"exponent": "0", "weight": 1, "terms": []}]},
        ],
    )
    def test_invalid_declarations(self, change):
        with pytest.raises(ModelError):
            model_from_dict({**VOIGT_FILE, **change})

    def test_derivative_factors(self):
        data = {"groups": [{"exponent": "0", "terms": [{"factors": ["u", "y''"]}]}]}
        model = model_from_dict(data)
        assert model.groups[0].expr == U * OpExpr.signal("y", 2)


# ── 3. Regression helpers ───────────────────────────────────────────────────


class TestRegression:
    def test_evaluation_indices(self):
        indices = evaluation_indices(4001, 1.25e-3, IdentOptions(n_times=50))
        assert indices[0] == 400
        assert indices[-1] == 4000
        assert np.all(np.diff(indices) > 0)

    def test_evaluation_start_beyond_horizon(self):
        with pytest.raises(ValueError):
            evaluation_indices(101, 0.01, IdentOptions(t_min=2.0))

    def test_batched_solve_exact_system(self):
        matrix = np.array([[[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]]])
        rhs = matrix[0] @ np.array([3.0, -1.0])
        solution, s_min, ok, _ = solve_batched(matrix, rhs[None, :], 1e-10)
        np.testing.assert_allclose(solution[0], [3.0, -1.0])
        assert ok[0] and s_min[0] > 0

    def test_batched_solve_flags_rank_deficiency(self):
        matrix = np.array([[[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]]])
        solution, _, ok, _ = solve_batched(matrix, np.ones((1, 3)), 1e-10)
        assert not ok[0]
        assert np.isnan(solution[0]).all()

    def test_backsolve_divides_out_resolved_symbols(self):
        labels = [make_monomial({"alpha": 1}), make_monomial({"E0": 1, "alpha": 1})]
        theta = np.array([[0.5, 1.0]])
        physical = backsolve(labels, theta, np.ones_like(theta))
        assert physical["alpha"][0] == pytest.approx(0.5)
        assert physical["E0"][0] == pytest.approx(2.0)

    def test_backsolve_unresolvable(self):
        with pytest.raises(ModelError):
            backsolve([make_monomial({"a": 2})], np.ones((1, 1)), np.ones((1, 1)))

    def test_backsolve_known_values_excluded(self):
        labels = [make_monomial({"E1": 1, "c": 1})]
        physical = backsolve(labels, np.array([[0.6]]), np.ones((1, 1)), {"c": np.array([0.3])})
        assert set(physical) == {"E1"}
        assert physical["E1"][0] == pytest.approx(2.0)

    def test_overparametrized(self):
        hom = [make_monomial({"alpha": 1}), make_monomial({"E0": 1, "alpha": 1})]
        assert not is_overparametrized(hom)
        assert is_overparametrized(hom + [make_monomial({"alpha": 2})])


ELIMINATED_LABELS = [
    make_monomial({"alpha": 1}),
    make_monomial({"E0": 1}),
    make_monomial({"alpha": 2}),
    make_monomial({"E0": 1, "alpha": 1}),
    make_monomial({"E0": 1, "alpha": 2}),
]


def eliminated_products(alpha, E0):
    return np.array([alpha, E0, alpha**2, alpha * E0, alpha**2 * E0])


class TestNonlinearRefinement:
    @pytest.fixture
    def system(self):
        rng = np.random.default_rng(5)
        matrix = rng.normal(size=(3, 8, 5))
        rhs = matrix @ eliminated_products(0.5, 2.0)
        return matrix, rhs

    def test_recovers_parameters_from_a_perturbed_start(self, system):
        matrix, rhs = system
        start = {"alpha": np.array([0.52, 0.45, 0.5]), "E0": np.array([1.9, 2.2, 2.0])}
        refined = refine_physical(ELIMINATED_LABELS, matrix, rhs, start)
        np.testing.assert_allclose(refined["alpha"], 0.5, rtol=1e-8)
        np.testing.assert_allclose(refined["E0"], 2.0, rtol=1e-8)

    def test_times_without_a_start_stay_undefined(self, system):
        matrix, rhs = system
        start = {"alpha": np.array([0.5, np.nan, 0.5]), "E0": np.array([2.0, 2.0, np.nan])}
        refined = refine_physical(ELIMINATED_LABELS, matrix, rhs, start)
        assert np.isfinite(refined["alpha"][0])
        assert np.isnan(refined["alpha"][1]) and np.isnan(refined["E0"][2])

    def test_coherence_vanishes_for_consistent_monomials(self, system):
        matrix, rhs = system
        theta = np.tile(eliminated_products(0.5, 2.0), (3, 1))
        physical = {"alpha": np.full(3, 0.5), "E0": np.full(3, 2.0)}
        residual = coherence_residual(ELIMINATED_LABELS, theta, physical, matrix, rhs)
        np.testing.assert_allclose(residual, 0.0, atol=1e-12)

    def test_coherence_measures_the_equation_mismatch(self, system):
        matrix, rhs = system
        theta = np.tile(eliminated_products(0.5, 2.0), (3, 1))
        theta[:, 2] += 0.01
        physical = {"alpha": np.full(3, 0.5), "E0": np.full(3, 2.0)}
        residual = coherence_residual(ELIMINATED_LABELS, theta, physical, matrix, rhs)
        expected = 0.01 * np.linalg.norm(matrix[:, :, 2], axis=1) / np.linalg.norm(rhs, axis=1)
        np.testing.assert_allclose(residual, expected, rtol=1e-12)

    def test_coherence_ignores_errors_cancelling_in_collinear_columns(self):
        labels = [make_monomial({"a": 1}), make_monomial({"a": 2})]
        matrix = np.array([[[1.0, 1.0], [2.0, 2.0], [0.5, 0.5]]])
        rhs = matrix[0] @ np.array([2.0, 4.0])
        theta = np.array([[2.5, 3.5]])
        residual = coherence_residual(labels, theta, {"a": np.array([2.0])}, matrix, rhs[None])
        assert residual[0] == pytest.approx(0.0, abs=1e-15)

    def test_coherence_shrinks_with_the_noise_level(self, system):
        matrix, rhs = system
        noise = np.random.default_rng(11).normal(size=rhs.shape)
        residuals = []
        for level in (1e-2, 1e-4, 1e-6):
            noisy = regressor_from_arrays(
                ELIMINATED_LABELS, matrix, rhs + level * noise, np.arange(1, 4), 0.01
            )
            result = solve_system(noisy, IdentOptions(strict=False))
            residuals.append(result.coherence_residual)
            assert result.estimates["alpha"] == pytest.approx(0.5, rel=100 * level)
        assert residuals[0] > residuals[1] > residuals[2]
        assert residuals[2] < 1e-4

    def test_undefined_times_have_undefined_coherence(self, system):
        matrix, rhs = system
        theta = np.full((3, 5), np.nan)
        physical = {"alpha": np.full(3, np.nan), "E0": np.full(3, np.nan)}
        residual = coherence_residual(ELIMINATED_LABELS, theta, physical, matrix, rhs)
        assert np.isnan(residual).all()


class TestIdentResult:
    def make(self, **kwargs):
        data = dict(
            times=np.array([1.0, 2.0, 3.0]),
            trajectories={"alpha": np.array([0.4, 0.5, np.nan])},
            monomials={"alpha*c_1": np.array([1.0, 2.0, 3.0])},
            coherence=np.array([0.0, 0.01, 0.2]),
            min_singular=np.array([1e-3, 2e-3, 0.0]),
            well_conditioned=np.array([True, True, False]),
        )
        data.update(kwargs)
        return IdentResult(**data)

    def test_final_index_skips_invalid_times(self):
        result = self.make()
        assert result.final_index == 1
        assert result.estimates == {"alpha": 0.5}
        assert result.coherence_residual == pytest.approx(0.01)

    def test_no_valid_time(self):
        result = self.make(well_conditioned=np.zeros(3, dtype=bool))
        with pytest.raises(SingularRegressorError):
            result.final_index

    def test_renamed(self):
        result = self.make().renamed({"c_1": "kappa", "alpha": "a"})
        assert "a" in result.trajectories
        assert "a*kappa" in result.monomials

    def test_columns(self):
        names, table = self.make().columns()
        assert names == ["t", "alpha", "theta[alpha*c_1]", "coherence", "min_singular_value"]
        assert table.shape == (3, 5)

    def test_trajectory_lookup(self):
        with pytest.raises(KeyError):
            self.make().trajectory("E1")

    def test_coherence_check(self, caplog):
        result = self.make(coherence=np.array([0.0, 0.5, 0.0]))
        with pytest.raises(CoherenceError) as excinfo:
            check_coherence(result, IdentOptions())
        assert excinfo.value.residual == pytest.approx(0.5)
        with caplog.at_level(logging.WARNING):
            check_coherence(result, IdentOptions(strict=False))
        assert result.warnings and "coherence" in caplog.text


# ── 4. Elimination ───────────────────────────────────────────────────────────


class TestElimination:
    def test_voigt_identification_equation(self):
        expr, k = identification_equation(voigt_model())
        assert expr.render() == "1*u*y' - 1*u'*y + E0*alpha*s^-1*u*u - alpha*s^-1*u*y"
        assert k == 0

    def test_first_order_identification_equation(self):
        expr, k = identification_equation(first_order_model())
        assert expr.render() == "1*y - b*s^-1*u + a*s^-1*y"
        assert k == 1

    def test_rl_initial_value_terms(self):
        model = voigt_model(Convention.RL, InitRegime.IDENTIFY)
        assert initial_value_terms(model) == [("c_1", ParamPoly.zero(), 0)]

    def test_caputo_initial_value_terms(self):
        model = voigt_model(Convention.CAPUTO, InitRegime.IDENTIFY)
        assert initial_value_terms(model) == [("c_1_1", ParamPoly.symbol("alpha"), -1)]

    def test_homogeneous_has_no_initial_terms(self):
        assert initial_value_terms(voigt_model()) == []

    def test_identify_regime_adds_constants(self):
        equation = preprocess(voigt_model(Convention.RL, InitRegime.IDENTIFY))
        assert equation.slot(0) == Y - U.scale("E0") + OpExpr.constant("c_1")

    def test_rl_elimination_differentiates(self):
        equation = preprocess(voigt_model(Convention.RL, InitRegime.ELIMINATE))
        assert equation.slot(0) == Y.dds() - U.dds().scale("E0")
        assert "c_1" not in equation.symbols

    def test_caputo_elimination_annihilates(self):
        equation = preprocess(voigt_model(Convention.CAPUTO, InitRegime.ELIMINATE))
        assert not any(name.startswith("c_") for name in equation.symbols)
        assert [str(tag) for tag in equation.tags] == ["0", "alpha"]

    @pytest.mark.parametrize(
        "convention, data",
        [(Convention.RL, "voigt_rl_inhom_data"), (Convention.CAPUTO, "voigt_caputo_data")],
    )
    def test_eliminated_equation_holds_on_data_with_initial_values(
        self, convention, data, request
    ):
        """True parameters satisfy the eliminated equation; the homogeneous one misses."""
        eps, sigma = request.getfixturevalue(data)
        truth = {"alpha": 0.5, "E0": 2.0}
        eliminated = equation_residual(
            voigt_model(convention, InitRegime.ELIMINATE, order_bound=1), eps, sigma, truth
        )
        homogeneous = equation_residual(voigt_model(convention), eps, sigma, truth)
        assert eliminated < 1e-2
        assert homogeneous > eliminated

    def test_identification_equation_with_constants(self):
        expr, _ = identification_equation(voigt_model(Convention.CAPUTO, InitRegime.IDENTIFY))
        assert "c_1_1" in expr.symbols
        assert expr.max_s_power == 0


# ── 5. General identification ───────────────────────────────────────────────


class TestIdentifyGeneral:
    def test_first_order_lag(self, first_order_data):
        """Integer orders reduce to classical algebraic identification."""
        u, y = first_order_data
        result = identify_general(first_order_model(), u, y)
        assert relative_error(result.estimates["a"], FIRST_ORDER["a"]) < 0.01
        assert relative_error(result.estimates["b"], FIRST_ORDER["b"]) < 0.01

    def test_zero_signals_are_singular(self, zeros):
        with pytest.raises(SingularRegressorError):
            identify_general(voigt_model(), zeros, zeros)

    def test_unnormalized_model_rejected(self, first_order_data):
        """Without a parameter-free term the scale of the parameters is free."""
        u, y = first_order_data
        model = ModelSpec((Group(0, Y.scale("a") - U.scale("b")),))
        with pytest.raises(ModelError, match="parameter-free"):
            identify_general(model, u, y)

    def test_second_stage_needs_common_factors(self, first_order_data):
        u, y = first_order_data
        with pytest.raises(ModelError):
            recover_theta2(first_order_model(), {"a": 2.0, "b": 3.0}, u, y)

    def test_second_stage_needs_first_stage_estimates(self, voigt_data):
        eps, sigma = voigt_data
        with pytest.raises(ModelError, match="missing"):
            recover_theta2(voigt_model(), {"alpha": 0.5}, eps, sigma)

    def test_second_stage_with_true_first_stage(self, voigt_data):
        eps, sigma = voigt_data
        result = recover_theta2(voigt_model(), {"alpha": 0.5, "E0": 2.0}, eps, sigma)
        assert relative_error(result.estimates["E1"], 1.0) < 0.01
