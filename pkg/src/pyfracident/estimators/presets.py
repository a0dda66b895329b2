"""
Model Presets

Built-in grouped model declarations and the YAML model-file loader.

Model file layout:

    name: my-model
    signals: {input: u, output: y}
    convention: rl
    regime: homogeneous
    order_bound: 1
    groups:
      - exponent: "0"
        terms:
          - {coeff: "1", s: 0, factors: ["y"]}
          - {coeff: "-E0", factors: ["u"]}
      - exponent: alpha
        factor: E1
        terms:
          - {coeff: "-1", factors: ["u"]}

A factor string is a signal id followed by one apostrophe per d/ds.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
import re
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from ..errors import ModelError
from ..fracops import Convention
from ..opcalc import OpExpr, OpTerm, ParamPoly
from .models import Group, InitRegime, ModelSpec

logger = logging.getLogger(__name__)

FACTOR_PATTERN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)('*)$")

MODEL_KEYS = {"name", "signals", "convention", "regime", "order_bound", "groups"}
GROUP_KEYS = {"exponent", "factor", "terms"}
TERM_KEYS = {"coeff", "s", "factors"}


# ============================================================================
# Built-in models
# ============================================================================


def voigt_model(
    convention: Union[Convention, str] = Convention.RL,
    regime: Union[InitRegime, str] = InitRegime.HOMOGENEOUS,
    order_bound: Optional[int] = None,
) -> ModelSpec:
    """
    Fractional Voigt model sigma = E0*eps + E1*D^alpha eps.

    Input u is the strain, output y the stress. E1 is a common factor and
    is recovered in the second stage.

    Args:
        convention: Derivative definition of the data
        regime: Initial-value treatment
        order_bound: Integer bound on alpha (defaults to 1 when inhomogeneous)
    """
    regime = InitRegime.parse(regime)
    if order_bound is None and regime is not InitRegime.HOMOGENEOUS:
        order_bound = 1
    E0 = ParamPoly.symbol("E0")
    groups = (
        Group(ParamPoly.zero(), OpExpr.signal("y") - OpExpr.signal("u", coeff=E0)),
        Group(ParamPoly.symbol("alpha"), OpExpr.signal("u", coeff=-1), ParamPoly.symbol("E1")),
    )
    return ModelSpec(groups, Convention(convention), regime, order_bound, name="voigt")


def first_order_model() -> ModelSpec:
    """Integer-order lag dy/dt + a*y = b*u, with zero initial state."""
    expr = (
        OpExpr.power_of_s(1) * OpExpr.signal("y")
        + OpExpr.signal("y", coeff=ParamPoly.symbol("a"))
        - OpExpr.signal("u", coeff=ParamPoly.symbol("b"))
    )
    return ModelSpec((Group(ParamPoly.zero(), expr),), name="first-order")


def diffusion_wave_model() -> ModelSpec:
    """
    Order-relation model of a diffusion-wave line.

    Input h and output g satisfy g(s) = exp(-L/v s^beta) h(s) with
    beta = alpha/2. Differentiating in s and eliminating the exponential
    gives s*(g h' - g' h) = c*beta s^beta g h with c = L/v; beta is
    recovered in the first stage, c in the second.
    """
    base = OpExpr.signal("g") * OpExpr.signal("h", 1) - OpExpr.signal("g", 1) * OpExpr.signal("h")
    rhs = OpExpr.power_of_s(-1, -1) * OpExpr.signal("g") * OpExpr.signal("h")
    beta = ParamPoly.symbol("beta")
    groups = (
        Group(ParamPoly.zero(), base),
        Group(beta, rhs, ParamPoly.parse("c*beta")),
    )
    return ModelSpec(groups, input_id="h", output_id="g", name="diffusion-wave")


PRESETS = {
    "voigt": voigt_model,
    "first-order": first_order_model,
    "diffusion-wave": diffusion_wave_model,
}


# ============================================================================
# Model files
# ============================================================================


def _parse_factor(text: str):
    match = FACTOR_PATTERN.match(str(text).strip())
    if not match:
        raise ModelError(f"invalid signal factor {text!r}; expected e.g. \"y\" or \"u''\"")
    return match.group(1), len(match.group(2))


def _parse_poly(value: Any, what: str) -> ParamPoly:
    try:
        return ParamPoly.parse(str(value))
    except ValueError as e:
        raise ModelError(f"invalid {what} {value!r}: {e}") from e


def _parse_term(data: Mapping[str, Any], where: str) -> OpTerm:
    if not isinstance(data, Mapping):
        raise ModelError(f"{where}: term must be a mapping")
    extra = set(data) - TERM_KEYS
    if extra:
        raise ModelError(f"{where}: unknown term keys {', '.join(sorted(extra))}")
    coeff = _parse_poly(data.get("coeff", 1), f"{where} coefficient")
    power = data.get("s", 0)
    if isinstance(power, bool) or not isinstance(power, int):
        raise ModelError(f"{where}: s-power must be an integer, got {power!r}")
    factors = data.get("factors", [])
    if not isinstance(factors, (list, tuple)):
        raise ModelError(f"{where}: factors must be a list")
    return OpTerm(coeff, power, tuple(sorted(_parse_factor(f) for f in factors)))


def model_from_dict(data: Mapping[str, Any]) -> ModelSpec:
    """
    Build a ModelSpec from a parsed model file.

    Raises:
        ModelError: On unknown keys or malformed entries
    """
    if not isinstance(data, Mapping):
        raise ModelError("model file must contain a mapping")
    extra = set(data) - MODEL_KEYS
    if extra:
        raise ModelError(f"unknown model keys {', '.join(sorted(extra))}")
    raw_groups = data.get("groups")
    if not isinstance(raw_groups, (list, tuple)) or not raw_groups:
        raise ModelError("model needs a non-empty 'groups' list")
    groups = []
    for index, raw in enumerate(raw_groups):
        where = f"group {index}"
        if not isinstance(raw, Mapping):
            raise ModelError(f"{where}: must be a mapping")
        extra = set(raw) - GROUP_KEYS
        if extra:
            raise ModelError(f"{where}: unknown keys {', '.join(sorted(extra))}")
        exponent = _parse_poly(raw.get("exponent", 0), f"{where} exponent")
        factor = _parse_poly(raw.get("factor", 1), f"{where} factor")
        terms = [_parse_term(t, f"{where} term {i}") for i, t in enumerate(raw.get("terms", []))]
        groups.append(Group(exponent, OpExpr(terms), factor))
    signals = data.get("signals") or {}
    try:
        convention = Convention(str(data.get("convention", "rl")))
    except ValueError as e:
        raise ModelError(f"unknown convention {data.get('convention')!r}") from e
    try:
        regime = InitRegime.parse(str(data.get("regime", "homogeneous")))
    except ValueError as e:
        raise ModelError(str(e)) from e
    return ModelSpec(
        tuple(groups),
        convention,
        regime,
        data.get("order_bound"),
        input_id=str(signals.get("input", "u")),
        output_id=str(signals.get("output", "y")),
        name=str(data.get("name", "custom")),
    )


def load_model_file(path: Union[str, Path]) -> ModelSpec:
    """
    Load a model declaration from YAML.

    Raises:
        FileNotFoundError: If the file does not exist
        ModelError: If the declaration is invalid
    """
    from ..io import load_yaml

    data = load_yaml(Path(path))
    if data is None:
        raise ModelError(f"model file {path} is empty")
    model = model_from_dict(data)
    logger.info(f"loaded model {model.name} with {len(model.groups)} groups from {path}")
    return model


def model_to_dict(model: ModelSpec) -> Dict[str, Any]:
    """Inverse of model_from_dict (terms listed per group)."""
    return {
        "name": model.name,
        "signals": {"input": model.input_id, "output": model.output_id},
        "convention": model.convention.value,
        "regime": model.regime.value,
        "order_bound": model.order_bound,
        "groups": [
            {
                "exponent": str(group.exponent),
                "factor": str(group.factor),
                "terms": [
                    {
                        "coeff": str(term.coeff),
                        "s": term.s_power,
                        "factors": [name + "'" * order for name, order in term.factors],
                    }
                    for term in group.expr.terms()
                ],
            }
            for group in model.groups
        ],
    }
