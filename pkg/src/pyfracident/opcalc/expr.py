"""
Operational Expressions

Symbolic operators over signal symbols. A term is a parameter polynomial
times an integer power of s times a product of s-derivatives of signal
symbols; products of signals stand for convolutions of their time
functions. FracOpExpr adds symbolic fractional powers s^alpha_j.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from .poly import Coefficient, ParamPoly

Factor = Tuple[str, int]
Factors = Tuple[Factor, ...]
TermKey = Tuple[int, Factors]

Scalar = Union[ParamPoly, Coefficient]


@dataclass(frozen=True)
class OpTerm:
    """
    One operational term coeff * s^s_power * prod(factors).

    Attributes:
        coeff: Nonzero parameter polynomial
        s_power: Integer power of s (may be negative)
        factors: Sorted (signal id, s-derivative order) pairs
    """

    coeff: ParamPoly
    s_power: int
    factors: Factors = ()

    def render(self) -> str:
        coeff = str(self.coeff)
        if len(self.coeff) > 1:
            coeff = f"({coeff})"
        parts = [coeff]
        if self.s_power != 0:
            parts.append(f"s^{self.s_power}")
        parts.extend(name + "'" * order for name, order in self.factors)
        return "*".join(parts)


def _accumulate(terms: Dict[TermKey, ParamPoly], key: TermKey, coeff: ParamPoly) -> None:
    total = terms.get(key)
    total = coeff if total is None else total + coeff
    if total.is_zero:
        terms.pop(key, None)
    else:
        terms[key] = total


def _term_order(key: TermKey):
    return (-key[0], key[1])


class OpExpr:
    """
    Canonical sum of operational terms over a commutative ring.

    Like terms (same s-power and factor multiset) are merged, zero
    coefficients dropped. Terms are ordered by descending s-power, then by
    factor multiset.

    Example:
        >>> y, u = OpExpr.signal("y"), OpExpr.signal("u")
        >>> (y * u).dds().render()
        "1*u*y' + 1*u'*y"
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Iterable[OpTerm]] = None):
        merged: Dict[TermKey, ParamPoly] = {}
        for term in terms or ():
            for name, order in term.factors:
                if order < 0:
                    raise ValueError(f"derivative order must be >= 0, got {order} for {name}")
            key = (int(term.s_power), tuple(sorted(term.factors)))
            _accumulate(merged, key, ParamPoly.coerce(term.coeff))
        self._terms = merged

    @classmethod
    def _raw(cls, terms: Dict[TermKey, ParamPoly]) -> "OpExpr":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    # ------------------------------------------------------------------ constructors

    @classmethod
    def zero(cls) -> "OpExpr":
        return cls._raw({})

    @classmethod
    def signal(cls, name: str, order: int = 0, coeff: Scalar = 1) -> "OpExpr":
        """coeff * (d/ds)^order of the signal symbol `name`."""
        return cls([OpTerm(ParamPoly.coerce(coeff), 0, ((name, int(order)),))])

    @classmethod
    def power_of_s(cls, k: int, coeff: Scalar = 1) -> "OpExpr":
        """coeff * s^k with no signal factors."""
        return cls([OpTerm(ParamPoly.coerce(coeff), int(k), ())])

    @classmethod
    def constant(cls, coeff: Scalar) -> "OpExpr":
        return cls.power_of_s(0, coeff)

    @staticmethod
    def coerce(value: Union["OpExpr", Scalar]) -> "OpExpr":
        if isinstance(value, OpExpr):
            return value
        return OpExpr.constant(value)

    # ------------------------------------------------------------------ inspection

    def terms(self) -> Tuple[OpTerm, ...]:
        return tuple(
            OpTerm(self._terms[key], key[0], key[1]) for key in sorted(self._terms, key=_term_order)
        )

    def __iter__(self):
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def max_s_power(self) -> Optional[int]:
        return max((k for k, _ in self._terms), default=None)

    @property
    def signal_ids(self) -> FrozenSet[str]:
        return frozenset(name for _, factors in self._terms for name, _ in factors)

    @property
    def symbols(self) -> FrozenSet[str]:
        out = set()
        for coeff in self._terms.values():
            out.update(coeff.symbols)
        return frozenset(out)

    # ------------------------------------------------------------------ ring operations

    def __add__(self, other):
        try:
            other = OpExpr.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            _accumulate(out, key, coeff)
        return OpExpr._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return OpExpr._raw({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = OpExpr.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, OpExpr):
            try:
                return self.scale(ParamPoly.coerce(other))
            except TypeError:
                return NotImplemented
        out: Dict[TermKey, ParamPoly] = {}
        for (k1, f1), c1 in self._terms.items():
            for (k2, f2), c2 in other._terms.items():
                _accumulate(out, (k1 + k2, tuple(sorted(f1 + f2))), c1 * c2)
        return OpExpr._raw(out)

    __rmul__ = __mul__

    def scale(self, coeff: Scalar) -> "OpExpr":
        coeff = ParamPoly.coerce(coeff)
        if coeff.is_zero:
            return OpExpr.zero()
        out: Dict[TermKey, ParamPoly] = {}
        for key, c in self._terms.items():
            _accumulate(out, key, c * coeff)
        return OpExpr._raw(out)

    def shift(self, k: int) -> "OpExpr":
        """Multiply by s^k."""
        return OpExpr._raw({(p + int(k), f): c for (p, f), c in self._terms.items()})

    def dds(self) -> "OpExpr":
        """
        Derivative with respect to s.

        Power rule on s^k and product rule over the factors, each raising
        one derivative order.
        """
        out: Dict[TermKey, ParamPoly] = {}
        for (k, factors), coeff in self._terms.items():
            if k != 0:
                _accumulate(out, (k - 1, factors), coeff * k)
            for position, (name, order) in enumerate(factors):
                raised = factors[:position] + ((name, order + 1),) + factors[position + 1 :]
                _accumulate(out, (k, tuple(sorted(raised))), coeff)
        return OpExpr._raw(out)

    def rename(self, mapping: Mapping[str, str]) -> "OpExpr":
        """Rename parameter symbols in the coefficients."""
        return OpExpr(OpTerm(t.coeff.rename(mapping), t.s_power, t.factors) for t in self.terms())

    def __eq__(self, other):
        if not isinstance(other, OpExpr):
            try:
                other = OpExpr.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # ------------------------------------------------------------------ rendering

    def render(self) -> str:
        """
        Deterministic text form.

        term := coeff "*" ["s^" k "*"] factor ("*" factor)*, factor := id
        followed by one quote per s-derivative. Negative single-term
        coefficients are joined with " - ".
        """
        if not self._terms:
            return "0"
        text = ""
        for i, term in enumerate(self.terms()):
            negative = len(term.coeff) == 1 and str(term.coeff).startswith("-")
            if i == 0:
                text = term.render()
            elif negative:
                text += " - " + OpTerm(-term.coeff, term.s_power, term.factors).render()
            else:
                text += " + " + term.render()
        return text

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"OpExpr({self.render()!r})"


# ============================================================================
# Fractional operational expressions
# ============================================================================


def _tag_key(tag: ParamPoly):
    if tag.is_constant:
        return (0, float(tag.constant_value()), "")
    return (1, 0.0, str(tag))


def sorted_tags(tags: Iterable[ParamPoly]) -> List[ParamPoly]:
    """Known exponents first (by value), then symbolic ones by text."""
    return sorted(tags, key=_tag_key)


class FracOpExpr:
    """
    Sum over exponent tags of s^tag * OpExpr.

    Tags are linear parameter polynomials (e.g. "alpha", "alpha - 1",
    "1/2*beta") or known constants; the tag 0 slot is exponent free.

    Example:
        >>> e = FracOpExpr({"alpha": OpExpr.signal("y")})
        >>> e.dds().slot("alpha").render()
        "1*y' + alpha*s^-1*y"
    """

    __slots__ = ("_slots",)

    def __init__(self, slots: Optional[Mapping[Union[ParamPoly, Coefficient], OpExpr]] = None):
        merged: Dict[ParamPoly, OpExpr] = {}
        for tag, expr in (slots or {}).items():
            tag = ParamPoly.coerce(tag)
            if tag.degree > 1:
                raise ValueError(f"exponent tags must be linear in the parameters, got {tag}")
            total = merged.get(tag, OpExpr.zero()) + OpExpr.coerce(expr)
            merged[tag] = total
        self._slots = {tag: expr for tag, expr in merged.items() if not expr.is_zero}

    @property
    def tags(self) -> List[ParamPoly]:
        return sorted_tags(self._slots)

    def slot(self, tag: Union[ParamPoly, Coefficient]) -> OpExpr:
        return self._slots.get(ParamPoly.coerce(tag), OpExpr.zero())

    def items(self) -> List[Tuple[ParamPoly, OpExpr]]:
        return [(tag, self._slots[tag]) for tag in self.tags]

    @property
    def is_zero(self) -> bool:
        return not self._slots

    @property
    def symbols(self) -> FrozenSet[str]:
        out = set()
        for tag, expr in self._slots.items():
            out.update(tag.symbols)
            out.update(expr.symbols)
        return frozenset(out)

    def __add__(self, other: "FracOpExpr") -> "FracOpExpr":
        slots: Dict[ParamPoly, OpExpr] = dict(self._slots)
        for tag, expr in other._slots.items():
            slots[tag] = slots.get(tag, OpExpr.zero()) + expr
        return FracOpExpr(slots)

    def __neg__(self) -> "FracOpExpr":
        return FracOpExpr({tag: -expr for tag, expr in self._slots.items()})

    def __sub__(self, other: "FracOpExpr") -> "FracOpExpr":
        return self + (-other)

    def scale(self, coeff: Scalar) -> "FracOpExpr":
        return FracOpExpr({tag: expr.scale(coeff) for tag, expr in self._slots.items()})

    def shift(self, k: int) -> "FracOpExpr":
        return FracOpExpr({tag: expr.shift(k) for tag, expr in self._slots.items()})

    def dds(self) -> "FracOpExpr":
        """d/ds slot by slot: d/ds(E s^a) = (dE/ds + a s^-1 E) s^a."""
        return FracOpExpr(
            {tag: expr.dds() + expr.shift(-1).scale(tag) for tag, expr in self._slots.items()}
        )

    def annihilate(self, beta: Union[ParamPoly, Coefficient]) -> "FracOpExpr":
        """Apply s*d/ds - beta, which removes any term proportional to s^beta."""
        return self.dds().shift(1) - self.scale(beta)

    def rename(self, mapping: Mapping[str, str]) -> "FracOpExpr":
        return FracOpExpr(
            {tag.rename(mapping): expr.rename(mapping) for tag, expr in self._slots.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, FracOpExpr):
            return NotImplemented
        return self._slots == other._slots

    def __hash__(self):
        return hash(frozenset(self._slots.items()))

    def render(self) -> str:
        if not self._slots:
            return "0"
        return " + ".join(f"s^({tag})*[{expr.render()}]" for tag, expr in self.items())

    def __repr__(self) -> str:
        return f"FracOpExpr({self.render()!r})"
