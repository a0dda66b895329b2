"""
Parameter Polynomials

Multivariate polynomials in named unknown parameters with exact rational
coefficients. They carry unknowns symbolically through the determinant
elimination, so no cancellation is lost to rounding.

A monomial is a tuple of (name, power) pairs sorted by name; the empty
tuple is the constant monomial.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import re
from fractions import Fraction
from numbers import Integral, Rational, Real
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
ONE: Monomial = ()

Coefficient = Union[int, Fraction, float, str]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


# ============================================================================
# Monomial helpers
# ============================================================================


def make_monomial(powers: Union[Mapping[str, int], Iterable[Tuple[str, int]]]) -> Monomial:
    """Canonical monomial from name -> power pairs (zero powers dropped)."""
    merged: Dict[str, int] = {}
    items = powers.items() if isinstance(powers, Mapping) else powers
    for name, power in items:
        if not _NAME_RE.match(name):
            raise ValueError(f"invalid parameter name: {name!r}")
        if int(power) != power or power < 0:
            raise ValueError(f"monomial powers must be non-negative integers, got {power}")
        merged[name] = merged.get(name, 0) + int(power)
    return tuple(sorted((n, p) for n, p in merged.items() if p))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return make_monomial(list(a) + list(b))


def monomial_degree(m: Monomial) -> int:
    return sum(p for _, p in m)


def monomial_symbols(m: Monomial) -> FrozenSet[str]:
    return frozenset(n for n, _ in m)


def monomial_split(m: Monomial, names: Iterable[str]) -> Tuple[Monomial, Monomial]:
    """Split m into (part over names, remaining part)."""
    names = set(names)
    inside = tuple((n, p) for n, p in m if n in names)
    outside = tuple((n, p) for n, p in m if n not in names)
    return inside, outside


def monomial_str(m: Monomial) -> str:
    """
    Render a monomial, e.g. (("E0", 1), ("alpha", 2)) -> "E0*alpha^2".

    The constant monomial renders as "1".
    """
    if not m:
        return "1"
    return "*".join(n if p == 1 else f"{n}^{p}" for n, p in m)


def _sort_key(m: Monomial):
    return (-monomial_degree(m), m)


def _to_fraction(value: Coefficient) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (Integral, Rational)):
        return Fraction(value)
    if isinstance(value, Real):
        value = float(value)
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"coefficient must be finite, got {value}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"unsupported coefficient type: {type(value).__name__}")


# ============================================================================
# ParamPoly
# ============================================================================


class ParamPoly:
    """
    Immutable polynomial over named parameters with Fraction coefficients.

    Zero coefficients are never stored. Instances are hashable and compare
    equal to plain numbers when constant.

    Example:
        >>> a = ParamPoly.symbol("alpha")
        >>> str((a - 1) * ParamPoly.symbol("E0"))
        'E0*alpha - E0'
        >>> ParamPoly.parse("1/2*alpha + 2").evaluate({"alpha": 1.0})
        2.5
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Coefficient]] = None):
        merged: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            key = make_monomial(mono)
            merged[key] = merged.get(key, Fraction(0)) + _to_fraction(coeff)
        self._terms = {m: c for m, c in merged.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "ParamPoly":
        obj = cls.__new__(cls)
        obj._terms = {m: c for m, c in terms.items() if c != 0}
        obj._hash = None
        return obj

    # ------------------------------------------------------------------ constructors

    @classmethod
    def const(cls, value: Coefficient) -> "ParamPoly":
        return cls({ONE: value})

    @classmethod
    def zero(cls) -> "ParamPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "ParamPoly":
        return cls._raw({ONE: Fraction(1)})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "ParamPoly":
        return cls({make_monomial({name: power}): 1})

    @classmethod
    def coerce(cls, value: Union["ParamPoly", Coefficient]) -> "ParamPoly":
        """ParamPoly from a polynomial, number, or parseable string."""
        if isinstance(value, ParamPoly):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls.const(value)

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        """
        Parse a sum of products, e.g. "-E0", "2*a1^2", "1/2*alpha - 1".

        Grammar: poly := [sign] term (sign term)*; term := factor ("*" factor)*;
        factor := number | rational | name ["^" integer]. Parentheses are not
        supported.

        Raises:
            ValueError: On malformed input
        """
        return _Parser(text).parse()

    # ------------------------------------------------------------------ inspection

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in canonical order (higher degree first)."""
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __iter__(self) -> Iterator[Monomial]:
        return iter(m for m, _ in self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(make_monomial(m), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        """
        Value of a constant polynomial.

        Raises:
            ValueError: If the polynomial involves symbols
        """
        if not self.is_constant:
            raise ValueError(f"polynomial {self} is not constant")
        return self._terms.get(ONE, Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(ONE, Fraction(0))

    @property
    def symbols(self) -> FrozenSet[str]:
        out = set()
        for m in self._terms:
            out.update(monomial_symbols(m))
        return frozenset(out)

    @property
    def degree(self) -> int:
        return max((monomial_degree(m) for m in self._terms), default=0)

    # ------------------------------------------------------------------ arithmetic

    def __add__(self, other):
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = monomial_mul(m1, m2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return ParamPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if int(exponent) != exponent or exponent < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {exponent}")
        result = ParamPoly.one()
        for _ in range(int(exponent)):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        try:
            return self._terms == ParamPoly.coerce(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # ------------------------------------------------------------------ evaluation

    def evaluate(self, values: Mapping[str, object]):
        """
        Numeric value for the given parameter values.

        Values may be floats or numpy arrays (evaluated elementwise).

        Raises:
            KeyError: If a parameter has no value
        """
        total = 0.0
        for m, c in self._terms.items():
            term = float(c)
            for name, power in m:
                if name not in values:
                    raise KeyError(f"no value for parameter {name!r}")
                term = term * values[name] ** power
            total = total + term
        return total

    def rename(self, mapping: Mapping[str, str]) -> "ParamPoly":
        return ParamPoly(
            {tuple((mapping.get(n, n), p) for n, p in m): c for m, c in self._terms.items()}
        )

    # ------------------------------------------------------------------ rendering

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = [_term_str(m, c) for m, c in self.items()]
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def __repr__(self) -> str:
        return f"ParamPoly({str(self)!r})"


def _term_str(m: Monomial, c: Fraction) -> str:
    if not m:
        return str(c)
    body = monomial_str(m)
    if c == 1:
        return body
    if c == -1:
        return f"-{body}"
    return f"{c}*{body}"


# ============================================================================
# Parser
# ============================================================================

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^]))"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = _TOKEN_RE.match(stripped, pos)
            if not match or match.end() == pos:
                raise ValueError(f"cannot parse {text!r} at position {pos}")
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind)))
            pos = match.end()
        self.pos = 0

    def _peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> Tuple[str, str]:
        token = self._peek()
        if token is None:
            raise ValueError(f"unexpected end of {self.text!r}")
        self.pos += 1
        return token

    def parse(self) -> ParamPoly:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        result = ParamPoly.zero()
        sign = 1
        token = self._peek()
        if token is not None and token[0] == "op" and token[1] in "+-":
            sign = -1 if self._next()[1] == "-" else 1
        result = result + sign * self._term()
        while self._peek() is not None:
            kind, value = self._next()
            if kind != "op" or value not in "+-":
                raise ValueError(f"expected + or - in {self.text!r}, got {value!r}")
            sign = -1 if value == "-" else 1
            result = result + sign * self._term()
        return result

    def _term(self) -> ParamPoly:
        result = self._factor()
        while self._peek() == ("op", "*"):
            self._next()
            result = result * self._factor()
        return result

    def _factor(self) -> ParamPoly:
        kind, value = self._next()
        if kind == "num":
            return ParamPoly.const(Fraction(value))
        if kind == "name":
            power = 1
            if self._peek() == ("op", "^"):
                self._next()
                p_kind, p_value = self._next()
                if p_kind != "num" or not p_value.isdigit():
                    raise ValueError(f"exponent must be a non-negative integer in {self.text!r}")
                power = int(p_value)
            return ParamPoly.symbol(value, power) if power else ParamPoly.one()
        raise ValueError(f"unexpected {value!r} in {self.text!r}")
