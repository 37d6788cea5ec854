"""Polynomial text grammar, canonical printer and the JSON recurrence schema.

Grammar::

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := base ("^" nat)?
    base     := rational | "x" | "(" expr ")" | "-" factor
    rational := int ("/" posint)?

Implicit multiplication such as ``2x`` is a syntax error.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import Poly, RatFunc


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class SpecError(ValueError):
    """Malformed recurrence spec file; message is prefixed with a JSON path."""


_PUNCT = set("+-*^/()")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError("decimal literals are not supported", j)
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if name != "x":
                raise ParseError(f"unknown variable {name!r} (only 'x' is allowed)", i)
            tokens.append(("x", None, i))
            i = j
        elif ch in _PUNCT:
            tokens.append((ch, None, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {self._describe(tok)}", tok[2])
        self.pos += 1
        return tok

    @staticmethod
    def _describe(tok):
        if tok[0] == "end":
            return "end of input"
        if tok[0] == "int":
            return f"number {tok[1]}"
        return repr(tok[0])

    def parse(self) -> Poly:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "x", "("):
                raise ParseError("implicit multiplication is not allowed; use '*'", tok[2])
            raise ParseError(f"unexpected {self._describe(tok)}", tok[2])
        return value

    def expr(self) -> Poly:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.factor()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> Poly:
        value = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                raise ParseError("exponent must be a nonnegative integer", tok[2])
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer literal", tok[2])
            self.take()
            nxt = self.peek()
            if nxt[0] == "/":
                raise ParseError("exponent must be an integer, not a fraction", nxt[2])
            value = value ** tok[1]
            if self.peek()[0] == "^":
                raise ParseError("chained exponents are ambiguous; add parentheses", self.peek()[2])
        return value

    def base(self) -> Poly:
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            if self.peek()[0] == "/":
                slash = self.take()
                den = self.peek()
                if den[0] != "int":
                    raise ParseError("expected a positive integer denominator", den[2])
                self.take()
                if den[1] == 0:
                    raise ParseError("zero denominator in rational literal", den[2])
                return Poly([Fraction(tok[1], den[1])])
            return Poly([tok[1]])
        if kind == "x":
            self.take()
            return Poly.x()
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if kind == "-":
            self.take()
            return -self.factor()
        raise ParseError(f"unexpected {self._describe(tok)}", tok[2])


def parse_poly(text: str) -> Poly:
    """Parse ``text`` into an exact :class:`Poly`.

    >>> parse_poly("x^2 - 3*x + 2").coeffs == (2, -3, 1)
    True
    """
    if not isinstance(text, str):
        raise TypeError("parse_poly expects a string")
    return _Parser(text).parse()


def _fmt_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def print_poly(p: Poly) -> str:
    """Canonical text: descending powers, explicit ``*``, ``p/q`` rationals."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = _fmt_rational(mag)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if mag == 1 else f"{_fmt_rational(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


def print_ratfunc(f: RatFunc) -> str:
    if f.den == Poly([1]):
        return print_poly(f.num)
    return f"({print_poly(f.num)})/({print_poly(f.den)})"


def parse_ratfunc(num_text: str, den_text: Optional[str] = None) -> RatFunc:
    num = parse_poly(num_text)
    den = parse_poly(den_text) if den_text is not None else Poly([1])
    return RatFunc(num, den)


# recurrence spec files ---------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceSpec:
    """A polynomial linear recurrence of order ``d``.

    ``coeffs[i]`` multiplies the term ``W_{n+d-1-i}``, so for order 3 the list
    is ``[a, b, c]`` in ``W_{n+3} = a W_{n+2} + b W_{n+1} + c W_n``, and for
    order 2 it is ``[A1, A0]``.
    """

    order: int
    coeffs: tuple
    initial: tuple
    power_sum: Optional[tuple] = None
    source: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.order < 1:
            raise SpecError("order: must be a positive integer")
        if len(self.coeffs) != self.order:
            raise SpecError(f"coeffs length {len(self.coeffs)} ≠ order {self.order}")
        if len(self.initial) != self.order:
            raise SpecError(f"initial length {len(self.initial)} ≠ order {self.order}")

    def to_json(self) -> dict:
        out = {
            "order": self.order,
            "coeffs": [print_poly(c) for c in self.coeffs],
            "initial": [print_poly(w) for w in self.initial],
        }
        if self.power_sum is not None:
            out["power_sum"] = [{"a": print_poly(a), "alpha": print_poly(al)} for a, al in self.power_sum]
        return out


_SPEC_KEYS = {"order", "coeffs", "initial", "power_sum"}


def _parse_field(text, path: str) -> Poly:
    if not isinstance(text, str):
        raise SpecError(f"{path}: expected a polynomial string, got {type(text).__name__}")
    try:
        return parse_poly(text)
    except ParseError as exc:
        raise SpecError(f"{path}: {exc}") from None


def spec_from_dict(data) -> RecurrenceSpec:
    if not isinstance(data, dict):
        raise SpecError("$: expected a JSON object")
    unknown = sorted(set(data) - _SPEC_KEYS)
    if unknown:
        raise SpecError(f"$: unknown key(s) {', '.join(unknown)}")
    for key in ("order", "coeffs", "initial"):
        if key not in data:
            raise SpecError(f"{key}: missing required field")
    order = data["order"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise SpecError("order: must be a positive integer")
    for key in ("coeffs", "initial"):
        if not isinstance(data[key], list):
            raise SpecError(f"{key}: expected an array")
        if len(data[key]) != order:
            raise SpecError(f"{key} length {len(data[key])} ≠ order {order}")
    coeffs = tuple(_parse_field(t, f"coeffs[{i}]") for i, t in enumerate(data["coeffs"]))
    initial = tuple(_parse_field(t, f"initial[{i}]") for i, t in enumerate(data["initial"]))
    power_sum = None
    if "power_sum" in data:
        raw = data["power_sum"]
        if not isinstance(raw, list) or not raw:
            raise SpecError("power_sum: expected a nonempty array")
        pairs = []
        for i, item in enumerate(raw):
            if not isinstance(item, dict):
                raise SpecError(f"power_sum[{i}]: expected an object")
            extra = sorted(set(item) - {"a", "alpha"})
            if extra:
                raise SpecError(f"power_sum[{i}]: unknown key(s) {', '.join(extra)}")
            for key in ("a", "alpha"):
                if key not in item:
                    raise SpecError(f"power_sum[{i}].{key}: missing required field")
            pairs.append((_parse_field(item["a"], f"power_sum[{i}].a"),
                          _parse_field(item["alpha"], f"power_sum[{i}].alpha")))
        power_sum = tuple(pairs)
    return RecurrenceSpec(order, coeffs, initial, power_sum, source=dict(data))


def load_spec(source) -> RecurrenceSpec:
    """Load a recurrence spec from a path, raw bytes/str JSON, or a dict."""
    if isinstance(source, dict):
        return spec_from_dict(source)
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    elif isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        raise SpecError(f"$: cannot read spec from {source!r}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"$: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from None
    return spec_from_dict(data)
