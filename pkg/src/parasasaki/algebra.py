"""Exact arithmetic: multivariate polynomials with rational coefficients and
linear solving over their fraction field.

Indeterminates are plain strings.  ``alpha`` and ``beta`` always sort first,
every other name sorts alphabetically after them.  Monomials are ordered
lexicographically with the later variable more significant, so polynomials
print as e.g. ``beta^2 - beta - alpha^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

ALPHA_NAME = "alpha"
BETA_NAME = "beta"

# A monomial is a tuple of (name, exponent) pairs, most significant variable first.
Monomial = tuple

Number = Union[int, Fraction]


class UnknownIndeterminateError(KeyError):
    pass


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        super().__init__(message)


def var_key(name: str) -> tuple:
    if name == ALPHA_NAME:
        return (0, "")
    if name == BETA_NAME:
        return (1, "")
    return (2, name)


def _mono_key(mono: Monomial) -> tuple:
    return tuple((var_key(v), e) for v, e in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda t: var_key(t[0]), reverse=True))


def _mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items(), key=lambda t: var_key(t[0]), reverse=True))


def _mono_str(mono: Monomial) -> str:
    parts = []
    for v, e in reversed(mono):
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


class Poly:
    """Immutable polynomial in named indeterminates with ``Fraction`` coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = Fraction(coeff)
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, value: Number) -> "Poly":
        return cls({(): value})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        if isinstance(value, str):
            return parse_poly(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Poly")

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def sorted_terms(self) -> list:
        """Terms in canonical (descending) order."""
        return sorted(self._terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    @property
    def variables(self) -> tuple:
        names = {v for mono in self._terms for v, _ in mono}
        return tuple(sorted(names, key=var_key))

    @property
    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def coeff(self, mono: Monomial = ()) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def leading_term(self) -> tuple:
        return max(self._terms.items(), key=lambda t: _mono_key(t[0]))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero rational constant stays inside the ring
        if isinstance(other, Poly):
            if not other.is_constant or other.is_zero:
                return NotImplemented
            other = other.constant_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division by zero polynomial")
        return Poly({m: c / other for m, c in self._terms.items()})

    def __pow__(self, exp: int):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ONE
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def divide_exact(self, divisor: "Poly") -> "Poly | None":
        """Return ``self / divisor`` when the division is exact, else ``None``."""
        divisor = Poly.coerce(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        lm_d, lc_d = divisor.leading_term()
        quotient: dict = {}
        rem = self
        while not rem.is_zero:
            lm_r, lc_r = rem.leading_term()
            m = _mono_div(lm_r, lm_d)
            if m is None:
                return None
            c = lc_r / lc_d
            quotient[m] = quotient.get(m, 0) + c
            rem = rem - Poly({m: c}) * divisor
        return Poly(quotient)

    # evaluation ---------------------------------------------------------
    def substitute(self, bindings: Mapping[str, object], strict: bool = True) -> "Poly":
        """Partially evaluate.  Values may be rationals or polynomials.

        With ``strict`` set, binding a name that does not occur in the
        polynomial raises :class:`UnknownIndeterminateError`.
        """
        if strict:
            missing = set(bindings) - set(self.variables)
            if missing:
                raise UnknownIndeterminateError(
                    f"unknown indeterminate(s): {', '.join(sorted(missing))}"
                )
        if not bindings:
            return self
        values = {k: Poly.coerce(v) for k, v in bindings.items()}
        result = ZERO
        for mono, coeff in self._terms.items():
            term = Poly.const(coeff)
            rest = []
            for v, e in mono:
                if v in values:
                    term = term * values[v] ** e
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly({tuple(rest): 1})
            result = result + term
        return result

    # comparison / display -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (mono, coeff) in enumerate(self.sorted_terms()):
            sign = "-" if coeff < 0 else "+"
            mag = -coeff if coeff < 0 else coeff
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = _mono_str(mono)
            else:
                body = f"{mag}*{_mono_str(mono)}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def is_monomial_like(self) -> bool:
        return len(self._terms) <= 1


ZERO = Poly()
ONE = Poly.const(1)
ALPHA = Poly.var(ALPHA_NAME)
BETA = Poly.var(BETA_NAME)


# ---------------------------------------------------------------------------
# text syntax

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_αβ][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)
_GREEK = {"α": ALPHA_NAME, "β": BETA_NAME}


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos:].strip()[:1]!r}", text, pos)
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("name") is not None:
            name = m.group("name")
            tokens.append(("name", _GREEK.get(name, name), m.start("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op, m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, allowed: Iterable[str] | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allowed = None if allowed is None else set(allowed) | {ALPHA_NAME, BETA_NAME}

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg):
        tok = self.peek()
        raise PolyParseError(msg, self.text, tok[2] if tok else len(self.text))

    def parse(self) -> Poly:
        if not self.tokens:
            self.error("empty expression")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while (tok := self.peek()) is not None and tok[0] == "op" and tok[1] in "+-":
            self.take()
            rhs = self.term()
            p = p + rhs if tok[1] == "+" else p - rhs
        return p

    def term(self) -> Poly:
        p = self.unary()
        while (tok := self.peek()) is not None and tok[0] == "op" and tok[1] in "*/":
            self.take()
            rhs = self.unary()
            if tok[1] == "*":
                p = p * rhs
            else:
                if not rhs.is_constant or rhs.is_zero:
                    raise PolyParseError("division only by nonzero constants", self.text, tok[2])
                p = p / rhs.constant_value()
        return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp is None or exp[0] != "num":
                self.error("exponent must be a non-negative integer")
            return base ** exp[1]
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok is None:
            raise PolyParseError("unexpected end of expression", self.text, len(self.text))
        kind, val, pos = tok
        if kind == "num":
            return Poly.const(val)
        if kind == "name":
            if self.allowed is not None and val not in self.allowed:
                raise PolyParseError(f"unknown name {val!r}", self.text, pos)
            return Poly.var(val)
        if val == "(":
            p = self.expr()
            close = self.take()
            if close is None or close[1] != ")":
                raise PolyParseError("missing ')'", self.text, pos)
            return p
        self.i -= 1
        self.error(f"unexpected token {val!r}")


def parse_poly(text: str, allowed: Iterable[str] | None = None) -> Poly:
    """Parse ``2*alpha*beta - beta^2 + 1``.  ``allowed`` restricts free names
    (``alpha`` and ``beta`` are always allowed)."""
    return _Parser(text, allowed).parse()


# ---------------------------------------------------------------------------
# fraction field and linear solving


class RationalFunction:
    """Quotient of two polynomials.  Only used inside exact solving; no gcd
    reduction beyond cancelling an exact polynomial quotient."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        if isinstance(num, RationalFunction) or isinstance(den, RationalFunction):
            q = _rf(num) / _rf(den)
            num, den = q.num, q.den
        num = Poly.coerce(num)
        den = Poly.coerce(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = ONE
        elif den.is_constant:
            num, den = num / den.constant_value(), ONE
        else:
            q = num.divide_exact(den)
            if q is not None:
                num, den = q, ONE
        self.num = num
        self.den = den

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __add__(self, o):
        o = _rf(o)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return self + (-_rf(o))

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, o):
        o = _rf(o)
        return RationalFunction(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        o = _rf(o)
        if o.is_zero:
            raise ZeroDivisionError("division by zero")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, o):
        if isinstance(o, (Poly, int, Fraction)):
            o = RationalFunction(o)
        if not isinstance(o, RationalFunction):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __str__(self):
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def _simplest(x: RationalFunction):
    return x.num if x.is_polynomial else x


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple
    rhs: tuple
    unknowns: tuple

    def __post_init__(self):
        matrix = tuple(tuple(Poly.coerce(a) for a in row) for row in self.matrix)
        rhs = tuple(Poly.coerce(b) for b in self.rhs)
        if len(matrix) != len(rhs):
            raise ValueError("matrix and right-hand side have different row counts")
        for row in matrix:
            if len(row) != len(self.unknowns):
                raise ValueError("row length does not match the number of unknowns")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "unknowns", tuple(self.unknowns))


@dataclass
class Solution:
    """Outcome of :func:`solve_exact`.

    ``status`` is ``"unique"``, ``"inconsistent"`` or ``"underdetermined"``.
    For underdetermined systems ``family`` maps each pivot unknown to
    ``(particular, {free_name: coefficient})``.
    """

    status: str
    values: dict = field(default_factory=dict)
    free: tuple = ()
    family: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "unique"

    def __getitem__(self, name):
        return self.values[name]


def _pivot_rank(x: RationalFunction) -> tuple:
    # prefer constant pivots to keep denominators trivial
    return (0 if x.num.is_constant and x.den.is_constant else 1, len(x.num.terms))


def solve_exact(system: LinearSystem) -> Solution:
    n_rows = len(system.matrix)
    n_cols = len(system.unknowns)
    rows = [[RationalFunction(a) for a in row] + [RationalFunction(b)]
            for row, b in zip(system.matrix, system.rhs)]
    pivots = []
    r = 0
    for col in range(n_cols):
        candidates = [i for i in range(r, n_rows) if not rows[i][col].is_zero]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: _pivot_rank(rows[i][col]))
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][col]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(n_rows):
            if i != r and not rows[i][col].is_zero:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if not rows[i][-1].is_zero:
            return Solution("inconsistent")
    names = system.unknowns
    if len(pivots) < n_cols:
        free = tuple(names[c] for c in range(n_cols) if c not in pivots)
        family = {}
        for i, pc in enumerate(pivots):
            coeffs = {names[c]: _simplest(-rows[i][c]) for c in range(n_cols)
                      if c not in pivots and not rows[i][c].is_zero}
            family[names[pc]] = (_simplest(rows[i][-1]), coeffs)
        return Solution("underdetermined", free=free, family=family)
    values = {names[pc]: _simplest(rows[i][-1]) for i, pc in enumerate(pivots)}
    return Solution("unique", values=values)


def poly_arith(a, b=None, op: str = "add") -> Poly:
    a = Poly.coerce(a)
    if op == "neg":
        return -a
    b = Poly.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute(s, bindings: Mapping[str, object]) -> Poly:
    return Poly.coerce(s).substitute(bindings)


def as_poly_vector(values: Sequence) -> tuple:
    return tuple(Poly.coerce(v) for v in values)
