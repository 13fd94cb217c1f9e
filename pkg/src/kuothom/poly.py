"""Exact sparse polynomial arithmetic over the rationals.

A polynomial in n variables is a map from exponent tuples (one nonnegative
integer per variable) to nonzero Fraction coefficients.  The representation
is canonical: zero coefficients are never stored, every key has length
nvars, so two polynomials are equal exactly when nvars and the term maps
agree.  All arithmetic is exact; nothing in this module touches floats
except the documented evaluation helpers.

Univariate polynomials in a formal parameter t (used for curves through
the origin) get a lighter type, UniPoly, indexed by power of t.

Text grammar (parse_polynomial / parse_unipoly): variables are x1..xn,
with x, y, z, w accepted as aliases for x1..x4; literals are integers or
a/b rationals; operators are + - * ^ with parentheses; whitespace is
insignificant.  There is no implicit multiplication.

Term order everywhere (printing, documented float summation) is graded
lexicographic, highest first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]

#: Order of a zero polynomial (total order semantics: INF + k == INF,
#: min(INF, q) == q, m * INF == INF for m > 0).
INF = math.inf

_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}
_ALIAS_NAMES = ("x", "y", "z", "w")


def grlex_key(mono: Monomial) -> tuple[int, Monomial]:
    """Sort key for graded lexicographic order."""
    return (sum(mono), mono)


def _as_fraction(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational coefficient, got {type(value).__name__}")


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        object.__setattr__(self, "nvars", nvars)
        canonical: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError(f"exponent tuple {mono} does not have {nvars} entries")
            if any((not isinstance(e, int)) or e < 0 for e in mono):
                raise ValueError(f"exponents must be nonnegative integers, got {mono}")
            c = _as_fraction(coeff)
            if c:
                acc = canonical.get(mono)
                if acc is None:
                    canonical[mono] = c
                else:
                    acc = acc + c
                    if acc:
                        canonical[mono] = acc
                    else:
                        del canonical[mono]
        object.__setattr__(self, "_terms", canonical)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: object) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        """The monomial x_{index} (0-based index)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    @classmethod
    def from_terms(cls, nvars: int, items: Iterable[tuple[Monomial, object]]) -> "Polynomial":
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            mono = tuple(mono)
            acc[mono] = acc.get(mono, Fraction(0)) + _as_fraction(coeff)
        return cls(nvars, acc)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        """Read-only view of the canonical term map."""
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    @property
    def vanishes_at_origin(self) -> bool:
        return not self.constant_term

    @property
    def total_degree(self) -> int:
        """Largest total degree of a term; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(sum(m) for m in self._terms)

    @property
    def order_at_origin(self) -> float:
        """Smallest total degree of a term; INF for the zero polynomial."""
        if not self._terms:
            return INF
        return min(sum(m) for m in self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------

    def _check_same_ring(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable count mismatch: {self.nvars} versus {other.nvars}"
            )

    def __add__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_ring(other)
        acc = dict(self._terms)
        for mono, c in other._terms.items():
            s = acc.get(mono, Fraction(0)) + c
            if s:
                acc[mono] = s
            else:
                acc.pop(mono, None)
        return _raw(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return _raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return _raw(self.nvars, {m: k * c for m, k in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_ring(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = acc.get(mono, Fraction(0)) + c1 * c2
                if s:
                    acc[mono] = s
                else:
                    acc.pop(mono, None)
        return _raw(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers require a nonnegative integer exponent")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def partial(self, index: int) -> "Polynomial":
        """Partial derivative with respect to x_{index} (0-based)."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range for {self.nvars} variables")
        acc: dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            e = mono[index]
            if e == 0:
                continue
            lowered = tuple(v - 1 if i == index else v for i, v in enumerate(mono))
            acc[lowered] = acc.get(lowered, Fraction(0)) + c * e
        return _raw(self.nvars, {m: c for m, c in acc.items() if c})

    def jet(self, degree: int) -> "Polynomial":
        """Truncate to terms of total degree at most `degree`."""
        if degree < 0:
            raise ValueError("jet degree must be nonnegative")
        return _raw(self.nvars, {m: c for m, c in self._terms.items() if sum(m) <= degree})

    # -- evaluation --------------------------------------------------------

    def eval_exact(self, values: Sequence[object]) -> Fraction:
        """Evaluate at a rational point, exactly."""
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(values)}")
        xs = [v if isinstance(v, Fraction) else Fraction(v) for v in values]
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for x, e in zip(xs, mono):
                if e:
                    term *= x**e
            total += term
        return total

    def eval_float(self, values: Sequence[float]) -> float:
        """Evaluate at a float point.

        Terms are summed in descending graded lexicographic order, which is
        the documented (and deterministic) float evaluation order.
        """
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(values)}")
        total = 0.0
        for mono, c in self.sorted_terms():
            term = float(c)
            for x, e in zip(values, mono):
                if e:
                    term *= x**e
            total += term
        return total

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()!r}, nvars={self.nvars})"

    def to_string(self, aliases: bool = True) -> str:
        """Render in the text grammar; the output re-parses to an equal value."""
        if not self._terms:
            return "0"
        if aliases and self.nvars <= 4:
            names = _ALIAS_NAMES[: self.nvars]
        else:
            names = tuple(f"x{i + 1}" for i in range(self.nvars))
        chunks: list[str] = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)


def _raw(nvars: int, terms: dict[Monomial, Fraction]) -> Polynomial:
    """Internal constructor; `terms` must already be canonical."""
    p = object.__new__(Polynomial)
    object.__setattr__(p, "nvars", nvars)
    object.__setattr__(p, "_terms", terms)
    object.__setattr__(p, "_hash", None)
    return p


class UniPoly:
    """Univariate polynomial in t with Fraction coefficients.

    Stored densely as a coefficient tuple with no trailing zero, so the
    zero polynomial is the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[object] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def t_power(cls, exponent: int, coeff: object = 1) -> "UniPoly":
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return cls([0] * exponent + [coeff])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def order(self) -> float:
        """Index of the first nonzero coefficient; INF when zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else 0

    def __add__(self, other: "UniPoly") -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: object) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("powers require a nonnegative integer exponent")
        result = UniPoly([1])
        for _ in range(exponent):
            result = result * self
        return result

    def eval_exact(self, t: object) -> Fraction:
        tv = t if isinstance(t, Fraction) else Fraction(t)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * tv + c
        return total

    def eval_float(self, t: float) -> float:
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * t + float(c)
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self.to_string()!r})"

    def to_string(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        chunks: list[str] = []
        for e, coeff in enumerate(self.coeffs):
            if not coeff:
                continue
            if e == 0:
                body = str(abs(coeff))
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if abs(coeff) == 1 else f"{abs(coeff)}*{power}"
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)


# ---------------------------------------------------------------------------
# Arc composition


def compose_arc(
    p: Polynomial,
    components: Sequence[UniPoly],
    cache: dict | None = None,
) -> UniPoly:
    """Substitute t-polynomials for the variables of p, exactly.

    `components[i]` replaces variable i.  The optional cache may be shared
    across calls with the same component tuple; it stores integer-cleared
    component data and their powers, which keeps the inner convolutions in
    plain integer arithmetic.  The result is identical with or without the
    cache.
    """
    if len(components) != p.nvars:
        raise ValueError(
            f"arc has {len(components)} components but polynomial has {p.nvars} variables"
        )
    if p.is_zero:
        return UniPoly.zero()
    if cache is None:
        cache = {}

    def base(i: int) -> tuple[int, list[int]]:
        key = ("base", i)
        got = cache.get(key)
        if got is None:
            comp = components[i]
            den = math.lcm(*(c.denominator for c in comp.coeffs)) if comp.coeffs else 1
            ints = [int(c * den) for c in comp.coeffs]
            got = (den, ints)
            cache[key] = got
        return got

    def power(i: int, e: int) -> list[int]:
        if e == 0:
            return [1]
        key = ("pow", i, e)
        got = cache.get(key)
        if got is None:
            _, ints = base(i)
            prev = power(i, e - 1)
            got = _int_mul(prev, ints)
            cache[key] = got
        return got

    max_exp = [0] * p.nvars
    for mono in p.terms:
        for i, e in enumerate(mono):
            if e > max_exp[i]:
                max_exp[i] = e
    coeff_den = math.lcm(*(c.denominator for c in p.terms.values()))
    scale = coeff_den
    dens = [base(i)[0] for i in range(p.nvars)]
    for i, b in enumerate(max_exp):
        scale *= dens[i] ** b

    acc: list[int] = []
    for mono, c in sorted(p.terms.items(), key=lambda kv: grlex_key(kv[0])):
        prod = [1]
        dead = False
        for i, e in enumerate(mono):
            if e:
                q = power(i, e)
                if not q:
                    dead = True
                    break
                prod = _int_mul(prod, q)
        if dead:
            continue
        scalar = c.numerator * (coeff_den // c.denominator)
        for i, e in enumerate(mono):
            scalar *= dens[i] ** (max_exp[i] - e)
        if len(prod) > len(acc):
            acc.extend([0] * (len(prod) - len(acc)))
        for k, v in enumerate(prod):
            if v:
                acc[k] += scalar * v
    return UniPoly([Fraction(a, scale) for a in acc])


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


# ---------------------------------------------------------------------------
# Parsing


class ParseError(ValueError):
    """Raised on malformed polynomial text; carries line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_TOKEN_KINDS = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "^": "CARET",
    "/": "SLASH",
    "(": "LPAREN",
    ")": "RPAREN",
}


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens: list[tuple[str, str, int, int]] = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("NUMBER", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        kind = _TOKEN_KINDS.get(ch)
        if kind is None:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        tokens.append((kind, ch, line, col))
        col += 1
        i += 1
    tokens.append(("END", "", line, col))
    return tokens


def _variable_index(name: str, line: int, col: int) -> int:
    if name in _ALIASES:
        return _ALIASES[name]
    if name.startswith("x") and name[1:].isdigit():
        idx = int(name[1:])
        if idx >= 1:
            return idx - 1
    raise ParseError(f"unknown variable {name!r}", line, col)


def max_variable_index(text: str) -> int | None:
    """Largest 0-based variable index mentioned in `text`, or None."""
    best: int | None = None
    for kind, value, line, col in _tokenize(text):
        if kind == "NAME" and value != "t":
            idx = _variable_index(value, line, col)
            if best is None or idx > best:
                best = idx
    return best


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int, int]], nvars: int,
                 var_names: Mapping[str, int] | None):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars
        self.var_names = var_names

    def peek(self) -> tuple[str, str, int, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int, int]:
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2], tok[3])
        return self.advance()

    def parse(self) -> Polynomial:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2], tok[3])
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.peek()[0] in ("PLUS", "MINUS"):
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op[0] == "PLUS" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self.peek()[0] == "STAR":
            self.advance()
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        if self.peek()[0] == "MINUS":
            self.advance()
            return -self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "CARET":
            self.advance()
            tok = self.expect("NUMBER")
            return base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "NUMBER":
            self.advance()
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "SLASH":
                self.advance()
                den = self.expect("NUMBER")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2], den[3])
                value /= int(den[1])
            return Polynomial.constant(self.nvars, value)
        if tok[0] == "NAME":
            self.advance()
            if self.var_names is not None:
                idx = self.var_names.get(tok[1])
                if idx is None:
                    raise ParseError(f"unknown variable {tok[1]!r}", tok[2], tok[3])
            else:
                idx = _variable_index(tok[1], tok[2], tok[3])
            if idx >= self.nvars:
                raise ParseError(
                    f"variable {tok[1]!r} exceeds the declared count of {self.nvars}",
                    tok[2], tok[3],
                )
            return Polynomial.variable(self.nvars, idx)
        if tok[0] == "LPAREN":
            self.advance()
            value = self.expr()
            self.expect("RPAREN")
            return value
        raise ParseError(f"expected a value, found {tok[1] or 'end of input'!r}", tok[2], tok[3])


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse the text grammar into a Polynomial.

    When nvars is omitted it is inferred as the largest variable index
    mentioned (at least 1).
    """
    tokens = _tokenize(text)
    if nvars is None:
        top = max_variable_index(text)
        nvars = 1 if top is None else top + 1
    if nvars < 1:
        raise ValueError("nvars must be at least 1")
    return _Parser(tokens, nvars, None).parse()


def parse_unipoly(text: str) -> UniPoly:
    """Parse a univariate polynomial in t."""
    tokens = _tokenize(text)
    p = _Parser(tokens, 1, {"t": 0}).parse()
    out = [Fraction(0)] * (p.total_degree + 1)
    for mono, c in p.terms.items():
        out[mono[0]] = c
    return UniPoly(out)
