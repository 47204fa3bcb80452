"""Exact sparse multivariate polynomials and degree-truncated jets over Q.

A polynomial stores a map from exponent tuples (one entry per variable) to
nonzero rational coefficients.  All coefficients are ``fractions.Fraction``,
so rank and order computations downstream are exact; nothing in this module
touches floating point.

A :class:`Jet` is a polynomial together with a total-degree bound ``D``:
terms of degree > D have been discarded and are unknown, not zero.  The
vanishing order of a zero jet is therefore reported as
:data:`UNKNOWN_BEYOND_TRUNCATION` rather than :data:`INFINITE`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class _OrderSentinel:
    """Non-numeric vanishing order (zero polynomial / fully truncated jet)."""

    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


#: Order of the exact zero polynomial.
INFINITE = _OrderSentinel("INFINITE")

#: Order of a zero jet: every term of degree <= truncation vanished, so the
#: true order is truncation' + 1 or larger (possibly infinite) but unknown.
UNKNOWN_BEYOND_TRUNCATION = _OrderSentinel("UNKNOWN_BEYOND_TRUNCATION")


def graded_key(exp: Exponent) -> tuple:
    """Sort key realizing the graded lexicographic monomial order."""
    return (sum(exp), exp)


class SparsePoly:
    """Immutable multivariate polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples of length ``num_vars`` to nonzero
    Fractions; zero coefficients are never stored.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {num_vars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = clean.get(exp, Fraction(0)) + Fraction(coeff)
            if c == 0:
                clean.pop(exp, None)
            else:
                clean[exp] = c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "SparsePoly":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value) -> "SparsePoly":
        return cls(num_vars, {(0,) * num_vars: Fraction(value)})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "SparsePoly":
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range for {num_vars} variables")
        exp = [0] * num_vars
        exp[index] = 1
        return cls(num_vars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "SparsePoly":
        exp = tuple(exp)
        return cls(len(exp), {exp: Fraction(coeff)})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self):
        """Minimal total degree of a nonzero term; INFINITE for zero."""
        if not self.terms:
            return INFINITE
        return min(sum(e) for e in self.terms)

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    def linear_part(self) -> tuple[Fraction, ...]:
        """Coefficient vector of the degree-1 terms (the gradient at 0)."""
        grad = [Fraction(0)] * self.num_vars
        for exp, coeff in self.terms.items():
            if sum(exp) == 1:
                grad[exp.index(1)] = coeff
        return tuple(grad)

    def homogeneous_part(self, deg: int) -> "SparsePoly":
        return SparsePoly(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) == deg})

    def truncate(self, bound: int) -> "SparsePoly":
        """Drop every term of total degree > bound."""
        return SparsePoly(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) <= bound})

    def partial(self, index: int) -> "SparsePoly":
        """Partial derivative with respect to variable ``index``."""
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            k = exp[index]
            if k == 0:
                continue
            new = list(exp)
            new[index] = k - 1
            out[tuple(new)] = coeff * k
        return SparsePoly(self.num_vars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.num_vars:
            raise ValueError("point has wrong length")
        vals = [Fraction(p) for p in point]
        total = Fraction(0)
        for exp, coeff in self.terms.items():
            term = coeff
            for v, e in zip(vals, exp):
                term *= v**e
            total += term
        return total

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other: "SparsePoly"):
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"mismatched num_vars: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            s = out.get(exp, Fraction(0)) + coeff
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return SparsePoly(self.num_vars, out)

    def __neg__(self):
        return SparsePoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            self._check_compatible(other)
            out: dict[Exponent, Fraction] = {}
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    exp = tuple(x + y for x, y in zip(ea, eb))
                    s = out.get(exp, Fraction(0)) + ca * cb
                    if s == 0:
                        out.pop(exp, None)
                    else:
                        out[exp] = s
            return SparsePoly(self.num_vars, out)
        try:
            scalar = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        if scalar == 0:
            return SparsePoly.zero(self.num_vars)
        return SparsePoly(self.num_vars, {e: c * scalar for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = SparsePoly.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __repr__(self):
        names = tuple(f"x{i + 1}" for i in range(self.num_vars))
        return f"SparsePoly({self.num_vars}, {poly_to_string(self, names)!r})"


class Jet:
    """A polynomial truncated at a total-degree bound.

    Every term of the stored polynomial has degree <= ``truncation``; terms
    beyond the bound are unknown.  Arithmetic never extends precision: the
    truncation of a product is the minimum of the operands' truncations.
    """

    __slots__ = ("poly", "truncation")

    def __init__(self, poly: SparsePoly, truncation: int):
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        object.__setattr__(self, "poly", poly.truncate(truncation))
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @property
    def num_vars(self) -> int:
        return self.poly.num_vars

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def order(self):
        """Minimal degree of a nonzero term, or UNKNOWN_BEYOND_TRUNCATION.

        A zero jet may have truncated away every term of a nonzero series,
        so its order is only known to exceed the truncation.
        """
        if self.poly.is_zero():
            return UNKNOWN_BEYOND_TRUNCATION
        return self.poly.order()

    def truncate(self, bound: int) -> "Jet":
        return Jet(self.poly, min(self.truncation, bound))

    def _check_compatible(self, other: "Jet"):
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"mismatched num_vars: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        self._check_compatible(other)
        return Jet(self.poly + other.poly, min(self.truncation, other.truncation))

    def __neg__(self):
        return Jet(-self.poly, self.truncation)

    def __sub__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check_compatible(other)
            bound = min(self.truncation, other.truncation)
            return Jet((self.poly * other.poly).truncate(bound), bound)
        return Jet(self.poly * other, self.truncation)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, Jet)
            and self.truncation == other.truncation
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.poly, self.truncation))

    def __repr__(self):
        return f"Jet({self.poly!r}, D={self.truncation})"


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Product of jets, truncated at the smaller of the two bounds."""
    return a * b


def order_of(p):
    """Vanishing order at the origin of a SparsePoly or Jet."""
    return p.order()


def substitute(p: SparsePoly, assignment: Sequence[SparsePoly], truncation: int) -> Jet:
    """Compose ``p`` with per-variable polynomials, truncated at ``truncation``.

    ``assignment[i]`` replaces variable i of ``p``; all assignment
    polynomials must share one target variable set.  Intermediate products
    are truncated, so the result only depends on the assignment terms of
    degree <= truncation.
    """
    if len(assignment) != p.num_vars:
        raise ValueError(
            f"assignment has {len(assignment)} entries for {p.num_vars} variables"
        )
    targets = {a.num_vars for a in assignment}
    if p.num_vars and len(targets) != 1:
        raise ValueError("assignment polynomials disagree on their variable set")
    target_vars = targets.pop() if targets else 0

    one = Jet(SparsePoly.constant(target_vars, 1), truncation)
    # Consecutive powers of each substituted variable, built on demand.
    powers: list[list[Jet]] = [[one] for _ in assignment]

    def power(i: int, k: int) -> Jet:
        cache = powers[i]
        base = Jet(assignment[i], truncation)
        while len(cache) <= k:
            cache.append(cache[-1] * base)
        return cache[k]

    total = Jet(SparsePoly.zero(target_vars), truncation)
    for exp, coeff in p.terms.items():
        term = one * coeff
        for i, e in enumerate(exp):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# text syntax: sums of terms like "3/2*x1^2*y3", "-x1", "7"
# ---------------------------------------------------------------------------

from .errors import PolyParseError

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*|\d+|\^|\*|\+|-|/")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    for match in _TOKEN_RE.finditer(text):
        if text[pos : match.start()].strip():
            raise PolyParseError(
                f"unexpected characters {text[pos:match.start()].strip()!r} in {text!r}"
            )
        tokens.append(match.group())
        pos = match.end()
    if text[pos:].strip():
        raise PolyParseError(f"unexpected characters {text[pos:].strip()!r} in {text!r}")
    return tokens


def parse_poly(text: str, variables: Sequence[str]) -> SparsePoly:
    """Parse polynomial text against a declared, ordered variable list.

    Accepted syntax: a signed sum of terms, each a '*'-separated product of
    an optional rational coefficient (``3`` or ``3/2``) and variable powers
    (``x`` or ``x^4``).  Unknown variable names are rejected.
    """
    var_index = {name: i for i, name in enumerate(variables)}
    if len(var_index) != len(variables):
        raise PolyParseError(f"duplicate variable names in {list(variables)}")
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError(f"empty polynomial text {text!r}")

    n = len(variables)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_int() -> int:
        tok = take()
        if tok is None or not tok.isdigit():
            raise PolyParseError(f"expected an integer, found {tok!r} in {text!r}")
        return int(tok)

    def parse_factor() -> tuple[Fraction, dict[int, int]]:
        tok = take()
        if tok is None:
            raise PolyParseError(f"unexpected end of input in {text!r}")
        if tok.isdigit():
            num = int(tok)
            if peek() == "/":
                take()
                den = parse_int()
                if den == 0:
                    raise PolyParseError(f"zero denominator in {text!r}")
                return Fraction(num, den), {}
            return Fraction(num), {}
        if tok in var_index:
            exp = 1
            if peek() == "^":
                take()
                exp = parse_int()
            return Fraction(1), {var_index[tok]: exp}
        raise PolyParseError(f"unknown variable {tok!r} in {text!r} (declared: {list(variables)})")

    def parse_term() -> tuple[Exponent, Fraction]:
        coeff, exps = parse_factor()
        while peek() == "*":
            take()
            c, e = parse_factor()
            coeff *= c
            for i, k in e.items():
                exps[i] = exps.get(i, 0) + k
        exp = [0] * n
        for i, k in exps.items():
            exp[i] = k
        return tuple(exp), coeff

    terms: list[tuple[Exponent, Fraction]] = []
    sign = Fraction(1)
    if peek() in ("+", "-"):
        sign = Fraction(-1) if take() == "-" else Fraction(1)
    while True:
        exp, coeff = parse_term()
        terms.append((exp, sign * coeff))
        tok = peek()
        if tok is None:
            break
        if tok not in ("+", "-"):
            raise PolyParseError(f"expected '+' or '-', found {tok!r} in {text!r}")
        sign = Fraction(-1) if take() == "-" else Fraction(1)
    return SparsePoly(n, terms)


def poly_to_string(p: SparsePoly, variables: Sequence[str]) -> str:
    """Render a polynomial in the text syntax, graded-lex descending."""
    if len(variables) != p.num_vars:
        raise ValueError("variable list has wrong length")
    if p.is_zero():
        return "0"
    parts = []
    for exp in sorted(p.terms, key=graded_key, reverse=True):
        coeff = p.terms[exp]
        factors = []
        for name, e in zip(variables, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)
