"""Exact rational scalars and sparse multivariate polynomials.

Coefficients are Python ints or :class:`fractions.Fraction` values; a
fraction with denominator 1 is always stored as a plain int, so the two are
interchangeable for equality and hashing.  Polynomials live over a
:class:`VarSet`, a fixed ordered tuple of variable names, and map exponent
tuples to nonzero coefficients.

Monomials are ordered graded-lexicographically, with the first declared
variable the largest.  That order drives rendering and the leading term used
by exact division.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from math import gcd
from types import MappingProxyType
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]
Monomial = tuple  # tuple[int, ...] of exponents, one per VarSet entry

__all__ = [
    "Rational",
    "Monomial",
    "VarSet",
    "Polynomial",
    "VarSetMismatch",
    "InexactDivision",
    "parse_rational",
    "format_rational",
    "as_rational",
    "rat_arith",
    "coeff_extract",
    "substitute",
    "parse_polynomial",
]


class VarSetMismatch(ValueError):
    """Raised when two polynomials over different variable lists meet."""


class InexactDivision(ArithmeticError):
    """Raised when a polynomial division leaves a remainder."""


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(x) -> Rational:
    """Coerce ``x`` to the canonical scalar form (int when integral)."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Rational:
    """Parse ``"p"``, ``"-p"`` or ``"p/q"`` into an exact rational."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return as_rational(Fraction(num, den))


def format_rational(x: Rational) -> str:
    x = as_rational(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


_RAT_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
}


def rat_arith(a: Rational, b: Rational, op: str) -> Rational:
    """Exact ``a op b`` for op in add/sub/mul/div.

    Division by zero raises :class:`ZeroDivisionError`.
    """
    a, b = as_rational(a), as_rational(b)
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return as_rational(Fraction(a) / b)
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    return as_rational(fn(a, b))


@dataclass(frozen=True)
class VarSet:
    """An ordered list of distinct variable names."""

    names: tuple
    _index: Mapping = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", MappingProxyType({n: i for i, n in enumerate(names)}))

    @classmethod
    def of(cls, *names: str) -> "VarSet":
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(tuple(names))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in {self.names}") from None

    def monomial(self, exponents: Mapping[str, int] | None = None, **kw: int) -> Monomial:
        """Exponent tuple for e.g. ``vs.monomial(z1=2, z3=1)``."""
        exps = [0] * len(self.names)
        for name, e in {**(exponents or {}), **kw}.items():
            if e < 0:
                raise ValueError("negative exponent")
            exps[self.index(name)] = e
        return tuple(exps)

    def var(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.monomial({name: 1}): 1})

    def vars(self, *names: str) -> list:
        return [self.var(n) for n in names]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * len(self.names): c})


def _grlex_key(exps: tuple):
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("varset", "_terms", "_hash")

    def __init__(self, varset: VarSet, terms: Mapping[tuple, Rational] | None = None):
        self.varset = varset
        clean = {}
        n = len(varset)
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"monomial {exps} does not match {n} variables")
            c = as_rational(c)
            if c:
                clean[exps] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, varset: VarSet, terms: dict) -> "Polynomial":
        # terms must already be pruned and canonical
        p = cls.__new__(cls)
        p.varset = varset
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple, Rational]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: tuple) -> Rational:
        return self._terms.get(tuple(exps), 0)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def degree_in(self, name: str) -> int:
        i = self.varset.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * len(self.varset), 0)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def content(self) -> Rational:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self._terms:
            return 0
        num = 0
        den = 1
        for c in self._terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return as_rational(Fraction(num, den))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.varset != self.varset:
                raise VarSetMismatch(f"{self.varset.names} vs {other.varset.names}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.varset.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = as_rational(v)
            else:
                out.pop(e, None)
        return Polynomial._raw(self.varset, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.varset, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = as_rational(other)
            if not other:
                return self.varset.zero()
            return Polynomial._raw(self.varset, {e: as_rational(c * other) for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(map(operator.add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return Polynomial._raw(self.varset, {e: as_rational(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            inv = Fraction(1) / other
            return self * inv
        if isinstance(other, Polynomial):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.varset.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises InexactDivision otherwise."""
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot divide by a non-polynomial")
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        lt_e, lt_c = other.leading_term()
        if len(other._terms) == 1:
            out = {}
            for e, c in self._terms.items():
                d = tuple(map(operator.sub, e, lt_e))
                if min(d, default=0) < 0:
                    raise InexactDivision("monomial divisor does not divide")
                out[d] = as_rational(Fraction(c) / lt_c)
            return Polynomial._raw(self.varset, out)
        rest = [(e, c) for e, c in other._terms.items() if e != lt_e]
        rem = dict(self._terms)
        quot = {}
        while rem:
            e = max(rem, key=_grlex_key)
            d = tuple(map(operator.sub, e, lt_e))
            if min(d, default=0) < 0:
                raise InexactDivision(f"leading monomial {e} not divisible by {lt_e}")
            q = as_rational(Fraction(rem.pop(e)) / lt_c)
            quot[d] = q
            for oe, oc in rest:
                k = tuple(map(operator.add, d, oe))
                v = rem.get(k, 0) - q * oc
                if v:
                    rem[k] = as_rational(v)
                else:
                    rem.pop(k, None)
        return Polynomial._raw(self.varset, quot)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.varset == other.varset and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return not self._terms
            return self._terms == {(0,) * len(self.varset): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.varset.names, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation and substitution ---------------------------------------
    def evaluate(self, point: Mapping[str, Rational]) -> Rational:
        """Value at a point binding every variable that occurs."""
        vals = [None] * len(self.varset)
        for name, v in point.items():
            vals[self.varset.index(name)] = as_rational(v)
        total = 0
        for e, c in self._terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    if vals[i] is None:
                        raise KeyError(f"no value for {self.varset.names[i]}")
                    term = term * vals[i] ** k
            total += term
        return as_rational(total)

    def subs(self, bindings: Mapping[str, object]) -> "Polynomial":
        return substitute(self, bindings)

    def coeff(self, pattern: Mapping[str, int] | None = None, **kw: int) -> "Polynomial":
        return coeff_extract(self, {**(pattern or {}), **kw})

    def with_varset(self, varset: VarSet) -> "Polynomial":
        """Re-embed into a larger (or reordered) variable list."""
        idx = [varset.index(n) for n in self.varset.names]
        n = len(varset)
        out = {}
        for e, c in self._terms.items():
            new = [0] * n
            for i, k in zip(idx, e):
                new[i] = k
            out[tuple(new)] = c
        return Polynomial._raw(varset, out)

    # -- rendering --------------------------------------------------------
    def _monomial_str(self, e: tuple) -> str:
        parts = []
        for name, k in zip(self.varset.names, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._monomial_str(e)
            mag = format_rational(abs(c))
            if not mono:
                body = mag
            elif mag == "1":
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={list(self.varset.names)})"


def coeff_extract(p: Polynomial, pattern: Mapping[str, int]) -> Polynomial:
    """Coefficient of the monomial ``pattern`` (over a subset of variables).

    The result keeps ``p``'s variable list; it involves only the variables not
    named in ``pattern``.  Terms whose exponents on the pattern variables differ
    from the pattern are dropped.
    """
    idx = [(p.varset.index(name), k) for name, k in pattern.items()]
    out = {}
    for e, c in p._terms.items():
        if all(e[i] == k for i, k in idx):
            e = list(e)
            for i, _ in idx:
                e[i] = 0
            out[tuple(e)] = c
    return Polynomial._raw(p.varset, out)


def substitute(p: Polynomial, bindings: Mapping[str, object]) -> Polynomial:
    """Replace variables by rationals or polynomials over the same VarSet."""
    vs = p.varset
    bound = {}
    for name, value in bindings.items():
        i = vs.index(name)
        if isinstance(value, Polynomial):
            if value.varset != vs:
                raise VarSetMismatch("substituted polynomial uses another VarSet")
        else:
            value = vs.const(as_rational(value))
        bound[i] = value
    if not bound:
        return p
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = bound[i] ** k
        return powers[key]

    total: dict = {}
    for e, c in p._terms.items():
        keep = tuple(0 if i in bound else k for i, k in enumerate(e))
        term = Polynomial._raw(vs, {keep: c})
        for i, k in enumerate(e):
            if k and i in bound:
                term = term * power(i, k)
                if not term:
                    break
        for te, tc in term._terms.items():
            total[te] = total.get(te, 0) + tc
    return Polynomial._raw(vs, {e: as_rational(c) for e, c in total.items() if c})


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("name", name))
        elif op is not None and not op.isspace():
            if op not in "+-*/^()":
                raise ValueError(f"unexpected character {op!r} in {text!r}")
            toks.append(("op", op))
        pos = m.end()
    return toks


def parse_polynomial(text: str, varset: VarSet) -> Polynomial:
    """Parse an expression built from + - * / ^, parentheses, integers and names.

    Accepts everything ``str(Polynomial)`` produces.  Division is only allowed
    by rational constants.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"parse error near token {pos} in {text!r}")
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = power()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise ValueError("division by a non-constant expression")
                acc = acc / rhs.constant_value()
        return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            _, e = take("num")
            base = base ** e
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return varset.const(val)
        if kind == "name":
            take()
            return varset.var(val)
        if (kind, val) == ("op", "("):
            take()
            inner = expr()
            take("op", ")")
            return inner
        if (kind, val) == ("op", "-"):
            take()
            return -power()
        raise ValueError(f"parse error near token {pos} in {text!r}")

    if not toks:
        raise ValueError("empty polynomial expression")
    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result


def product(polys: Iterable[Polynomial], varset: VarSet | None = None) -> Polynomial:
    polys = list(polys)
    if not polys:
        if varset is None:
            raise ValueError("empty product needs a VarSet")
        return varset.one()
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


def monomials_of_degree(nvars: int, degree: int):
    """All exponent tuples of the given total degree, in descending grlex order."""
    out = [e for e in _cartesian(range(degree + 1), repeat=nvars) if sum(e) == degree]
    return sorted(out, reverse=True)
