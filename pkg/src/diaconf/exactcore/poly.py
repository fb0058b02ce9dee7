"""Sparse multivariate polynomials over the rationals.

A polynomial is a map from monomials to nonzero :class:`~fractions.Fraction`
coefficients.  A monomial is a tuple of ``(symbol, exponent)`` pairs sorted by
the global indeterminate order ``T < L < M < x < t`` (``L`` and ``M`` are the
ASCII names of lambda and mu); further symbols may be declared at runtime and
sort after the built-in ones in declaration order.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, Fraction]

BUILTIN_SYMBOLS = ("T", "L", "M", "x", "t")
_ORDER: Dict[str, int] = {name: i for i, name in enumerate(BUILTIN_SYMBOLS)}
_ALIASES = {"λ": "L", "μ": "M"}
_SYMBOL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def declare(*names: str) -> None:
    """Register extra indeterminates (idempotent)."""
    for name in names:
        if not _SYMBOL_RE.match(name):
            raise ValueError(f"invalid symbol name {name!r}")
        if name not in _ORDER:
            _ORDER[name] = len(_ORDER)


def is_declared(name: str) -> bool:
    return name in _ORDER


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    order = _ORDER
    while i < len(a) and j < len(b):
        sa, ea = a[i]
        sb, eb = b[j]
        if sa == sb:
            out.append((sa, ea + eb))
            i += 1
            j += 1
        elif order[sa] < order[sb]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Poly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls._raw({(): Fraction(c)} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        name = _ALIASES.get(name, name)
        if name not in _ORDER:
            raise KeyError(f"undeclared indeterminate {name!r}")
        if power < 0:
            raise ValueError("negative exponent")
        if power == 0:
            return cls.const(1)
        return cls._raw({((name, power),): Fraction(1)})

    @staticmethod
    def coerce(value: "Poly | Scalar") -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Poly")

    # -- queries -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def symbols(self) -> set:
        return {s for mono in self.terms for s, _ in mono}

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in ``name``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e for _, e in mono) for mono in self.terms)
        name = _ALIASES.get(name, name)
        return max(dict(mono).get(name, 0) for mono in self.terms)

    def coeff(self, name: str, k: int) -> "Poly":
        """Coefficient of ``name**k``, as a polynomial in the remaining symbols."""
        name = _ALIASES.get(name, name)
        out: Dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            if d.get(name, 0) == k:
                rest = tuple(p for p in mono if p[0] != name)
                out[rest] = c
        return Poly._raw(out)

    def coefficients_in(self, name: str) -> Dict[int, "Poly"]:
        name = _ALIASES.get(name, name)
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for s, k in mono:
                if s == name:
                    e = k
                else:
                    rest.append((s, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly._raw(t) for e, t in out.items()}

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono)
            if v is None:
                out[mono] = c
            else:
                v += c
                if v:
                    out[mono] = v
                else:
                    del out[mono]
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly._raw({})
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly._raw({m: c / other for m, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- substitution --------------------------------------------------
    def subs(self, bindings: Mapping[str, "Poly | Scalar"]) -> "Poly":
        return substitute(self, bindings)

    # -- printing ------------------------------------------------------
    def sorted_terms(self):
        def key(item):
            mono = item[0]
            vec = sorted(((_ORDER[s], e) for s, e in mono))
            return (-sum(e for _, e in mono), [(i, -e) for i, e in vec])

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def substitute(p: Poly, bindings: Mapping[str, "Poly | Scalar"]) -> Poly:
    """Simultaneous substitution ``symbol -> polynomial``.

    >>> str(substitute(parse_poly("L^2"), {"L": parse_poly("-T - M")}))
    'T^2 + 2*T*M + M^2'
    """
    binds: Dict[str, Poly] = {}
    for name, value in bindings.items():
        name = _ALIASES.get(name, name)
        if name not in _ORDER:
            raise KeyError(f"unknown symbol {name!r} in bindings")
        binds[name] = Poly.coerce(value)
    if not binds:
        return p
    powers: Dict[Tuple[str, int], Poly] = {}
    acc: Dict[Monomial, Fraction] = {}
    for mono, c in p.terms.items():
        kept = []
        factor = None
        for s, e in mono:
            if s in binds:
                key = (s, e)
                pw = powers.get(key)
                if pw is None:
                    pw = powers[key] = binds[s] ** e
                factor = pw if factor is None else factor * pw
            else:
                kept.append((s, e))
        head = Poly._raw({tuple(kept): c})
        term = head if factor is None else head * factor
        for m, v in term.terms.items():
            nv = acc.get(m, 0) + v
            if nv:
                acc[m] = nv
            else:
                acc.pop(m, None)
    return Poly._raw(acc)


# -- text format ------------------------------------------------------------

def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimals and floats are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"non-rational coefficient {text!r}: write it as 'p/q'")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not re.fullmatch(r"\s*[-+−]?\d+(\s*/\s*\d+)?\s*", text):
        raise ValueError(f"non-rational coefficient {text!r}: write it as 'p/q'")
    return Fraction(text.replace("−", "-").replace(" ", ""))


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for mono, c in p.sorted_terms():
        mag = abs(c)
        factors = [s if e == 1 else f"{s}^{e}" for s, e in mono]
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-zλμ][A-Za-z0-9_]*)|(\*\*|[-+*/^()−]))")


def parse_poly(text: str) -> Poly:
    """Parse the serialized polynomial grammar (``"T^2 + 2*T*L + L^2"``)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad polynomial syntax at {pos}: {text!r}")
        num, sym, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif sym is not None:
            tokens.append(("sym", sym))
        else:
            tokens.append(("op", {"**": "^", "−": "-"}.get(op, op)))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        sign = 1
        if peek() in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek() in (("op", "-"), ("op", "+")):
            op = take()[1]
            t = term()
            acc = acc - t if op == "-" else acc + t
        return acc

    def term():
        acc = factor()
        while peek() == ("op", "*"):
            take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val = take()
        if kind == "num":
            base = Poly.const(val)
            if peek() == ("op", "/"):
                take()
                k2, den = take()
                if k2 != "num" or den == 0:
                    raise ValueError(f"bad rational in {text!r}")
                base = Poly.const(Fraction(val, den))
        elif kind == "sym":
            name = _ALIASES.get(val, val)
            if name not in _ORDER:
                raise ValueError(f"unknown symbol {val!r} in {text!r}")
            base = Poly.var(name)
        elif (kind, val) == ("op", "("):
            base = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
        elif (kind, val) == ("op", "-"):
            return -factor()
        else:
            raise ValueError(f"unexpected token {val!r} in {text!r}")
        if peek() == ("op", "^"):
            take()
            k2, e = take()
            if k2 != "num":
                raise ValueError(f"bad exponent in {text!r}")
            base = base ** e
        return base

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result


T = Poly.var("T")
L = Poly.var("L")
M = Poly.var("M")
X = Poly.var("x")
ONE = Poly.const(1)
ZERO = Poly.const(0)


def poly(value: "str | Poly | Scalar") -> Poly:
    if isinstance(value, str):
        return parse_poly(value)
    return Poly.coerce(value)


def monomials_up_to(names: Iterable[str], bound: int):
    """All monomials in ``names`` with each exponent at most ``bound``."""
    names = list(names)
    out = [Poly.const(1)]
    for name in names:
        v = Poly.var(name)
        out = [m * v ** e for m in out for e in range(bound + 1)]
    return out
