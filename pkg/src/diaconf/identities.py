"""Nonassociative polynomials as planar binary trees.

A tree is either a leaf, the ``int`` index ``i`` of the variable ``x_i``
(1-based), an uncolored node ``(left, right)``, or a colored node
``(left, op, right)`` with ``op`` equal to ``"|>"`` (the left product |-) or
``"<|"`` (the right product -|).

This module holds the translation maps from ordinary identities to dialgebra
identities, polarization, degree-``n`` consequence spaces, and the expansion of
di-Jordan monomials into the free diassociative algebra.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .exactcore import EchelonBasis, QMatrix, Subspace, format_rational, nullspace, transpose

VDASH = "|>"
DASHV = "<|"
COLORS = (VDASH, DASHV)
Tree = Union[int, tuple]

MONOMIAL_GUARD = 10 ** 6


class TooLarge(ValueError):
    """Refusal to build a multilinear space beyond the size guard."""


# -- trees ------------------------------------------------------------------

def is_leaf(t: Tree) -> bool:
    return isinstance(t, int)


def children(t: Tree) -> Tuple[Tree, Tree]:
    return (t[0], t[1]) if len(t) == 2 else (t[0], t[2])


def color(t: Tree) -> str | None:
    return t[1] if len(t) == 3 else None


def leaves(t: Tree) -> List[int]:
    if is_leaf(t):
        return [t]
    l, r = children(t)
    return leaves(l) + leaves(r)


def is_colored(t: Tree) -> bool:
    if is_leaf(t):
        return False
    return len(t) == 3


def strip_colors(t: Tree) -> Tree:
    if is_leaf(t):
        return t
    l, r = children(t)
    return (strip_colors(l), strip_colors(r))


def relabel_tree(t: Tree, mapping: Mapping[int, Tree]) -> Tree:
    """Substitute leaves; ``mapping`` values may themselves be trees."""
    if is_leaf(t):
        return mapping.get(t, t)
    if len(t) == 2:
        return (relabel_tree(t[0], mapping), relabel_tree(t[1], mapping))
    return (relabel_tree(t[0], mapping), t[1], relabel_tree(t[2], mapping))


def tree_str(t: Tree, top: bool = True) -> str:
    if is_leaf(t):
        return f"x{t}"
    l, r = children(t)
    c = color(t)
    body = f"{tree_str(l, False)} {c} {tree_str(r, False)}" if c else f"{tree_str(l, False)} {tree_str(r, False)}"
    return f"({body})"


def parse_tree(text: str) -> Tree:
    """Inverse of :func:`tree_str`, e.g. ``"(x1 |> (x2 <| x3))"``."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def node():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while tokens[pos] != ")":
                if tokens[pos] in COLORS:
                    items.append(tokens[pos])
                    pos += 1
                else:
                    items.append(node())
            pos += 1
            if len(items) == 2 and not isinstance(items[0], str) and not isinstance(items[1], str):
                return (items[0], items[1])
            if len(items) == 3 and items[1] in COLORS:
                return (items[0], items[1], items[2])
            raise ValueError(f"malformed tree {text!r}")
        if tok.startswith("x") and tok[1:].isdigit() and int(tok[1:]) >= 1:
            return int(tok[1:])
        raise ValueError(f"unexpected token {tok!r} in tree {text!r}")

    try:
        t = node()
    except IndexError:
        raise ValueError(f"malformed tree {text!r}") from None
    if pos != len(tokens):
        raise ValueError(f"trailing input in tree {text!r}")
    return t


# -- polynomials ------------------------------------------------------------

class MagmaPoly:
    """Rational combination of uncolored trees (a nonassociative polynomial)."""

    colored = False

    def __init__(self, terms: Mapping[Tree, object] | Iterable[Tuple[object, Tree]] = ()):
        acc: Dict[Tree, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((t, c) for c, t in terms)
        for t, c in items:
            if is_colored(t) != self.colored and not is_leaf(t):
                kind = "colored" if self.colored else "uncolored"
                raise ValueError(f"{type(self).__name__} expects {kind} trees, got {tree_str(t)}")
            v = acc.get(t, 0) + Fraction(c)
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)
        self.terms = acc

    @classmethod
    def monomial(cls, t: Tree, c=1):
        return cls({t: c})

    def _new(self, terms):
        return type(self)(terms)

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return self._new(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({t: -c for t, c in self.terms.items()})

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return self._new({t: v * c for t, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    @property
    def degree(self) -> int:
        degs = {len(leaves(t)) for t in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop() if degs else 0

    def variables(self) -> List[int]:
        return sorted({v for t in self.terms for v in leaves(t)})

    def is_polylinear(self) -> bool:
        if not self.terms:
            return True
        n = self.degree
        return all(sorted(leaves(t)) == list(range(1, n + 1)) for t in self.terms)

    def relabel(self, mapping: Mapping[int, Tree]):
        out: Dict[Tree, Fraction] = {}
        for t, c in self.terms.items():
            nt = relabel_tree(t, mapping)
            out[nt] = out.get(nt, 0) + c
        return self._new(out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda tc: _tree_key(tc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.sorted_terms():
            s = tree_str(t)
            if not is_leaf(t):
                s = s[1:-1]
            mag = abs(c)
            body = s if mag == 1 else f"{format_rational(mag)}*({s})"
            parts.append(("-" if c < 0 else "") + body if not parts else (" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class DiMagmaPoly(MagmaPoly):
    """Rational combination of 2-colored trees (a dialgebra polynomial)."""

    colored = True


def poly_from(pairs: Iterable[Tuple[object, Tree]]) -> MagmaPoly:
    """Build a polynomial from ``(coeff, tree)`` pairs; coloring picks the class."""
    pairs = list(pairs)
    colored = any(is_colored(t) for _, t in pairs)
    return (DiMagmaPoly if colored else MagmaPoly)(pairs)


# -- canonical enumeration --------------------------------------------------

def _depths(t: Tree, d: int = 0) -> Tuple[int, ...]:
    if is_leaf(t):
        return (d,)
    l, r = children(t)
    return _depths(l, d + 1) + _depths(r, d + 1)


def _tree_key(t: Tree):
    cols = []

    def walk(s):
        if not is_leaf(s):
            l, r = children(s)
            cols.append(COLORS.index(color(s)) if color(s) else 0)
            walk(l)
            walk(r)

    walk(t)
    return (len(leaves(t)), _depths(t), tuple(leaves(t)), tuple(cols))


@lru_cache(maxsize=None)
def shapes(n: int) -> Tuple[Tree, ...]:
    """Planar binary trees with ``n`` leaves (all labelled 0), ordered by leaf depths."""
    if n == 1:
        return (0,)
    out = []
    for i in range(1, n):
        for l in shapes(i):
            for r in shapes(n - i):
                out.append((l, r))
    return tuple(sorted(out, key=_depths))


def fill(shape: Tree, labels: Sequence[int]) -> Tree:
    it = iter(labels)

    def walk(s):
        if is_leaf(s):
            return next(it)
        return (walk(s[0]), walk(s[1]))

    return walk(shape)


def colorings(t: Tree) -> List[Tree]:
    """All 2-colorings of the internal nodes of an uncolored tree (pre-order)."""
    if is_leaf(t):
        return [t]
    out = []
    for c in COLORS:
        for l in colorings(t[0]):
            for r in colorings(t[1]):
                out.append((l, c, r))
    return out


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def multilinear_size(n: int, colored: bool = False) -> int:
    return catalan(n - 1) * math.factorial(n) * (2 ** (n - 1) if colored else 1)


class MultilinearBasis:
    """Enumerated polylinear monomials of degree ``n`` with an index map."""

    def __init__(self, n: int, colored: bool = False, guard: int | None = MONOMIAL_GUARD):
        size = multilinear_size(n, colored)
        if guard is not None and size > guard:
            raise TooLarge(f"degree {n} multilinear space has {size} monomials (guard {guard})")
        self.degree = n
        self.colored = colored
        mons = []
        for shape in shapes(n):
            for perm in itertools.permutations(range(1, n + 1)):
                t = fill(shape, perm)
                mons.extend(colorings(t) if colored else [t])
        self.monomials: Tuple[Tree, ...] = tuple(mons)
        self.index: Dict[Tree, int] = {t: i for i, t in enumerate(mons)}

    def __len__(self) -> int:
        return len(self.monomials)

    def vector(self, f: MagmaPoly) -> Dict[int, Fraction]:
        try:
            return {self.index[t]: c for t, c in f.terms.items()}
        except KeyError as exc:
            raise ValueError(f"monomial {tree_str(exc.args[0])} is not in the degree-{self.degree} basis") from None

    def poly(self, vec: Mapping[int, Fraction] | Sequence) -> MagmaPoly:
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        cls = DiMagmaPoly if self.colored else MagmaPoly
        return cls({self.monomials[i]: c for i, c in items if c})


# -- evaluation in algebras -------------------------------------------------

def evaluate_tree(t: Tree, obj, args: Mapping[int, Sequence]) -> list:
    if is_leaf(t):
        return list(args[t])
    l, r = children(t)
    a, b = evaluate_tree(l, obj, args), evaluate_tree(r, obj, args)
    c = color(t)
    if c is None:
        return obj.mul(a, b)
    return obj.vdash(a, b) if c == VDASH else obj.dashv(a, b)


def evaluate(f: MagmaPoly, obj, args: Mapping[int, Sequence]) -> list:
    out = [Fraction(0)] * obj.dim
    for t, c in f.terms.items():
        v = evaluate_tree(t, obj, args)
        out = [x + c * y for x, y in zip(out, v)]
    return out


def holds_in(f: MagmaPoly, obj):
    """Does the polylinear identity ``f = 0`` hold on all basis tuples of ``obj``?"""
    from .dialgebra import CheckResult

    if not f.is_polylinear():
        raise ValueError("identity must be polylinear; linearize it first")
    n = f.degree
    basis = obj.basis()
    for idx in itertools.product(range(obj.dim), repeat=n):
        args = {k + 1: basis[i] for k, i in enumerate(idx)}
        if any(evaluate(f, obj, args)):
            return CheckResult(str(f), False, tuple(obj.names[i] for i in idx))
    return CheckResult(str(f), True)


# -- polarization -----------------------------------------------------------

def linearize(f: MagmaPoly) -> List[MagmaPoly]:
    """Full polarization of a homogeneous identity into polylinear identities.

    The identity is split into multihomogeneous components; in each, the ``d``
    occurrences of a variable of degree ``d`` are replaced by fresh variables in
    every order.  Over the rationals the returned family is equivalent to ``f``.
    """
    if not f.terms:
        return []
    degs = {len(leaves(t)) for t in f.terms}
    if len(degs) > 1:
        raise ValueError("identity is not homogeneous")
    comps: Dict[Tuple, Dict[Tree, Fraction]] = {}
    for t, c in f.terms.items():
        key = tuple(sorted(Counter(leaves(t)).items()))
        comps.setdefault(key, {})[t] = c
    out = []
    for key, terms in sorted(comps.items()):
        blocks = {}
        nxt = 1
        for var, d in key:
            blocks[var] = list(range(nxt, nxt + d))
            nxt += d
        acc: Dict[Tree, Fraction] = {}
        for t, c in terms.items():
            lv = leaves(t)
            positions = {var: [i for i, v in enumerate(lv) if v == var] for var, _ in key}
            choices = [itertools.permutations(blocks[var]) for var, _ in key]
            for combo in itertools.product(*choices):
                labels = list(lv)
                for (var, _), perm in zip(key, combo):
                    for pos, lab in zip(positions[var], perm):
                        labels[pos] = lab
                nt = fill(_shape_of(t), labels) if not is_colored(t) else _refill_colored(t, labels)
                acc[nt] = acc.get(nt, 0) + c
        p = type(f)(acc)
        if p:
            out.append(p)
    return out


def _shape_of(t: Tree) -> Tree:
    if is_leaf(t):
        return 0
    return (_shape_of(t[0]), _shape_of(t[1]))


def _refill_colored(t: Tree, labels: Sequence[int]) -> Tree:
    it = iter(labels)

    def walk(s):
        if is_leaf(s):
            return next(it)
        return (walk(s[0]), s[1], walk(s[2]))

    return walk(t)


# -- the translation maps ---------------------------------------------------

def _psi_tree(t: Tree, center: int) -> Tree:
    lv = leaves(t)
    p = lv.index(center)

    def walk(s, start):
        if is_leaf(s):
            return s, start + 1
        l, mid = walk(s[0], start)
        r, end = walk(s[1], mid)
        return (l, VDASH if p >= mid else DASHV, r), end

    return walk(t, 0)[0]


def psi(f: MagmaPoly, k: int) -> DiMagmaPoly:
    """Color ``f`` with center ``x_k``.

    A node gets |- when ``x_k`` lies to the right of its left subtree and -|
    otherwise, so the image of a monomial reads
    ``x_j1 |- ... |- x_k -| ... -| x_jn`` with the bracketing preserved.
    """
    if f.colored:
        raise ValueError("psi acts on uncolored polynomials")
    if not f.is_polylinear():
        raise ValueError("psi needs a polylinear polynomial")
    n = f.degree
    if not 1 <= k <= n:
        raise ValueError(f"center index {k} out of range 1..{n}")
    return DiMagmaPoly({_psi_tree(t, k): c for t, c in f.terms.items()})


def center_of(t: Tree) -> int:
    """Follow |- to the right and -| to the left down to a leaf."""
    while not is_leaf(t):
        t = t[2] if t[1] == VDASH else t[0]
    return t


def decompose_by_center(g: DiMagmaPoly) -> Tuple[List[MagmaPoly], DiMagmaPoly]:
    """Split ``g = sum_k psi(f_k, k)``; monomials matching no center go to the residual."""
    if not g.is_polylinear():
        raise ValueError("decomposition needs a polylinear polynomial")
    n = g.degree if g.terms else 0
    parts: List[Dict[Tree, Fraction]] = [dict() for _ in range(n)]
    residual: Dict[Tree, Fraction] = {}
    for t, c in g.terms.items():
        k = center_of(t)
        plain = strip_colors(t)
        if _psi_tree(plain, k) == t:
            parts[k - 1][plain] = c
        else:
            residual[t] = c
    return [MagmaPoly(p) for p in parts], DiMagmaPoly(residual)


def di_identities(axioms: Sequence[MagmaPoly]) -> List[DiMagmaPoly]:
    """``psi(f, k)`` for every axiom ``f`` and every ``k = 1..deg f``."""
    out = []
    for f in axioms:
        if not f.is_polylinear():
            raise ValueError(f"axiom {f} is not polylinear")
        out.extend(psi(f, k) for k in range(1, f.degree + 1))
    return out


# -- consequences -----------------------------------------------------------

def _lifts(f: MagmaPoly, new: int) -> List[MagmaPoly]:
    ops = COLORS if f.colored else (None,)
    cls = type(f)

    def node(a, op, b):
        return (a, b) if op is None else (a, op, b)

    out = []
    for op in ops:
        out.append(cls({node(t, op, new): c for t, c in f.terms.items()}))
        out.append(cls({node(new, op, t): c for t, c in f.terms.items()}))
        for i in range(1, new):
            out.append(f.relabel({i: node(i, op, new)}))
            out.append(f.relabel({i: node(new, op, i)}))
    return out


def consequence_space(axioms: Sequence[MagmaPoly], n: int, colored: bool | None = None,
                      guard: int | None = MONOMIAL_GUARD) -> Tuple[Subspace, MultilinearBasis]:
    """Span of all degree-``n`` consequences of polylinear ``axioms``.

    Consequences are generated degree by degree: substitute ``x_i -> x_i x_new``
    or ``x_new x_i`` (each product in the colored case), multiply by ``x_new`` on
    either side, and close under relabelling of the variables.
    """
    axioms = [a for a in axioms if a.terms]
    if colored is None:
        colored = any(a.colored for a in axioms)
    for a in axioms:
        if a.colored != colored:
            raise ValueError("mixed colored and uncolored axioms")
        if not a.is_polylinear():
            raise ValueError(f"axiom {a} is not polylinear")
        if a.degree > n:
            raise ValueError(f"axiom {a} has degree above {n}")
    basis = MultilinearBasis(n, colored, guard)
    if not axioms:
        return Subspace.zero(len(basis)), basis
    start = min(a.degree for a in axioms)
    current: List[MagmaPoly] = []
    for d in range(start, n + 1):
        b = basis if d == n else MultilinearBasis(d, colored, guard)
        ech = EchelonBasis(len(b))
        candidates: List[MagmaPoly] = []
        for f in current:
            candidates.extend(_lifts(f, d))
        # lifts of an S_{d-1}-closed family need only the transpositions (i d)
        perms = [{}] + [{i: d, d: i} for i in range(1, d)]
        for f in candidates:
            for p in perms:
                ech.add(b.vector(f.relabel(p) if p else f))
        for a in axioms:
            if a.degree == d:
                for perm in itertools.permutations(range(1, d + 1)):
                    ech.add(b.vector(a.relabel(dict(zip(range(1, d + 1), perm)))))
        current = [b.poly(row) for row in ech.rows.values()]
        if d == n:
            return ech.to_subspace(), basis
    raise AssertionError("unreachable")  # pragma: no cover


# -- free diassociative normal forms and the expansion map -------------------

NormalForm = Tuple[Tuple[int, ...], int]  # (word, 0-based position of the center)


@lru_cache(maxsize=None)
def normal_forms(n: int) -> Tuple[NormalForm, ...]:
    """The ``n * n!`` monomials ``x_j1 |- ... |- x_jc -| ... -| x_jn``."""
    return tuple((w, c) for w in itertools.permutations(range(1, n + 1)) for c in range(n))


def dias_product(u: Mapping[NormalForm, Fraction], v: Mapping[NormalForm, Fraction], op: str) -> Dict[NormalForm, Fraction]:
    """Product in the free diassociative algebra: |- keeps the right center, -| the left."""
    out: Dict[NormalForm, Fraction] = {}
    for (w1, c1), a in u.items():
        for (w2, c2), b in v.items():
            key = (w1 + w2, len(w1) + c2) if op == VDASH else (w1 + w2, c1)
            out[key] = out.get(key, 0) + a * b
    return {k: c for k, c in out.items() if c}


def expand_jordan_monomial(t: Tree) -> Dict[NormalForm, Fraction]:
    """Expand ``x o y = x |- y + y -| x`` recursively into normal forms."""
    if is_leaf(t):
        return {((t,), 0): Fraction(1)}
    a = expand_jordan_monomial(t[0])
    b = expand_jordan_monomial(t[1])
    out = dias_product(a, b, VDASH)
    for k, c in dias_product(b, a, DASHV).items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def expansion_matrix(n: int, guard: int = 4, force: bool = False) -> Tuple[QMatrix, MultilinearBasis, Tuple[NormalForm, ...]]:
    """Rows: uncolored degree-``n`` monomials; columns: diassociative normal forms."""
    if n > guard and not force:
        raise TooLarge(f"degree {n} exceeds the guard {guard}: "
                       f"{multilinear_size(n)} x {n * math.factorial(n)} matrix; pass force=True")
    rows = MultilinearBasis(n, False)
    cols = normal_forms(n)
    cidx = {nf: i for i, nf in enumerate(cols)}
    mat = []
    for t in rows.monomials:
        row = [Fraction(0)] * len(cols)
        for nf, c in expand_jordan_monomial(t).items():
            row[cidx[nf]] += c
        mat.append(row)
    return mat, rows, cols


# -- named identities ---------------------------------------------------------

def _P(*pairs) -> MagmaPoly:
    return poly_from(pairs)


ASSOCIATIVITY = _P((1, ((1, 2), 3)), (-1, (1, (2, 3))))
COMMUTATIVITY = _P((1, (1, 2)), (-1, (2, 1)))
ANTICOMMUTATIVITY = _P((1, (1, 2)), (1, (2, 1)))
JACOBI = _P((1, ((1, 2), 3)), (1, ((2, 3), 1)), (1, ((3, 1), 2)))
JORDAN_IDENTITY = _P((1, (((1, 1), 2), 1)), (-1, ((1, 1), (2, 1))))
LEIBNIZ = _P((1, (1, (2, 3))), (-1, ((1, 2), 3)), (-1, (2, (1, 3))))


def _assoc_tree(a, b, c):
    return [(1, ((a, b), c)), (-1, (a, (b, c)))]


# [x1,x2]x3 = 0;  (x1^2,x2,x3) = 2(x1,x2,x1x3);  x1(x1^2 x2) = x1^2(x1 x2)
DI_JORDAN_AXIOMS = (
    _P((1, ((1, 2), 3)), (-1, ((2, 1), 3))),
    _P(*_assoc_tree((1, 1), 2, 3), *[(-2 * c, t) for c, t in _assoc_tree(1, 2, (1, 3))]),
    _P((1, (1, ((1, 1), 2))), (-1, ((1, 1), (1, 2)))),
)

ZERO_IDENTITIES = (
    _P((1, (1, DASHV, (2, VDASH, 3))), (-1, (1, DASHV, (2, DASHV, 3)))),
    _P((1, ((1, DASHV, 2), VDASH, 3)), (-1, ((1, VDASH, 2), VDASH, 3))),
)

DIASSOCIATIVE_AXIOMS = ZERO_IDENTITIES + (
    _P((1, (1, VDASH, (2, VDASH, 3))), (-1, ((1, VDASH, 2), VDASH, 3))),
    _P((1, (1, DASHV, (2, DASHV, 3))), (-1, ((1, DASHV, 2), DASHV, 3))),
    _P((1, (1, VDASH, (2, DASHV, 3))), (-1, ((1, VDASH, 2), DASHV, 3))),
)


def variety_axioms(name: str) -> List[MagmaPoly]:
    """Polylinear defining identities of a named variety."""
    if name in ("assoc", "associative"):
        return [ASSOCIATIVITY]
    if name == "lie":
        return [ANTICOMMUTATIVITY, JACOBI]
    if name == "jordan":
        return [COMMUTATIVITY] + linearize(JORDAN_IDENTITY)
    if name in ("comm", "commutative"):
        return [COMMUTATIVITY]
    raise ValueError(f"unknown variety {name!r}")


def di_jordan_polylinear() -> List[MagmaPoly]:
    out = []
    for f in DI_JORDAN_AXIOMS:
        out.extend(linearize(f))
    return out


def dias_quotient_dim(n: int, guard: int | None = MONOMIAL_GUARD) -> int:
    """Dimension of the degree-``n`` multilinear part of the free diassociative algebra."""
    axioms = [f for f in DIASSOCIATIVE_AXIOMS if f.degree <= n]
    if not axioms:
        return multilinear_size(n, colored=True)
    C, basis = consequence_space(axioms, n, colored=True, guard=guard)
    return len(basis.monomials) - C.dim


# -- s-identities at desk scale ---------------------------------------------------

@dataclass
class SIdentityReport:
    degree: int
    monomials: int
    normal_forms: int
    expansion_rank: int
    kernel_dim: int
    consequence_dim: int
    intersection_dim: int
    consequences_special: bool

    @property
    def verdict(self) -> bool:
        """True iff there are no s-identities in this degree."""
        return self.intersection_dim == self.kernel_dim

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "monomials": self.monomials,
            "normal_forms": self.normal_forms,
            "expansion_rank": self.expansion_rank,
            "kernel_dim": self.kernel_dim,
            "consequence_dim": self.consequence_dim,
            "intersection_dim": self.intersection_dim,
            "consequences_hold_in_special": self.consequences_special,
            "no_s_identities": self.verdict,
        }


def s_identity_space(n: int, guard: int = 4, force: bool = False) -> SIdentityReport:
    """Compare identities of special di-Jordan algebras with di-Jordan consequences.

    ``K`` is the left kernel of the expansion matrix (polynomials whose
    expansion vanishes in the free diassociative algebra) and ``C`` the span of
    degree-``n`` consequences of the linearized di-Jordan identities.  Degree
    ``n`` has no s-identities iff ``K`` is contained in ``C``.
    """
    mat, rows, cols = expansion_matrix(n, guard=guard, force=force)
    K = nullspace(transpose(mat), cols=len(rows))
    axioms = [f for f in di_jordan_polylinear() if f.degree <= n]
    C, _ = consequence_space(axioms, n, colored=False) if axioms else (Subspace.zero(len(rows)), rows)
    inter = K.intersection(C)
    return SIdentityReport(
        degree=n,
        monomials=len(rows),
        normal_forms=len(cols),
        expansion_rank=len(rows) - K.dim,
        kernel_dim=K.dim,
        consequence_dim=C.dim,
        intersection_dim=inter.dim,
        consequences_special=C <= K,
    )
