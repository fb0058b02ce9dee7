"""Finite-dimensional algebras and dialgebras given by structure constants.

An :class:`Algebra` has one bilinear product, a :class:`Dialgebra` has two,
``vdash`` (left, ``x |- y``) and ``dashv`` (right, ``x -| y``).  Vectors are
lists of coordinates; entries are usually :class:`~fractions.Fraction` but any
ring element supporting ``+`` and ``*`` (for instance :class:`Poly`) works, which
is how non-multilinear identities are checked on generic elements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactcore import Poly, QMatrix, Subspace, declare
from .exactcore.linalg import is_nilpotent

Table = Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]]


@dataclass
class CheckResult:
    """Outcome of an identity check; truthy iff the check passed."""

    name: str
    ok: bool
    witness: Optional[Tuple[str, ...]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _compile(n: int, table: Mapping) -> Table:
    out: Table = {}
    for (i, j), row in table.items():
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"product index ({i}, {j}) out of range for dimension {n}")
        items = row.items() if isinstance(row, Mapping) else enumerate(row)
        entries = []
        for k, c in items:
            if not 0 <= k < n:
                raise ValueError(f"structure constant index {k} out of range")
            c = Fraction(c)
            if c:
                entries.append((k, c))
        if entries:
            out[(i, j)] = tuple(sorted(entries))
    return out


def _expand(table: Table) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
    return {key: dict(entries) for key, entries in table.items()}


def _mul(table: Table, n: int, u: Sequence, v: Sequence) -> list:
    out = [Fraction(0)] * n
    nu = [(i, a) for i, a in enumerate(u) if a]
    nv = [(j, b) for j, b in enumerate(v) if b]
    for i, a in nu:
        for j, b in nv:
            entries = table.get((i, j))
            if entries:
                ab = a * b
                for k, c in entries:
                    out[k] = out[k] + ab * c
    return out


def _basis_vector(n: int, i: int) -> List[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


class Algebra:
    """Algebra with basis ``names`` and products ``e_i e_j = sum_k c[i,j][k] e_k``."""

    def __init__(self, names: Sequence[str], table: Mapping, name: str | None = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        self.table = _compile(len(self.names), table)
        self.name = name

    @classmethod
    def from_function(cls, names: Sequence[str], product: Callable[[int, int], Sequence], name=None):
        n = len(names)
        return cls(names, {(i, j): product(i, j) for i in range(n) for j in range(n)}, name=name)

    @classmethod
    def zero(cls, n: int, prefix: str = "e") -> "Algebra":
        return cls([f"{prefix}{i + 1}" for i in range(n)], {}, name=f"zero{n}")

    @property
    def dim(self) -> int:
        return len(self.names)

    def e(self, i: int) -> List[Fraction]:
        return _basis_vector(self.dim, i)

    def basis(self) -> List[List[Fraction]]:
        return [self.e(i) for i in range(self.dim)]

    def mul(self, u: Sequence, v: Sequence) -> list:
        return _mul(self.table, self.dim, u, v)

    def structure(self, i: int, j: int) -> Dict[int, Fraction]:
        return dict(self.table.get((i, j), ()))

    def as_dialgebra(self) -> "Dialgebra":
        return Dialgebra(self.names, _expand(self.table), _expand(self.table), name=self.name)

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and self.names == other.names and self.table == other.table

    def __repr__(self) -> str:
        return f"Algebra({self.name or ''!s}, dim={self.dim})"


class Dialgebra:
    """Space with two bilinear products ``vdash`` (|-) and ``dashv`` (-|)."""

    def __init__(self, names: Sequence[str], left: Mapping, right: Mapping, name: str | None = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        self.left = _compile(len(self.names), left)
        self.right = _compile(len(self.names), right)
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.names)

    def e(self, i: int) -> List[Fraction]:
        return _basis_vector(self.dim, i)

    def basis(self) -> List[List[Fraction]]:
        return [self.e(i) for i in range(self.dim)]

    def vdash(self, u: Sequence, v: Sequence) -> list:
        return _mul(self.left, self.dim, u, v)

    def dashv(self, u: Sequence, v: Sequence) -> list:
        return _mul(self.right, self.dim, u, v)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Dialgebra) and self.names == other.names
                and self.left == other.left and self.right == other.right)

    def __repr__(self) -> str:
        return f"Dialgebra({self.name or ''!s}, dim={self.dim})"


def leibniz_dialgebra(L: Algebra) -> Dialgebra:
    """Leibniz algebra as a Lie dialgebra: ``x |- y = [x,y]``, ``x -| y = -[y,x]``."""
    n = L.dim
    right = {(i, j): {k: -c for k, c in L.table.get((j, i), ())} for i in range(n) for j in range(n)}
    return Dialgebra(L.names, _expand(L.table), right, name=L.name)


def dijordan_dialgebra(J: Algebra) -> Dialgebra:
    """Di-Jordan algebra as a dialgebra: ``x |- y = xy``, ``x -| y = yx``."""
    n = J.dim
    right = {(i, j): dict(J.table.get((j, i), ())) for i in range(n) for j in range(n)}
    return Dialgebra(J.names, _expand(J.table), right, name=J.name)


# -- identity scanning -----------------------------------------------------

def _sub(u, v):
    return [a - b for a, b in zip(u, v)]


def _is_zero(v) -> bool:
    return all(not a for a in v)


def _scan(name: str, obj, arity: int, residual: Callable[..., Sequence]) -> CheckResult:
    basis = obj.basis()
    for idx in itertools.product(range(obj.dim), repeat=arity):
        r = residual(*(basis[i] for i in idx))
        if not _is_zero(r):
            return CheckResult(name, False, tuple(obj.names[i] for i in idx))
    return CheckResult(name, True)


def _all(name: str, results: Iterable[CheckResult]) -> CheckResult:
    for r in results:
        if not r:
            return CheckResult(name, False, r.witness, r.name)
    return CheckResult(name, True)


_GENERIC_COUNTER = itertools.count()


def generic_element(dim: int, tag: str | None = None) -> List[Poly]:
    """``sum_j t_j e_j`` with fresh scalar indeterminates ``t_j``."""
    tag = tag or f"g{next(_GENERIC_COUNTER)}"
    names = [f"{tag}_{j}" for j in range(dim)]
    declare(*names)
    return [Poly.var(s) for s in names]


def _scan_generic(name: str, obj, slots: str, residual: Callable[..., Sequence]) -> CheckResult:
    """Check an identity that is linear in the 'b' slots and arbitrary in 'g' slots.

    Generic slots receive one generic element each; basis slots range over the
    basis.  Over a field of characteristic zero this decides the identity.
    """
    generic = {i: generic_element(obj.dim, f"gen{i}") for i, s in enumerate(slots) if s == "g"}
    lin = [i for i, s in enumerate(slots) if s == "b"]
    basis = obj.basis()
    for idx in itertools.product(range(obj.dim), repeat=len(lin)):
        args = []
        it = iter(idx)
        for i in range(len(slots)):
            args.append(generic[i] if i in generic else basis[next(it)])
        r = residual(*args)
        bad = next((c for c in r if c), None)
        if bad is not None:
            wit = []
            it = iter(idx)
            for i in range(len(slots)):
                wit.append("generic" if i in generic else obj.names[next(it)])
            return CheckResult(name, False, tuple(wit), f"nonzero component {bad}")
    return CheckResult(name, True)


def _nested(table_out, table_in, shape: str, i: int, j: int, k: int) -> Dict[int, Fraction]:
    """``(e_i e_j) e_k`` (shape "L") or ``e_i (e_j e_k)`` (shape "R") on sparse tables."""
    out: Dict[int, Fraction] = {}
    if shape == "L":
        for c, a in table_in.get((i, j), ()):
            for r, b in table_out.get((c, k), ()):
                out[r] = out.get(r, 0) + a * b
    else:
        for c, a in table_in.get((j, k), ()):
            for r, b in table_out.get((i, c), ()):
                out[r] = out.get(r, 0) + a * b
    return {r: v for r, v in out.items() if v}


def _scan_nested(name: str, obj, lhs: Tuple, rhs: Tuple) -> CheckResult:
    """Sparse check of ``lhs = rhs`` where each side is ``(shape, outer, inner)``.

    ``outer`` and ``inner`` are compiled tables; used for the associativity-type
    identities, which dominate the cost on larger dialgebras.
    """
    return _scan_terms(name, obj, [(1, lhs[0], lhs[1], lhs[2], (0, 1, 2)),
                                   (-1, rhs[0], rhs[1], rhs[2], (0, 1, 2))])


def _scan_terms(name: str, obj, terms) -> CheckResult:
    """Sparse check of ``sum c * nested(shape, outer, inner)(x_p0, x_p1, x_p2) = 0`` on basis triples."""
    n = obj.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                idx = (i, j, k)
                acc: Dict[int, Fraction] = {}
                for c, shape, outer, inner, perm in terms:
                    for r, v in _nested(outer, inner, shape, idx[perm[0]], idx[perm[1]], idx[perm[2]]).items():
                        acc[r] = acc.get(r, 0) + c * v
                if any(acc.values()):
                    return CheckResult(name, False, (obj.names[i], obj.names[j], obj.names[k]))
    return CheckResult(name, True)


def check_zero_identities(D: Dialgebra) -> CheckResult:
    """``x -| (y |- z) = x -| (y -| z)`` and ``(x -| y) |- z = (x |- y) |- z``."""
    vd, dv = D.left, D.right
    return _all("zero-identities", [
        _scan_nested("x-|(y|-z) = x-|(y-|z)", D, ("R", dv, vd), ("R", dv, dv)),
        _scan_nested("(x-|y)|-z = (x|-y)|-z", D, ("L", vd, dv), ("L", vd, vd)),
    ])


def is_diassociative(D: Dialgebra) -> CheckResult:
    vd, dv = D.left, D.right
    return _all("diassociative", [
        check_zero_identities(D),
        _scan_nested("x|-(y|-z) = (x|-y)|-z", D, ("R", vd, vd), ("L", vd, vd)),
        _scan_nested("x-|(y-|z) = (x-|y)-|z", D, ("R", dv, dv), ("L", dv, dv)),
        _scan_nested("x|-(y-|z) = (x|-y)-|z", D, ("R", vd, dv), ("L", dv, vd)),
    ])


def is_associative(A: Algebra) -> CheckResult:
    return _scan_nested("associative", A, ("L", A.table, A.table), ("R", A.table, A.table))


def is_commutative(A: Algebra) -> CheckResult:
    return _scan("commutative", A, 2, lambda x, y: _sub(A.mul(x, y), A.mul(y, x)))


def is_anticommutative(A: Algebra) -> CheckResult:
    return _scan("anticommutative", A, 2, lambda x, y: [a + b for a, b in zip(A.mul(x, y), A.mul(y, x))])


def is_lie(A: Algebra) -> CheckResult:
    t = A.table
    jacobi = [(1, "L", t, t, (0, 1, 2)), (1, "L", t, t, (1, 2, 0)), (1, "L", t, t, (2, 0, 1))]
    return _all("lie", [is_anticommutative(A), _scan_terms("jacobi", A, jacobi)])


def is_leibniz(L: Algebra) -> CheckResult:
    """Left Leibniz identity ``[x,[y,z]] = [[x,y],z] + [y,[x,z]]``."""
    t = L.table
    return _scan_terms("leibniz", L, [(1, "R", t, t, (0, 1, 2)), (-1, "L", t, t, (0, 1, 2)),
                                      (-1, "R", t, t, (1, 0, 2))])


def _assoc(m, a, b, c):
    return _sub(m(m(a, b), c), m(a, m(b, c)))


def is_jordan(J: Algebra) -> CheckResult:
    """Commutativity and ``(x^2 y) x = x^2 (y x)`` on a generic ``x``."""
    m = J.mul

    def jordan(x, y):
        x2 = m(x, x)
        return _sub(m(m(x2, y), x), m(x2, m(y, x)))

    return _all("jordan", [is_commutative(J), _scan_generic("(x^2 y)x = x^2(yx)", J, "gb", jordan)])


def is_di_jordan(J: Algebra) -> CheckResult:
    """The three di-Jordan identities; the non-multilinear ones on generic elements."""
    m = J.mul

    def comm_left(x1, x2, x3):
        return m(_sub(m(x1, x2), m(x2, x1)), x3)

    def second(x1, x2, x3):
        x1sq = m(x1, x1)
        lhs = _assoc(m, x1sq, x2, x3)
        rhs = _assoc(m, x1, x2, m(x1, x3))
        return [a - 2 * b for a, b in zip(lhs, rhs)]

    def third(x1, x2):
        x1sq = m(x1, x1)
        return _sub(m(x1, m(x1sq, x2)), m(x1sq, m(x1, x2)))

    return _all("di-jordan", [
        _scan("[x1,x2]x3 = 0", J, 3, comm_left),
        _scan_generic("(x1^2,x2,x3) = 2(x1,x2,x1x3)", J, "gbb", second),
        _scan_generic("x1(x1^2 x2) = x1^2(x1 x2)", J, "gb", third),
    ])


# -- the D_0 ideal, quotient and split null extension ------------------------

def _span_products(D: Dialgebra) -> List[List[Fraction]]:
    basis = D.basis()
    return [_sub(D.vdash(x, y), D.dashv(x, y)) for x in basis for y in basis]


def _require_zero_identities(D: Dialgebra) -> None:
    chk = check_zero_identities(D)
    if not chk:
        raise ValueError(f"0-identities fail on {chk.witness}: {chk.detail}")


def d_zero_ideal(D: Dialgebra) -> Subspace:
    """``D_0 = span{a |- b - a -| b}``; asserts it is a two-sided ideal for both products."""
    _require_zero_identities(D)
    D0 = Subspace(D.dim, _span_products(D))
    basis = D.basis()
    for u in D0.basis():
        for x in basis:
            for r in (D.vdash(u, x), D.dashv(u, x), D.vdash(x, u), D.dashv(x, u)):
                if not D0.contains(r):
                    raise AssertionError("D_0 is not an ideal although the 0-identities hold")
    return D0


@dataclass
class Quotient:
    algebra: Algebra
    projection: QMatrix  # column j = image of the j-th basis vector of D
    representatives: Tuple[int, ...]  # basis indices of D lifting the quotient basis
    ideal: Subspace

    def project(self, v: Sequence) -> List[Fraction]:
        r = self.ideal.reduce(v)
        return [r.get(j, Fraction(0)) for j in self.representatives]


def bar_quotient(D: Dialgebra) -> Quotient:
    """The ordinary algebra ``D / D_0`` with ``(a + D_0)(b + D_0) = a |- b + D_0``."""
    D0 = d_zero_ideal(D)
    pivots = set(D0.pivots)
    reps = tuple(j for j in range(D.dim) if j not in pivots)
    q = Quotient(None, [], reps, D0)  # type: ignore[arg-type]
    table = {}
    for a, i in enumerate(reps):
        for b, j in enumerate(reps):
            left = q.project(D.vdash(D.e(i), D.e(j)))
            right = q.project(D.dashv(D.e(i), D.e(j)))
            if left != right:
                raise AssertionError("quotient product is not well defined")
            table[(a, b)] = left
    # representative independence: perturbing by D_0 must not change the class
    for d in D0.basis():
        for j in range(D.dim):
            for r in (D.vdash(d, D.e(j)), D.vdash(D.e(j), d), D.dashv(d, D.e(j)), D.dashv(D.e(j), d)):
                if any(q.project(r)):
                    raise AssertionError("quotient product depends on representatives")
    names = [f"bar_{D.names[i]}" for i in reps]
    q.algebra = Algebra(names, table, name=f"bar({D.name})" if D.name else None)
    q.projection = [[q.project(D.e(j))[a] for j in range(D.dim)] for a in range(len(reps))]
    return q


def hat_extension(D: Dialgebra) -> Algebra:
    """Split null extension ``bar D (+) D`` with ``D D = 0``.

    ``(x~ + a)(y~ + b) = x~ y~ + x |- b + a -| y``.
    """
    q = bar_quotient(D)
    m = q.algebra.dim
    n = D.dim
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (a, b), entries in q.algebra.table.items():
        table[(a, b)] = dict(entries)
    for a, i in enumerate(q.representatives):
        for j in range(n):
            table[(a, m + j)] = {m + k: c for k, c in enumerate(D.vdash(D.e(i), D.e(j))) if c}
            table[(m + j, a)] = {m + k: c for k, c in enumerate(D.dashv(D.e(j), D.e(i))) if c}
    names = list(q.algebra.names) + list(D.names)
    return Algebra(names, table, name=f"hat({D.name})" if D.name else None)


def is_di_variety(D: Dialgebra, identities) -> CheckResult:
    """0-identities hold and the split null extension satisfies every identity."""
    from .identities import holds_in

    for f in identities:
        if not f.is_polylinear():
            raise ValueError(f"identity {f} is not polylinear; linearize it first")
    z = check_zero_identities(D)
    if not z:
        return CheckResult("di-variety", False, z.witness, "0-identities fail")
    H = hat_extension(D)
    for f in identities:
        r = holds_in(f, H)
        if not r:
            return CheckResult("di-variety", False, r.witness, f"hat(D) fails {f}")
    return CheckResult("di-variety", True)


# -- derived products ---------------------------------------------------------

def minus_product(D: Dialgebra) -> Algebra:
    """``[a, b] = a |- b - b -| a``."""
    return Algebra.from_function(D.names, lambda i, j: _sub(D.vdash(D.e(i), D.e(j)), D.dashv(D.e(j), D.e(i))),
                                 name=f"minus({D.name})" if D.name else None)


def plus_product(D: Dialgebra) -> Algebra:
    """``a o b = a |- b + b -| a``."""
    return Algebra.from_function(
        D.names, lambda i, j: [x + y for x, y in zip(D.vdash(D.e(i), D.e(j)), D.dashv(D.e(j), D.e(i)))],
        name=f"plus({D.name})" if D.name else None)


def jordan_plus(A: Algebra) -> Algebra:
    """Symmetrized product ``a o b = (ab + ba) / 2``."""
    return Algebra.from_function(
        A.names, lambda i, j: [(x + y) / 2 for x, y in zip(A.mul(A.e(i), A.e(j)), A.mul(A.e(j), A.e(i)))])


def commutator_algebra(A: Algebra) -> Algebra:
    return Algebra.from_function(A.names, lambda i, j: _sub(A.mul(A.e(i), A.e(j)), A.mul(A.e(j), A.e(i))))


def _operations(obj, side: str | None = None):
    if isinstance(obj, Dialgebra):
        if side in (None, "both"):
            return [obj.vdash, obj.dashv]
        return [{"vdash": obj.vdash, "dashv": obj.dashv}[side]]
    return [obj.mul]


def left_multiplication(obj, x: Sequence, side: str = "product") -> QMatrix:
    """Matrix of ``y -> x y`` (or ``x |- y`` / ``x -| y``); column j is the image of ``e_j``."""
    if isinstance(obj, Dialgebra):
        op = {"vdash": obj.vdash, "dashv": obj.dashv}[side]
    else:
        op = obj.mul
    cols = [op(x, obj.e(j)) for j in range(obj.dim)]
    return [[cols[j][i] for j in range(obj.dim)] for i in range(obj.dim)]


# -- series -------------------------------------------------------------------

SERIES_KINDS = ("lower_central", "derived", "penico")
_KIND_ALIASES = {"lcs": "lower_central", "lower-central": "lower_central"}


@dataclass
class SeriesReport:
    kind: str
    terms: List[Subspace] = field(default_factory=list)
    zero_index: Optional[int] = None  # k with X_k = 0 (X_1 is the whole algebra)
    stabilization_index: int = 1

    @property
    def verdict(self) -> bool:
        return self.zero_index is not None

    @property
    def dims(self) -> List[int]:
        return [t.dim for t in self.terms]


def series(obj, kind: str = "lower_central") -> SeriesReport:
    """Lower central, derived or Penico series, iterated until zero or stable."""
    kind = _KIND_ALIASES.get(kind, kind)
    if kind not in SERIES_KINDS:
        raise ValueError(f"unknown series kind {kind!r}")
    if kind == "penico" and isinstance(obj, Dialgebra):
        raise ValueError("the Penico series is defined for single-product algebras")
    ops = _operations(obj)
    n = obj.dim
    basis = obj.basis()
    current = Subspace.full(n)
    report = SeriesReport(kind, [current])
    if n == 0:
        report.zero_index = 1
        return report
    for step in range(n + 1):
        gens = current.basis()
        if kind == "lower_central":
            new = [op(u, e) for op in ops for u in gens for e in basis]
            new += [op(e, u) for op in ops for u in gens for e in basis]
        elif kind == "derived":
            new = [op(u, w) for op in ops for u in gens for w in gens]
        else:
            sq = Subspace(n, [obj.mul(u, w) for u in gens for w in gens])
            new = sq.basis() + [obj.mul(s, e) for s in sq.basis() for e in basis]
        nxt = Subspace(n, new)
        if nxt == current:
            report.stabilization_index = len(report.terms)
            return report
        report.terms.append(nxt)
        current = nxt
        if nxt.dim == 0:
            report.zero_index = len(report.terms)
            report.stabilization_index = len(report.terms)
            return report
    raise AssertionError("series failed to stabilize")  # pragma: no cover


# -- Engel ---------------------------------------------------------------------

def _poly_matmul(a, b):
    n = len(a)
    m = len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = Poly.const(0)
            for k in range(len(b)):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def generic_operator_nilpotent(mats: Sequence[QMatrix]) -> bool:
    """Is ``sum_i t_i M_i`` nilpotent for indeterminate ``t``?

    Equivalent to nilpotency of every member of the span, which basis checks
    alone cannot certify.
    """
    if not mats:
        return True
    n = len(mats[0])
    if n == 0:
        return True
    tvec = generic_element(len(mats), "gnil")
    gen = [[sum((tvec[k] * mats[k][i][j] for k in range(len(mats)) if mats[k][i][j]), Poly.const(0))
            for j in range(n)] for i in range(n)]
    p = gen
    for _ in range(n - 1):
        p = _poly_matmul(p, gen)
    return all(not x for row in p for x in row)


@dataclass
class EngelReport:
    basis_left_nilpotent: bool
    left_nilpotent: bool
    nilpotent: bool
    series: SeriesReport

    @property
    def consistent(self) -> bool:
        return not self.left_nilpotent or self.nilpotent


def engel_verdict(L: Algebra) -> EngelReport:
    """Report nilpotency of every ``[x, .]`` and of ``L``; assert the Engel implication."""
    chk = is_leibniz(L)
    if not chk:
        raise ValueError(f"not a Leibniz algebra: fails at {chk.witness}")
    mats = [left_multiplication(L, L.e(i)) for i in range(L.dim)]
    basis_nil = all(is_nilpotent(m) for m in mats)
    left_nil = basis_nil and generic_operator_nilpotent(mats)
    rep = series(L, "lower_central")
    out = EngelReport(basis_nil, left_nil, rep.verdict, rep)
    if not out.consistent:
        raise AssertionError("Engel implication violated: nilpotent left multiplications, non-nilpotent algebra")
    return out
