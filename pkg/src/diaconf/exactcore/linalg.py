"""Exact linear algebra over the rationals.

Dense matrices are plain lists of rows of :class:`~fractions.Fraction`.
Subspaces keep a canonical sparse RREF basis, so two subspaces are equal iff
their bases are equal.  Pivots are always taken leftmost-first.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

QMatrix = List[List[Fraction]]
SparseVec = Dict[int, Fraction]
VecLike = Union[Sequence, Mapping[int, Fraction]]


def qmatrix(rows: Iterable[Iterable]) -> QMatrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> QMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> QMatrix:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(a: QMatrix, b: QMatrix) -> QMatrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def matvec(a: QMatrix, v: Sequence) -> List[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def transpose(a: QMatrix) -> QMatrix:
    return [list(col) for col in zip(*a)] if a else []


def matsub(a: QMatrix, b: QMatrix) -> QMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def commutator(a: QMatrix, b: QMatrix) -> QMatrix:
    return matsub(matmul(a, b), matmul(b, a))


def is_zero_matrix(a: QMatrix) -> bool:
    return all(not x for row in a for x in row)


def is_nilpotent(a: QMatrix) -> bool:
    """``a**n == 0`` where ``n`` is the size of the square matrix."""
    n = len(a)
    p = a
    for _ in range(max(n - 1, 0)):
        if is_zero_matrix(p):
            return True
        p = matmul(p, a)
    return is_zero_matrix(p)


def rref_pivots(m: QMatrix) -> Tuple[QMatrix, List[int]]:
    """Reduced row-echelon form and pivot columns; the input is not modified."""
    a = [list(map(Fraction, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        pr = a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: QMatrix) -> Tuple[QMatrix, int]:
    """``rref([[1, 2], [2, 4]]) == ([[1, 2], [0, 0]], 1)``."""
    a, piv = rref_pivots(m)
    return a, len(piv)


def rank(m: QMatrix) -> int:
    return rref(m)[1]


def nullspace(m: QMatrix, cols: int | None = None) -> "Subspace":
    """Right kernel ``{v : m v = 0}`` as a subspace of ``Q^cols``."""
    if cols is None:
        cols = len(m[0]) if m else 0
    if not m:
        return Subspace.full(cols)
    a, piv = rref_pivots(m)
    pivset = set(piv)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = {free: Fraction(1)}
        for i, pc in enumerate(piv):
            if a[i][free]:
                v[pc] = -a[i][free]
        basis.append(v)
    return Subspace(cols, basis)


def solve(m: QMatrix, b: Sequence) -> Tuple[List[Fraction] | None, List[Fraction] | None]:
    """Solve ``m x = b``.

    Returns ``(x, None)`` with one particular solution (free variables zero),
    or ``(None, y)`` where ``y`` certifies inconsistency: ``y m = 0`` and
    ``y . b != 0``.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [list(map(Fraction, row)) + [Fraction(b[i])] + [Fraction(int(i == j)) for j in range(rows)]
           for i, row in enumerate(m)]
    red, piv = rref_pivots(aug)
    for i, pc in enumerate(piv):
        if pc == cols:
            y = red[i][cols + 1:]
            return None, y
        if pc > cols:
            break
    x = [Fraction(0)] * cols
    for i, pc in enumerate(piv):
        if pc < cols:
            x[pc] = red[i][cols]
    return x, None


# -- sparse incremental echelon form -------------------------------------

def _to_sparse(v: VecLike) -> SparseVec:
    if isinstance(v, Mapping):
        return {int(k): Fraction(x) for k, x in v.items() if x}
    return {i: Fraction(x) for i, x in enumerate(v) if x}


class EchelonBasis:
    """Incrementally maintained semi-echelon basis of sparse vectors.

    Each stored row has its pivot as its smallest column, normalized to 1.
    """

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: Dict[int, SparseVec] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: VecLike) -> SparseVec:
        v = _to_sparse(v)
        if not self.rows:
            return v
        heap = list(v)
        heapq.heapify(heap)
        done = set()
        rows = self.rows
        while heap:
            c = heapq.heappop(heap)
            if c in done:
                continue
            done.add(c)
            a = v.get(c)
            if not a:
                continue
            row = rows.get(c)
            if row is None:
                continue
            for k, r in row.items():
                nv = v.get(k, 0) - a * r
                if nv:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, v: VecLike) -> bool:
        """Insert ``v``; return True iff it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        self.rows[p] = {k: x * inv for k, x in r.items()}
        return True

    def contains(self, v: VecLike) -> bool:
        return not self.reduce(v)

    def to_subspace(self) -> "Subspace":
        return Subspace._from_echelon(self.ambient, self.rows)


class Subspace:
    """Subspace of ``Q^ambient`` with a canonical RREF basis."""

    __slots__ = ("ambient", "_rows", "_pivots")

    def __init__(self, ambient: int, generators: Iterable[VecLike] = ()):
        ech = EchelonBasis(ambient)
        for g in generators:
            ech.add(g)
        self.ambient = ambient
        self._set_from_echelon(ech.rows)

    @classmethod
    def _from_echelon(cls, ambient: int, rows: Dict[int, SparseVec]) -> "Subspace":
        s = object.__new__(cls)
        s.ambient = ambient
        s._set_from_echelon(rows)
        return s

    def _set_from_echelon(self, rows: Dict[int, SparseVec]) -> None:
        pivots = sorted(rows)
        full: Dict[int, SparseVec] = {}
        # back-substitute from the last pivot so every row is fully reduced
        for p in reversed(pivots):
            row = dict(rows[p])
            for k in sorted(k for k in row if k != p and k in full):
                a = row.get(k)
                if not a:
                    continue
                for kk, x in full[k].items():
                    nv = row.get(kk, 0) - a * x
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            full[p] = row
        self._pivots = tuple(pivots)
        self._rows = tuple(full[p] for p in pivots)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, [{i: 1} for i in range(ambient)])

    # -- queries ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return self._pivots

    def basis(self) -> QMatrix:
        out = []
        for row in self._rows:
            v = [Fraction(0)] * self.ambient
            for k, x in row.items():
                v[k] = x
            out.append(v)
        return out

    def sparse_basis(self) -> Tuple[SparseVec, ...]:
        return self._rows

    def reduce(self, v: VecLike) -> SparseVec:
        """Residual of ``v`` modulo the subspace (zero on pivot columns)."""
        v = _to_sparse(v)
        for p, row in zip(self._pivots, self._rows):
            a = v.get(p)
            if a:
                for k, x in row.items():
                    nv = v.get(k, 0) - a * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def contains(self, v: VecLike) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def coordinates(self, v: VecLike) -> List[Fraction]:
        """Coordinates of a member ``v`` with respect to :meth:`basis`."""
        sv = _to_sparse(v)
        if self.reduce(sv):
            raise ValueError("vector is not in the subspace")
        return [sv.get(p, Fraction(0)) for p in self._pivots]

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self._rows == other._rows

    def __hash__(self):
        return hash((self.ambient, self._pivots, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient, list(self._rows) + list(other._rows))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.ambient)
        # a.U = b.V  <=>  (a, -b) in the left kernel of [U; V]
        stacked = self.basis() + [[-x for x in row] for row in other.basis()]
        kernel = nullspace(transpose(stacked), cols=len(stacked))
        gens = []
        u = self.basis()
        for coeffs in kernel.basis():
            vec = [Fraction(0)] * self.ambient
            for a, row in zip(coeffs[: self.dim], u):
                if a:
                    for j, x in enumerate(row):
                        if x:
                            vec[j] += a * x
            gens.append(vec)
        return Subspace(self.ambient, gens)

    def _check(self, other: "Subspace") -> None:
        if self.ambient != other.ambient:
            raise ValueError("subspaces live in different ambient spaces")

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


BilinearMap = Callable[[List[Fraction], List[Fraction]], Sequence]


def subspace_closure(
    generators: Iterable[VecLike],
    products: Sequence[BilinearMap],
    ambient: int,
    ideal_in: Sequence[VecLike] | None = None,
) -> Subspace:
    """Smallest subspace containing ``generators`` and closed under ``products``.

    Without ``ideal_in`` the closure is a subalgebra: ``f(S, S) <= S``.  With
    ``ideal_in`` (a spanning set of the ambient algebra) it is the ideal
    generated: ``f(S, A) + f(A, S) <= S`` for every map ``f``.
    """
    ech = EchelonBasis(ambient)
    members: List[List[Fraction]] = []
    queue: List[List[Fraction]] = []

    def dense(v):
        sv = _to_sparse(v)
        out = [Fraction(0)] * ambient
        for k, x in sv.items():
            out[k] = x
        return out

    for g in generators:
        g = dense(g)
        if ech.add(g):
            queue.append(g)
    others = [dense(a) for a in ideal_in] if ideal_in is not None else None
    while queue:
        v = queue.pop(0)
        members.append(v)
        partners = others if others is not None else members
        for f in products:
            for w in partners:
                for r in (f(v, w), f(w, v)):
                    r = dense(r)
                    if ech.add(r):
                        queue.append(r)
    return ech.to_subspace()
