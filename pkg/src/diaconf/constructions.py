"""Embeddings and representations realized as checked linear maps.

Every construction returns a :class:`LinearMapRecord` holding the images of a
basis together with the checks that certify the homomorphism property and
injectivity.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .conformal import (
    MatrixCurrent,
    MinusConformal,
    current,
    zero_dashv,
    zero_vdash,
)
from .dialgebra import (
    Algebra,
    CheckResult,
    Dialgebra,
    bar_quotient,
    check_zero_identities,
    dijordan_dialgebra,
    hat_extension,
    is_di_jordan,
    is_jordan,
    is_leibniz,
    is_lie,
    leibniz_dialgebra,
    left_multiplication,
)
from .exactcore import (
    Poly,
    QMatrix,
    Subspace,
    commutator,
    is_zero_matrix,
    matvec,
    nullspace,
    rank,
    solve,
    subspace_closure,
    zeros,
)
from .exactcore.poly import T


@dataclass
class LinearMapRecord:
    source: str
    target: str
    images: Dict[str, object] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    rank: int = 0
    source_dim: int = 0

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def ok(self) -> bool:
        return self.injective and all(self.checks)

    def add(self, name: str, ok: bool, witness=None, detail: str = "") -> bool:
        self.checks.append(CheckResult(name, bool(ok), witness, detail))
        return bool(ok)


def _flatten(m: QMatrix) -> List[Fraction]:
    return [x for row in m for x in row]


def _reshape(v: Sequence, n: int) -> QMatrix:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def _lincomb(coeffs: Sequence, mats: Sequence[QMatrix], n: int) -> QMatrix:
    out = zeros(n, n)
    for c, m in zip(coeffs, mats):
        if c:
            for i in range(n):
                for j in range(n):
                    if m[i][j]:
                        out[i][j] += c * m[i][j]
    return out


# -- the current embedding -------------------------------------------------------

def current_embedding(D: Dialgebra) -> Tuple[LinearMapRecord, object]:
    """``a -> 1 (a + D_0) + T a`` into ``(Cur hat D)^(0)``; returns the record and ``Cur hat D``."""
    z = check_zero_identities(D)
    if not z:
        raise ValueError(f"0-identities fail on {z.witness}")
    q = bar_quotient(D)
    H = hat_extension(D)
    C = current(H)

    def iota(v: Sequence) -> tuple:
        bar = q.project(v)
        return tuple([Poly.const(c) for c in bar] + [T * c for c in v])

    rec = LinearMapRecord(D.name or "D", f"(Cur {H.name or 'hat D'})^(0)", source_dim=D.dim)
    basis = D.basis()
    images = [iota(b) for b in basis]
    for i, name in enumerate(D.names):
        rec.images[name] = {"one": [str(x) for x in q.project(basis[i])], "T": [str(x) for x in basis[i]]}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            pair = (D.names[i], D.names[j])
            if zero_vdash(C, images[i], images[j]) != iota(D.vdash(a, b)):
                rec.add("iota(a|-b) = iota(a)|-iota(b)", False, pair)
            if zero_dashv(C, images[i], images[j]) != iota(D.dashv(a, b)):
                rec.add("iota(a-|b) = iota(a)-|iota(b)", False, pair)
    if all(rec.checks):
        rec.add("homomorphism", True, detail=f"{D.dim ** 2} basis pairs, both products")
    # T-coordinates alone already recover a
    rec.rank = rank([[c for c in b] for b in basis]) if basis else 0
    rec.add("injective", rec.rank == D.dim, detail=f"rank {rec.rank}")
    return rec, C


# -- the conformal representation of a Leibniz algebra -------------------------------

@dataclass
class BarModule:
    """Action matrices ``act[i]`` of ``bar e_i`` on ``V`` (one per basis vector of L)."""

    dim: int
    act: List[QMatrix]
    name: str = "V"

    def of(self, x: Sequence) -> QMatrix:
        return _lincomb(x, self.act, self.dim)


def trivial_module(L: Algebra) -> BarModule:
    return BarModule(1, [zeros(1, 1) for _ in range(L.dim)], "trivial")


def adjoint_bar_module(L: Algebra) -> BarModule:
    """``bar L`` acting on itself by ``x . (y + L_0) = [x, y] + L_0``."""
    q = bar_quotient(leibniz_dialgebra(L))
    reps = q.representatives
    act = []
    for i in range(L.dim):
        cols = [q.project(L.mul(L.e(i), L.e(r))) for r in reps]
        act.append([[cols[c][r] for c in range(len(reps))] for r in range(len(reps))])
    return BarModule(len(reps), act, "adjoint-over-bar")


def check_bar_module(L: Algebra, V: BarModule) -> CheckResult:
    """The action factors through ``bar L`` and respects brackets."""
    if len(V.act) != L.dim:
        return CheckResult("bar-module", False, detail=f"{len(V.act)} matrices for dimension {L.dim}")
    for m in V.act:
        if len(m) != V.dim or any(len(r) != V.dim for r in m):
            return CheckResult("bar-module", False, detail="action matrix has the wrong size")
    for i in range(L.dim):
        # [x, x] spans L_0, which must act trivially
        for j in range(L.dim):
            sym = [a + b for a, b in zip(L.mul(L.e(i), L.e(j)), L.mul(L.e(j), L.e(i)))]
            if not is_zero_matrix(V.of(sym)):
                return CheckResult("bar-module", False, (L.names[i], L.names[j]), "L_0 acts nontrivially")
            lhs = commutator(V.act[i], V.act[j])
            rhs = V.of(L.mul(L.e(i), L.e(j)))
            if lhs != rhs:
                return CheckResult("bar-module", False, (L.names[i], L.names[j]), "bracket not preserved")
    return CheckResult("bar-module", True)


@dataclass
class Representation:
    L: Algebra
    V: BarModule
    rho0: List[QMatrix]
    rho1: List[QMatrix]
    record: LinearMapRecord

    @property
    def width(self) -> int:
        return self.V.dim * (1 + self.L.dim)


def _rho_matrices(L: Algebra, V: BarModule) -> Tuple[List[QMatrix], List[QMatrix]]:
    m, n = V.dim, L.dim
    N = m * (n + 1)
    idx = lambda a, v: m + a * m + v  # a (x) v
    rho0, rho1 = [], []
    for i in range(n):
        r0, r1 = zeros(N, N), zeros(N, N)
        X = V.act[i]
        for v in range(m):
            for w in range(m):
                if X[w][v]:
                    r0[w][v] += X[w][v]  # v -> bar x v
            r1[idx(i, v)][v] = Fraction(1)  # v -> x (x) v
        for a in range(n):
            xa = L.mul(L.e(i), L.e(a))
            for v in range(m):
                for w in range(m):
                    if X[w][v]:
                        r0[idx(a, w)][idx(a, v)] += X[w][v]  # a (x) bar x v
                for b, c in enumerate(xa):
                    if c:
                        r0[idx(b, v)][idx(a, v)] += c  # [x, a] (x) v
        rho0.append(r0)
        rho1.append(r1)
    return rho0, rho1


def leibniz_conformal_rep(L: Algebra, V: BarModule | None = None) -> Representation:
    """``rho(x) = 1 rho_0(x) + T rho_1(x)`` on ``W = V + L (x) V``."""
    chk = is_leibniz(L)
    if not chk:
        raise ValueError(f"not a Leibniz algebra: fails at {chk.witness}")
    V = V or trivial_module(L)
    mod = check_bar_module(L, V)
    if not mod:
        raise ValueError(f"V is not a bar-L module: {mod.detail} at {mod.witness}")
    rho0, rho1 = _rho_matrices(L, V)
    n = L.dim
    rec = LinearMapRecord(L.name or "L", f"(Cur gl({V.dim * (n + 1)}))^(0)", source_dim=n)
    for i in range(n):
        rec.images[L.names[i]] = {"rho0": rho0[i], "rho1": rho1[i]}
    ok0 = ok1 = True
    for i in range(n):
        for j in range(n):
            xy = L.mul(L.e(i), L.e(j))
            if commutator(rho0[i], rho0[j]) != _lincomb(xy, rho0, len(rho0[0])):
                ok0 = rec.add("[rho0(x),rho0(y)] = rho0([x,y])", False, (L.names[i], L.names[j]))
            if commutator(rho0[i], rho1[j]) != _lincomb(xy, rho1, len(rho0[0])):
                ok1 = rec.add("[rho0(x),rho1(y)] = rho1([x,y])", False, (L.names[i], L.names[j]))
    if ok0:
        rec.add("[rho0(x),rho0(y)] = rho0([x,y])", True, detail=f"{n * n} pairs")
    if ok1:
        rec.add("[rho0(x),rho1(y)] = rho1([x,y])", True, detail=f"{n * n} pairs")
    rec.rank = rank([_flatten(r) for r in rho1]) if n else 0
    rec.add("injective (rank rho1)", rec.rank == n, detail=f"rank {rec.rank}")
    return Representation(L, V, rho0, rho1, rec)


def engel_matrices_nilpotent(rep: Representation) -> bool:
    """All ``rho_0(x)`` nilpotent (checked on a generic combination)."""
    from .dialgebra import generic_operator_nilpotent

    return generic_operator_nilpotent(rep.rho0)


# -- the diassociative envelope ----------------------------------------------------

def matrix_pair_dialgebra(N: int, name: str | None = None) -> Dialgebra:
    """Pairs ``(a, b)`` of ``N x N`` matrices standing for ``1 a + T b``.

    ``(a, b) |- (c, d) = (ac, ad)`` and ``(a, b) -| (c, d) = (ac, bc)``.
    """
    size = N * N
    names = [f"E{i + 1}{j + 1}" for i in range(N) for j in range(N)]
    names += [f"T*E{i + 1}{j + 1}" for i in range(N) for j in range(N)]
    unit = lambda part, i, j: part * size + i * N + j
    left, right = {}, {}
    for p in (0, 1):
        for i in range(N):
            for j in range(N):
                for p2 in (0, 1):
                    for k in range(N):
                        for l in range(N):
                            if j != k:
                                continue
                            x, y = unit(p, i, j), unit(p2, k, l)
                            # E_ij E_jl = E_il; vdash keeps the T-part of the right factor,
                            # dashv that of the left factor
                            if p == 0:
                                left[(x, y)] = {unit(p2, i, l): 1}
                            if p2 == 0:
                                right[(x, y)] = {unit(p, i, l): 1}
    return Dialgebra(names, left, right, name=name or f"Mat{N}^(0)<=1")


@dataclass
class AdoEnvelope:
    dialgebra: Dialgebra
    record: LinearMapRecord
    image: List[List[Fraction]]


def ado_envelope(L: Algebra) -> AdoEnvelope:
    """Embed ``L`` into the ``2(n+1)^2``-dimensional degree-<=1 part of ``(Cur End(k + L))^(0)``."""
    rep = leibniz_conformal_rep(L, trivial_module(L))
    N = rep.width
    D = matrix_pair_dialgebra(N, name=f"ado({L.name or 'L'})")
    image = [_flatten(rep.rho0[i]) + _flatten(rep.rho1[i]) for i in range(L.dim)]
    rec = rep.record
    rec.target = D.name
    rec.add("dim D = 2(n+1)^2", D.dim == 2 * (L.dim + 1) ** 2, detail=f"dim {D.dim}")
    bracket = lambda u, v: [a - b for a, b in zip(D.vdash(u, v), D.dashv(v, u))]
    for i in range(L.dim):
        for j in range(L.dim):
            want = [Fraction(0)] * D.dim
            for k, c in enumerate(L.mul(L.e(i), L.e(j))):
                if c:
                    want = [w + c * x for w, x in zip(want, image[k])]
            if bracket(image[i], image[j]) != want:
                rec.add("[x,y]_D(-) = [x,y]_L", False, (L.names[i], L.names[j]))
                break
    if all(rec.checks):
        rec.add("[x,y]_D(-) = [x,y]_L", True)
    return AdoEnvelope(D, rec, image)


# -- Tits-Kantor-Koecher ---------------------------------------------------------

@dataclass
class TKKAlgebra:
    algebra: Algebra
    jordan: Algebra
    s_basis: List[QMatrix]
    theta: List[List[Fraction]]  # column r = coordinates of theta(s_r)

    @property
    def n(self) -> int:
        return self.jordan.dim

    @property
    def plus_indices(self) -> range:
        return range(0, self.n)

    @property
    def s_indices(self) -> range:
        return range(self.n, self.n + len(self.s_basis))

    @property
    def minus_indices(self) -> range:
        k = self.n + len(self.s_basis)
        return range(k, k + self.n)

    def plus(self, v: Sequence) -> List[Fraction]:
        return list(v) + [Fraction(0)] * (len(self.s_basis) + self.n)

    def minus(self, v: Sequence) -> List[Fraction]:
        return [Fraction(0)] * (self.n + len(self.s_basis)) + list(v)

    def s_element(self, m: QMatrix) -> List[Fraction]:
        return [Fraction(0)] * self.n + self._s_coords(m) + [Fraction(0)] * self.n

    def _s_coords(self, m: QMatrix) -> List[Fraction]:
        x, cert = solve([[s[i][j] for s in self.s_basis] for i in range(self.n) for j in range(self.n)],
                        _flatten(m))
        if cert is not None:
            raise ValueError("operator is not in S")
        return x


def _u_operator(J: Algebra, a: Sequence, b: Sequence) -> QMatrix:
    L = lambda v: left_multiplication(J, v)
    La, Lb = L(a), L(b)
    ab = L(J.mul(a, b))
    c = commutator(La, Lb)
    return [[ab[i][j] + c[i][j] for j in range(J.dim)] for i in range(J.dim)]


def tkk(J: Algebra, check: bool = True) -> TKKAlgebra:
    """``T(J) = J+ + S + J-`` with ``S = span{U_ab = L_ab + [L_a, L_b]}``.

    ``[a-, b+] = U_ab``, ``[U, a-] = (U a)-``, ``[U, a+] = -(theta(U) a)+`` with
    ``theta(U_ab) = U_ba``, and ``[U, U']`` the commutator.  ``U_ab c`` is
    symmetric in ``a`` and ``c``, which is why ``S`` acts on ``J-`` directly and
    on ``J+`` through ``theta``.  The result is verified to be a Lie algebra.
    """
    if check:
        chk = is_jordan(J)
        if not chk:
            raise ValueError(f"not a Jordan algebra: fails at {chk.witness}")
    n = J.dim
    pairs = [(i, j) for i in range(n) for j in range(n)]
    U = {p: _u_operator(J, J.e(p[0]), J.e(p[1])) for p in pairs}
    S = Subspace(n * n, [_flatten(U[p]) for p in pairs])
    s_basis = [_reshape(row, n) for row in S.basis()]
    k = len(s_basis)
    # theta must be well defined: relations among the U_ab hold among the U_ba
    cols = [_flatten(U[p]) for p in pairs]
    swapped = [_flatten(U[(j, i)]) for (i, j) in pairs]
    M = [[c[r] for c in cols] for r in range(n * n)] if n else []
    Msw = [[c[r] for c in swapped] for r in range(n * n)] if n else []
    for v in (nullspace(M, cols=len(pairs)).basis() if n else []):
        if any(matvec(Msw, v)):
            raise ValueError("theta: U_ab -> U_ba is not well defined on S")
    theta_cols = []
    for s in s_basis:
        x, cert = solve(M, _flatten(s))
        img = _reshape(matvec(Msw, x), n)
        theta_cols.append(S.coordinates(_flatten(img)))
    theta = [[theta_cols[c][r] for c in range(k)] for r in range(k)]

    def s_coords(m: QMatrix) -> List[Fraction]:
        v = _flatten(m)
        if not S.contains(v):
            raise ValueError("commutator of S-elements leaves S")
        return S.coordinates(v)

    P = lambda i: i
    Sx = lambda r: n + r
    Mi = lambda i: n + k + i
    names = [f"{x}+" for x in J.names] + [f"U{r + 1}" for r in range(k)] + [f"{x}-" for x in J.names]
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}

    def put(i, j, vec: Dict[int, Fraction]):
        vec = {c: v for c, v in vec.items() if v}
        if vec:
            table[(i, j)] = vec
            table[(j, i)] = {c: -v for c, v in vec.items()}

    for a in range(n):
        for b in range(n):
            put(Mi(a), P(b), {Sx(r): c for r, c in enumerate(s_coords(U[(a, b)]))})
    for r, s in enumerate(s_basis):
        th = _lincomb([theta[x][r] for x in range(k)], s_basis, n)
        for a in range(n):
            put(Sx(r), Mi(a), {Mi(i): c for i, c in enumerate(matvec(s, J.e(a)))})
            put(Sx(r), P(a), {P(i): -c for i, c in enumerate(matvec(th, J.e(a)))})
        for r2 in range(r + 1, k):
            put(Sx(r), Sx(r2), {Sx(x): c for x, c in enumerate(s_coords(commutator(s, s_basis[r2])))})
    A = Algebra(names, table, name=f"TKK({J.name or 'J'})")
    lie = is_lie(A)
    if not lie:
        raise ValueError(f"TKK bracket fails the Lie axioms at {lie.witness} ({lie.detail})")
    return TKKAlgebra(A, J, s_basis, theta)


@dataclass
class LeibnizTKK:
    algebra: Algebra
    record: LinearMapRecord
    hat: Algebra
    tkk: TKKAlgebra
    subspace: Subspace


def leibniz_tkk(J: Algebra) -> LeibnizTKK:
    """The Leibniz algebra generated by ``1 (a + J_0)^+- + T a^+-`` in ``(Cur T(hat J))^(0)``."""
    chk = is_di_jordan(J)
    if not chk:
        raise ValueError(f"not a di-Jordan algebra: fails at {chk.witness}")
    D = dijordan_dialgebra(J)
    q = bar_quotient(D)
    H = hat_extension(D)
    Tk = tkk(H)
    G = Tk.algebra
    m = q.algebra.dim
    N = G.dim

    def gen(i: int, sign: str) -> List[Fraction]:
        bar = list(q.project(J.e(i))) + [Fraction(0)] * J.dim
        full = [Fraction(0)] * m + J.e(i)
        emb = Tk.plus if sign == "+" else Tk.minus
        return emb(bar) + emb(full)

    def bracket(u, v):
        # (1 p + T q) |- (1 r + T s) = 1 [p, r] + T [p, s]
        p, r, s = u[:N], v[:N], v[N:]
        return G.mul(p, r) + G.mul(p, s)

    gens = [gen(i, s) for s in "+-" for i in range(J.dim)]
    S = subspace_closure(gens, [bracket], 2 * N)
    basis = S.basis()
    k = len(basis)
    table = {}
    for i in range(k):
        for j in range(k):
            table[(i, j)] = S.coordinates(bracket(basis[i], basis[j]))
    TJ = Algebra([f"u{i + 1}" for i in range(k)], table, name=f"T({J.name or 'J'})")
    rec = LinearMapRecord(J.name or "J", f"(Cur {G.name})^(0)<=1", source_dim=J.dim)
    rec.add("closure dimension <= 2 dim T(hat J)", k <= 2 * N, detail=f"{k} <= {2 * N}")
    leib = is_leibniz(TJ)
    rec.add("is_leibniz(T(J))", bool(leib), leib.witness)
    rec.rank = rank([g for g in gens[:J.dim]]) if J.dim else 0
    rec.images = {f"{J.names[i]}{s}": gen(i, s) for s in "+-" for i in range(J.dim)}
    if not leib:
        raise AssertionError(f"T(J) is not Leibniz: fails at {leib.witness}")
    return LeibnizTKK(TJ, rec, H, Tk, S)


# -- Cur g -> Cur gl(W) as a map of conformal algebras -----------------------------

def current_rep_conformal(g: Algebra, V: BarModule | None = None) -> LinearMapRecord:
    """Check ``rho([a_L b]) = [rho(a)_L rho(b)]`` for the H-linear extension of ``rho``."""
    chk = is_lie(g)
    if not chk:
        raise ValueError(f"not a Lie algebra: fails at {chk.witness}")
    rep = leibniz_conformal_rep(g, V)
    N = rep.width
    target = MinusConformal(MatrixCurrent(N))
    source = current(g)
    from .exactcore.poly import L as LAM

    def rho(el) -> tuple:
        acc = target.zero()
        for i, f in enumerate(el):
            if f:
                acc = tuple(x + y for x, y in zip(acc, target.inner.from_matrices(
                    [(f, rep.rho0[i]), (f * T, rep.rho1[i])])))
        return acc

    rec = LinearMapRecord(g.name or "g", f"Cur gl({N})", source_dim=g.dim)
    gens = source.generators()
    images = [rho(x) for x in gens]
    bad = None
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            if rho(source.product(a, b, LAM)) != target.product(images[i], images[j], LAM):
                bad = (g.names[i], g.names[j])
                break
        if bad:
            break
    rec.add("rho([a_L b]) = [rho(a)_L rho(b)]", bad is None, bad, f"{g.dim ** 2} generator pairs")
    rec.rank = rep.record.rank
    rec.images = rep.record.images
    return rec


# -- random nilpotent Leibniz algebras ----------------------------------------------

def random_nilpotent_leibniz(dim: int, rng: random.Random, density: float = 1.0) -> Algebra:
    """Random Leibniz algebra with ``[e_i, e_j]`` in ``span{e_k : k > max(i, j)}``.

    Target coordinates are chosen in increasing order; given the lower ones the
    Leibniz identity is linear in the constants of the next target, so each step
    picks a random point of a rational solution space.
    """
    consts: Dict[Tuple[int, int], Dict[int, Fraction]] = {}

    def c(m, i, j):
        return consts.get((i, j), {}).get(m, Fraction(0))

    for k in range(dim):
        unknowns = [(i, j) for i in range(k) for j in range(k)]
        if not unknowns:
            continue
        col = {p: r for r, p in enumerate(unknowns)}
        rows = []
        for a in range(dim):
            for b in range(dim):
                for cc in range(dim):
                    # [a,[b,c]] - [[a,b],c] - [b,[a,c]], coefficient of e_k
                    row = [Fraction(0)] * len(unknowns)
                    for m_ in range(k):
                        for coef, p in ((c(m_, b, cc), (a, m_)), (-c(m_, a, b), (m_, cc)), (-c(m_, a, cc), (b, m_))):
                            if coef and p in col:
                                row[col[p]] += coef
                    if any(row):
                        rows.append(row)
        space = nullspace(rows, cols=len(unknowns)) if rows else Subspace.full(len(unknowns))
        vec = [Fraction(0)] * len(unknowns)
        for b in space.basis():
            if rng.random() < density:
                w = rng.randint(-3, 3)
                vec = [x + w * y for x, y in zip(vec, b)]
        for (i, j), v in zip(unknowns, vec):
            if v:
                consts.setdefault((i, j), {})[k] = v
    L = Algebra([f"e{i + 1}" for i in range(dim)], consts, name=f"rnil{dim}")
    return L
