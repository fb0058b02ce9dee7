"""Conformal algebras that are free modules over H = Q[T].

An element is a tuple of :class:`Poly` components.  For table algebras the
components are the H-coordinates along the generators; closed-form algebras
(Weyl, the algebra without a unit, matrix currents) use their own component
layout.  ``product(a, b, lam)`` returns ``(a_lam b)`` for an arbitrary
polynomial ``lam``, so ``(a_L b)_(L+M) c`` and ``(b_M a)|_(M=-T-L)`` are ordinary
calls.  The two sesquilinearity rules are built into every product: a left
``T`` becomes ``-lam`` and a right ``T`` becomes ``T + lam``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .dialgebra import Algebra, CheckResult, Dialgebra
from .exactcore import Poly, QMatrix, declare, matmul, matvec, solve, substitute
from .exactcore.poly import L, M, ONE, T, X, ZERO

Element = Tuple[Poly, ...]

# dummy parameter for skew-symmetry substitutions; never appears in results
declare("Lsk")
_SK = Poly.var("Lsk")


def _add(a: Element, b: Element) -> Element:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Element) -> Element:
    return tuple(-x for x in a)


def _sub(a: Element, b: Element) -> Element:
    return tuple(x - y for x, y in zip(a, b))


def _scale(p, a: Element) -> Element:
    return tuple(p * x for x in a)


def subs_element(a: Element, bindings: Mapping[str, object]) -> Element:
    return tuple(substitute(x, bindings) for x in a)


def is_zero(a: Element) -> bool:
    return all(not x for x in a)


def lam_degree(a: Element, name: str = "L") -> int:
    return max((x.degree(name) for x in a if x), default=0)


def lam_coefficient(a: Element, s: int, name: str = "L") -> Element:
    return tuple(x.coeff(name, s) for x in a)


class ConformalAlgebra:
    """Abstract conformal algebra on a free H-module."""

    name = "conformal"
    closed_form = False
    components: Tuple[str, ...] = ()

    def product(self, a: Element, b: Element, lam: Poly) -> Element:
        raise NotImplementedError

    @property
    def width(self) -> int:
        return len(self.components)

    def zero(self) -> Element:
        return tuple(ZERO for _ in self.components)

    def lambda_product(self, a: Element, b: Element) -> Element:
        return self.product(self.validate(a), self.validate(b), L)

    def validate(self, a: Sequence) -> Element:
        if len(a) != self.width:
            raise ValueError(f"{self.name}: element has {len(a)} components, expected {self.width}")
        return tuple(Poly.coerce(x) for x in a)

    def t_act(self, a: Element) -> Element:
        return _scale(T, a)

    # H-basis bookkeeping: every element is sum c * T^j * basis_element(label)
    def h_terms(self, a: Element) -> Iterable[Tuple[int, object, Fraction]]:
        raise NotImplementedError

    def basis_element(self, label) -> Element:
        raise NotImplementedError

    def label_name(self, label) -> str:
        return str(label)

    def generators(self, bound: int = 2) -> List[Element]:
        """T-free elements spanning the algebra over H (truncated for closed forms)."""
        raise NotImplementedError

    def generator_labels(self, bound: int = 2) -> List[object]:
        raise NotImplementedError

    def random_element(self, rng: random.Random, degree: int = 2, terms: int = 3) -> Element:
        """Sum of ``terms`` random ``c * T^j * g`` with ``j`` and the generator degree at most ``degree``."""
        out = self.zero()
        labels = self.generator_labels(degree)
        for _ in range(terms):
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
            j = rng.randint(0, degree)
            out = _add(out, _scale(c * T ** j, self.basis_element(rng.choice(labels))))
        return out

    def format(self, a: Element) -> str:
        parts = []
        for (j, label), c in sorted(_collect(self.h_terms(a)).items(), key=lambda kv: (str(kv[0][1]), kv[0][0])):
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            power = "" if j == 0 else "T*" if j == 1 else f"T^{j}*"
            parts.append(f"{coef}{power}{self.label_name(label)}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


def _collect(terms):
    out: Dict = {}
    for j, label, c in terms:
        out[(j, label)] = out.get((j, label), 0) + c
    return {k: v for k, v in out.items() if v}


class TableConformal(ConformalAlgebra):
    """Finite rank: generators ``g_1..g_m`` and ``(g_i lam g_j) = sum_k p_ijk(T, lam) g_k``."""

    def __init__(self, names: Sequence[str], table: Mapping[Tuple[int, int], Sequence], name: str = "conformal"):
        self.components = tuple(names)
        self.name = name
        m = len(self.components)
        self.table: Dict[Tuple[int, int], Element] = {}
        for (i, j), row in table.items():
            if not (0 <= i < m and 0 <= j < m):
                raise ValueError(f"table index ({i}, {j}) out of range")
            row = tuple(Poly.coerce(p) for p in row)
            if len(row) != m:
                raise ValueError(f"table entry ({i}, {j}) has {len(row)} components, expected {m}")
            for p in row:
                extra = p.symbols() - {"T", "L"}
                if extra:
                    raise ValueError(f"table entry ({i}, {j}) uses symbols {sorted(extra)}; only T and L allowed")
            if not is_zero(row):
                self.table[(i, j)] = row

    def product(self, a, b, lam):
        out = [ZERO] * self.width
        left = [(i, substitute(x, {"T": -lam})) for i, x in enumerate(a) if x]
        right = [(j, substitute(y, {"T": T + lam})) for j, y in enumerate(b) if y]
        for i, f in left:
            for j, g in right:
                row = self.table.get((i, j))
                if row is None:
                    continue
                fg = f * g
                for k, p in enumerate(row):
                    if p:
                        out[k] = out[k] + fg * substitute(p, {"L": lam})
        return tuple(out)

    def h_terms(self, a):
        for i, x in enumerate(a):
            for j, c in x.coefficients_in("T").items():
                if c.symbols():
                    raise ValueError("element has non-scalar H-coordinates")
                yield j, i, c.constant_term()

    def basis_element(self, label):
        return tuple(ONE if k == label else ZERO for k in range(self.width))

    def label_name(self, label):
        return self.components[label]

    def generator_labels(self, bound=2):
        return list(range(self.width))

    def generators(self, bound=2):
        return [self.basis_element(i) for i in range(self.width)]


class WeylConformal(ConformalAlgebra):
    """Q[T, x] with ``f(T, x)_lam g(T, x) = f(-lam, x) g(T + lam, x + lam)``.

    The printed variant with ``T`` in the second slot of ``f`` fails
    associativity on ``(x, 1, 1)``; this form is the associative one.
    """

    name = "weyl"
    closed_form = True
    components = ("f",)

    def product(self, a, b, lam):
        f = substitute(a[0], {"T": -lam})
        g = substitute(b[0], {"T": T + lam, "x": X + lam})
        return (f * g,)

    def h_terms(self, a):
        for j, c in a[0].coefficients_in("T").items():
            for k, d in c.coefficients_in("x").items():
                yield j, k, d.constant_term()

    def basis_element(self, label):
        return (X ** label,)

    def label_name(self, label):
        return f"x^{label}"

    def generator_labels(self, bound=2):
        return list(range(bound + 1))

    def generators(self, bound=2):
        return [self.basis_element(k) for k in self.generator_labels(bound)]


class NoUnitConformal(ConformalAlgebra):
    """H-module on Q[x] + Q w; elements ``(p(T, x), q(T))`` stand for ``p + q w``.

    Products: ``f(x)_lam g(x) = f(x - T - lam) g(x)``, ``w_lam f(x) = f(T) w`` and
    ``anything_lam w = 0``.
    """

    name = "nounit"
    closed_form = True
    components = ("p", "q")

    def product(self, a, b, lam):
        p, q = a
        p2 = b[0]
        if not p2:
            return (ZERO, ZERO)
        left = substitute(p, {"T": -lam, "x": X - T - lam}) if p else ZERO
        right = substitute(p2, {"T": T + lam}) if p else ZERO
        wpart = substitute(q, {"T": -lam}) * substitute(p2, {"T": T + lam, "x": T}) if q else ZERO
        return (left * right, wpart)

    def h_terms(self, a):
        p, q = a
        for j, c in p.coefficients_in("T").items():
            for k, d in c.coefficients_in("x").items():
                yield j, k, d.constant_term()
        for j, c in q.coefficients_in("T").items():
            yield j, "w", c.constant_term()

    def basis_element(self, label):
        if label == "w":
            return (ZERO, ONE)
        return (X ** label, ZERO)

    def label_name(self, label):
        return "w" if label == "w" else f"x^{label}"

    def generator_labels(self, bound=2):
        return list(range(bound + 1)) + ["w"]

    def generators(self, bound=2):
        return [self.basis_element(k) for k in self.generator_labels(bound)]


class MatrixCurrent(ConformalAlgebra):
    """Cur M_n(Q): elements are n x n matrices over H, product ``A(-lam) B(T + lam)``."""

    closed_form = False

    def __init__(self, n: int, name: str | None = None):
        self.n = n
        self.name = name or f"Cur M_{n}"
        self.components = tuple(f"E{i + 1},{j + 1}" for i in range(n) for j in range(n))

    def product(self, a, b, lam):
        n = self.n
        A = [[substitute(a[i * n + k], {"T": -lam}) for k in range(n)] for i in range(n)]
        B = [[substitute(b[k * n + j], {"T": T + lam}) for j in range(n)] for k in range(n)]
        out = []
        for i in range(n):
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    if A[i][k] and B[k][j]:
                        acc = acc + A[i][k] * B[k][j]
                out.append(acc)
        return tuple(out)

    def from_matrices(self, coeffs: Sequence[Tuple[Poly, QMatrix]]) -> Element:
        """``sum p_r(T) * m_r`` for rational matrices ``m_r``."""
        out = list(self.zero())
        for p, m in coeffs:
            p = Poly.coerce(p)
            for i in range(self.n):
                for j in range(self.n):
                    if m[i][j]:
                        out[i * self.n + j] = out[i * self.n + j] + p * m[i][j]
        return tuple(out)

    def h_terms(self, a):
        for i, x in enumerate(a):
            for j, c in x.coefficients_in("T").items():
                yield j, i, c.constant_term()

    def basis_element(self, label):
        return tuple(ONE if k == label else ZERO for k in range(self.width))

    def label_name(self, label):
        return self.components[label]

    def generator_labels(self, bound=2):
        return list(range(self.width))

    def generators(self, bound=2):
        return [self.basis_element(i) for i in range(self.width)]


class MinusConformal(ConformalAlgebra):
    """``[a_lam b] = (a_lam b) - (b_mu a)|_(mu = -T - lam)`` on an associative algebra."""

    def __init__(self, inner: ConformalAlgebra):
        self.inner = inner
        self.name = f"{inner.name}(-)"
        self.components = inner.components
        self.closed_form = inner.closed_form

    def product(self, a, b, lam):
        direct = self.inner.product(a, b, lam)
        swapped = subs_element(self.inner.product(b, a, _SK), {"Lsk": -T - lam})
        return _sub(direct, swapped)

    def h_terms(self, a):
        return self.inner.h_terms(a)

    def basis_element(self, label):
        return self.inner.basis_element(label)

    def label_name(self, label):
        return self.inner.label_name(label)

    def generator_labels(self, bound=2):
        return self.inner.generator_labels(bound)

    def generators(self, bound=2):
        return self.inner.generators(bound)


# -- constructors -------------------------------------------------------------

def current(A: Algebra) -> TableConformal:
    """Cur A: ``(f(T) a)_lam (g(T) b) = f(-lam) g(T + lam) ab``."""
    n = A.dim
    table = {}
    for (i, j) in A.table:
        row = [ZERO] * n
        for k, c in A.structure(i, j).items():
            row[k] = Poly.const(c)
        table[(i, j)] = row
    C = TableConformal(A.names, table, name=f"Cur {A.name or 'A'}")
    C.source = A
    return C


def virasoro() -> TableConformal:
    return TableConformal(["v"], {(0, 0): [T + 2 * L]}, name="virasoro")


def weyl() -> WeylConformal:
    return WeylConformal()


def no_unit_example() -> NoUnitConformal:
    return NoUnitConformal()


def diffcur(A: Algebra, d: QMatrix) -> TableConformal:
    """``(1 a)_lam (1 b) = sum_k lam^k / k! * a d^k(b)`` for a nilpotent derivation ``d``."""
    n = A.dim
    if len(d) != n or any(len(r) != n for r in d):
        raise ValueError("derivation matrix has the wrong size")
    d = [[Fraction(x) for x in row] for row in d]
    col = lambda v: matvec(d, v)
    for i in range(n):
        for j in range(n):
            ei, ej = A.e(i), A.e(j)
            lhs = col(A.mul(ei, ej))
            rhs = [x + y for x, y in zip(A.mul(col(ei), ej), A.mul(ei, col(ej)))]
            if lhs != rhs:
                raise ValueError(f"not a derivation: fails on ({A.names[i]}, {A.names[j]})")
    powers = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
    while any(any(r) for r in powers[-1]):
        if len(powers) > n:
            raise ValueError("derivation is not nilpotent")
        powers.append(matmul(d, powers[-1]))
    table = {}
    for i in range(n):
        for j in range(n):
            row = [ZERO] * n
            for k, Dk in enumerate(powers[:-1]):
                dkb = matvec(Dk, A.e(j))
                prod = A.mul(A.e(i), dkb)
                for r, c in enumerate(prod):
                    if c:
                        row[r] = row[r] + Fraction(c, math.factorial(k)) * L ** k
            table[(i, j)] = row
    return TableConformal(A.names, table, name=f"DiffCur {A.name or 'A'}")


# -- checks -------------------------------------------------------------------

def _probe(C: ConformalAlgebra, degree: int) -> List[Tuple[str, Element]]:
    """Generators and, for closed forms, their products with powers of T."""
    out = []
    for label in C.generator_labels(degree):
        g = C.basis_element(label)
        out.append((C.label_name(label), g))
        if C.closed_form:
            for j in range(1, degree + 1):
                out.append((f"T^{j}*{C.label_name(label)}", _scale(T ** j, g)))
    return out


def check_conformal_associativity(C: ConformalAlgebra, probe_degree: int = 2) -> CheckResult:
    """``(a_L b)_(L+M) c = a_L (b_M c)`` on generator triples."""
    probe = _probe(C, probe_degree)
    for (na, a), (nb, b), (nc, c) in itertools.product(probe, repeat=3):
        lhs = C.product(C.product(a, b, L), c, L + M)
        rhs = C.product(a, C.product(b, c, M), L)
        if lhs != rhs:
            return CheckResult("conformal associativity", False, (na, nb, nc))
    return CheckResult("conformal associativity", True)


def check_conformal_lie(C: ConformalAlgebra, probe_degree: int = 2) -> CheckResult:
    """Skew-symmetry ``[a_L b] = -[b_(-T-L) a]`` and the conformal Jacobi identity."""
    probe = _probe(C, probe_degree)
    for (na, a), (nb, b) in itertools.product(probe, repeat=2):
        lhs = C.product(a, b, L)
        rhs = _neg(subs_element(C.product(b, a, _SK), {"Lsk": -T - L}))
        if lhs != rhs:
            return CheckResult("conformal skew-symmetry", False, (na, nb))
    for (na, a), (nb, b), (nc, c) in itertools.product(probe, repeat=3):
        lhs = C.product(a, C.product(b, c, M), L)
        rhs = _add(C.product(C.product(a, b, L), c, L + M), C.product(b, C.product(a, c, L), M))
        if lhs != rhs:
            return CheckResult("conformal Jacobi", False, (na, nb, nc))
    return CheckResult("conformal Lie", True)


def check_sesquilinearity(C: ConformalAlgebra, pairs: int = 500, seed: int = 0, degree: int = 2) -> CheckResult:
    """``(Ta)_L b = -L (a_L b)`` and ``a_L (Tb) = (T + L)(a_L b)`` on random pairs."""
    rng = random.Random(seed)
    for k in range(pairs):
        a = C.random_element(rng, degree)
        b = C.random_element(rng, degree)
        ab = C.product(a, b, L)
        if C.product(C.t_act(a), b, L) != _scale(-L, ab):
            return CheckResult("sesquilinearity (left)", False, (f"pair {k}",))
        if C.product(a, C.t_act(b), L) != _scale(T + L, ab):
            return CheckResult("sesquilinearity (right)", False, (f"pair {k}",))
    return CheckResult("sesquilinearity", True, detail=f"{pairs} pairs")


def minus_functor(C: ConformalAlgebra, check: bool = True) -> MinusConformal:
    if check:
        r = check_conformal_associativity(C)
        if not r:
            raise ValueError(f"{C.name} is not associative: witness {r.witness}")
    return MinusConformal(C)


# -- the functor C -> C^(0) ------------------------------------------------------

def zero_vdash(C: ConformalAlgebra, a: Element, b: Element) -> Element:
    return C.product(a, b, ZERO)


def zero_dashv(C: ConformalAlgebra, a: Element, b: Element) -> Element:
    return C.product(a, b, -T)


class FiltrationError(ValueError):
    """A product leaves the requested T-degree filtration."""


def filtration_basis(C: ConformalAlgebra, bound: int) -> List[Tuple[int, object]]:
    """``T^j * g`` for ``j <= bound``, grouped by ``j`` (the ``j = 0`` block first)."""
    return [(j, label) for j in range(bound + 1) for label in C.generator_labels(bound)]


def zero_functor(C: ConformalAlgebra, bound: int = 1) -> Dialgebra:
    """Materialize ``C^(0)`` on the span of ``T^j g`` with ``j <= bound``."""
    basis = filtration_basis(C, bound)
    index = {key: i for i, key in enumerate(basis)}
    elems = [_scale(T ** j, C.basis_element(label)) for j, label in basis]
    names = [C.label_name(label) if j == 0 else (f"T*{C.label_name(label)}" if j == 1 else f"T^{j}*{C.label_name(label)}")
             for j, label in basis]
    left, right = {}, {}
    for i, a in enumerate(elems):
        for k, b in enumerate(elems):
            for table, op, sym in ((left, zero_vdash, "|-"), (right, zero_dashv, "-|")):
                row = {}
                for j, label, c in C.h_terms(op(C, a, b)):
                    if (j, label) not in index:
                        raise FiltrationError(
                            f"{names[i]} {sym} {names[k]} leaves the filtration (term T^{j}*{C.label_name(label)})")
                    row[index[(j, label)]] = row.get(index[(j, label)], 0) + c
                if row:
                    table[(i, k)] = row
    return Dialgebra(names, left, right, name=f"{C.name}^(0)<= {bound}")


# -- coefficient algebra ---------------------------------------------------------

def _falling(k: int, j: int) -> int:
    out = 1
    for r in range(j):
        out *= k - r
    return out


def _binom(m: int, s: int) -> Fraction:
    return Fraction(_falling(m, s), math.factorial(s))


CoeffElement = Dict[Tuple[int, object], Fraction]


def n_product(C: ConformalAlgebra, a: Element, b: Element, s: int) -> Element:
    """``a_(s) b = s! * [L^s] (a_L b)``."""
    return _scale(math.factorial(s), lam_coefficient(C.product(a, b, L), s))


def _normalize(C: ConformalAlgebra, k: int, a: Element, scale: Fraction, out: CoeffElement) -> None:
    # t^k (x) T^j g = (-1)^j k(k-1)...(k-j+1) t^(k-j) (x) g
    for j, label, c in C.h_terms(a):
        v = scale * c * (-1) ** j * _falling(k, j)
        if v:
            key = (k - j, label)
            nv = out.get(key, 0) + v
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)


def coeff_product(C: ConformalAlgebra, m: int, a: Element, n: int, b: Element) -> CoeffElement:
    """``(t^m a)(t^n b) = sum_s binom(m, s) t^(m+n-s) a_(s) b`` in the coefficient algebra."""
    ab = C.product(a, b, L)
    out: CoeffElement = {}
    for s in range(lam_degree(ab) + 1):
        coeff = _binom(m, s)
        if coeff:
            _normalize(C, m + n - s, n_product(C, a, b, s), coeff, out)
    return out


def coeff_element(C: ConformalAlgebra, k: int, a: Element) -> CoeffElement:
    out: CoeffElement = {}
    _normalize(C, k, a, Fraction(1), out)
    return out


def coeff_multiply(C: ConformalAlgebra, u: CoeffElement, v: CoeffElement) -> CoeffElement:
    out: CoeffElement = {}
    for (m, la), c1 in u.items():
        for (n, lb), c2 in v.items():
            for key, c in coeff_product(C, m, C.basis_element(la), n, C.basis_element(lb)).items():
                nv = out.get(key, 0) + c1 * c2 * c
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
    return out


def check_coefficient_associativity(C: ConformalAlgebra, span: int = 3, samples: int = 200,
                                    seed: int = 0, degree: int = 1) -> CheckResult:
    """Associativity of the coefficient algebra on sampled triples ``t^m g``, ``|m| <= span``."""
    rng = random.Random(seed)
    labels = C.generator_labels(degree)
    for _ in range(samples):
        trip = [({(rng.randint(-span, span), rng.choice(labels)): Fraction(1)}) for _ in range(3)]
        x, y, z = trip
        lhs = coeff_multiply(C, coeff_multiply(C, x, y), z)
        rhs = coeff_multiply(C, x, coeff_multiply(C, y, z))
        if lhs != rhs:
            wit = tuple(f"t^{k}*{C.label_name(l)}" for d in trip for (k, l) in d)
            return CheckResult("coefficient associativity", False, wit)
    return CheckResult("coefficient associativity", True, detail=f"{samples} triples")


# -- units ---------------------------------------------------------------------

def is_conformal_unit(C: ConformalAlgebra, e: Sequence, probe_degree: int = 2) -> CheckResult:
    """``(e_L g)|_(L=0) = g`` on generators and ``e_L e = e``."""
    e = C.validate(e)
    for name, g in _probe(C, probe_degree):
        if zero_vdash(C, e, g) != g:
            return CheckResult("conformal unit", False, (name,))
    if C.product(e, e, L) != e:
        return CheckResult("conformal unit", False, ("e_L e",))
    return CheckResult("conformal unit", True)


@dataclass
class UnitSearch:
    """Outcome of the bounded left-unit search."""

    feasible: bool
    bound: int
    unknowns: int
    equations: int
    unit: Element | None = None
    certificate: List[Fraction] | None = None
    detail: str = ""


def _unknown_basis(C: ConformalAlgebra, bound: int) -> List[Element]:
    out = []
    for label in C.generator_labels(bound):
        for j in range(bound + 1):
            out.append(_scale(T ** j, C.basis_element(label)))
    return out


def _linear_system(columns: List[Element], target: Element):
    """Rows are (component, monomial) coordinates; returns (matrix, rhs)."""
    keys = {}
    for el in columns + [target]:
        for ci, p in enumerate(el):
            for mono in p.terms:
                keys.setdefault((ci, mono), len(keys))
    mat = [[Fraction(0)] * len(columns) for _ in keys]
    rhs = [Fraction(0)] * len(keys)
    for c, el in enumerate(columns):
        for ci, p in enumerate(el):
            for mono, v in p.terms.items():
                mat[keys[(ci, mono)]][c] = v
    for ci, p in enumerate(target):
        for mono, v in p.terms.items():
            rhs[keys[(ci, mono)]] = v
    return mat, rhs


def find_left_unit(C: ConformalAlgebra, bound: int) -> UnitSearch:
    """Solve ``(e_L g)|_(L=0) = g`` for ``e`` of degree at most ``bound``.

    The unknown ``e`` ranges over ``T^j g`` with ``j <= bound`` (and, for closed
    forms, generators of x-degree at most ``bound``); the constraints use every
    probe generator up to degree ``bound + 1``.  Infeasibility comes with a
    certificate ``y`` with ``y M = 0`` and ``y . rhs != 0``.
    """
    unknowns = _unknown_basis(C, bound)
    targets = C.generators(bound + 1)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for g in targets:
        cols = [zero_vdash(C, u, g) for u in unknowns]
        m, r = _linear_system(cols, g)
        rows.extend(m)
        rhs.extend(r)
    x, cert = solve(rows, rhs) if rows else ([Fraction(0)] * len(unknowns), None)
    if cert is not None:
        return UnitSearch(False, bound, len(unknowns), len(rows), certificate=cert)
    e = C.zero()
    for c, u in zip(x, unknowns):
        if c:
            e = _add(e, _scale(c, u))
    return UnitSearch(True, bound, len(unknowns), len(rows), unit=e)


@dataclass
class ChainCertificate:
    """Infeasibility of the unit chain for ``u = (e_L w)`` of L-degree <= ``degree``."""

    degree: int
    n_max: int
    t_degree: int
    feasible: bool
    unknowns: int
    equations: int
    certificate: List[Fraction] | None
    specialization_infeasible: bool


def unit_chain(degree: int, n_max: int | None = None, t_degree: int | None = None) -> ChainCertificate:
    """The constraint chain forced on ``u(L) = (e_L w)`` by a hypothetical unit ``e``.

    Associativity gives ``(u_(0) x^n) = (T + L)^n u`` for ``n >= 1``.  The left
    side has L-degree at most ``degree``, so every coefficient of ``L^k``,
    ``k > degree``, of ``(T + L)^n u`` must vanish; together with ``u_0 = 1``
    (from ``e_0 w = w``) this is a linear system in the T-coefficients of
    ``u_0..u_degree``.  Setting ``T = 0`` in the chain gives a system that does
    not depend on the T-degree; its infeasibility is recorded as well.
    """
    d = degree
    n_max = d + 1 if n_max is None else n_max
    D = d if t_degree is None else t_degree
    nvar = (d + 1) * (D + 1)  # u_s = sum_r c[s, r] T^r
    var = lambda s, r: s * (D + 1) + r
    rows, rhs = [], []
    for r in range(D + 1):
        row = [Fraction(0)] * nvar
        row[var(0, r)] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(int(r == 0)))
    for n in range(1, n_max + 1):
        for k in range(d + 1, d + n + 1):
            # [L^k] (T+L)^n u = sum_s binom(n, k-s) T^(n-k+s) u_s
            eqs: Dict[int, List[Fraction]] = {}
            for s in range(d + 1):
                if 0 <= k - s <= n:
                    shift = n - k + s
                    c = math.comb(n, k - s)
                    for r in range(D + 1):
                        row = eqs.setdefault(r + shift, [Fraction(0)] * nvar)
                        row[var(s, r)] += c
            for tdeg in sorted(eqs):
                rows.append(eqs[tdeg])
                rhs.append(Fraction(0))
    x, cert = solve(rows, rhs)
    # T = 0: [L^k] gives u_(k-n)(0) = 0 whenever 0 <= k - n <= d
    zero_rows, zero_rhs = [[Fraction(int(s == 0)) for s in range(d + 1)]], [Fraction(1)]
    for n in range(1, n_max + 1):
        for k in range(d + 1, d + n + 1):
            if 0 <= k - n <= d:
                zero_rows.append([Fraction(int(s == k - n)) for s in range(d + 1)])
                zero_rhs.append(Fraction(0))
    _, zcert = solve(zero_rows, zero_rhs)
    return ChainCertificate(d, n_max, D, x is not None, nvar, len(rows), cert, zcert is not None)
