"""Acceptance criteria, one test each.

Every test records a single ``PASS`` or ``FAIL`` line with its wall time and
limit; pytest prints them in an "acceptance criteria" section at the end of
the run.
"""
import contextlib
import math
import random
import sys
import time
from fractions import Fraction

import pytest

from diaconf.cli import run_command
from diaconf.conformal import (
    check_conformal_associativity,
    check_conformal_lie,
    check_sesquilinearity,
    current,
    find_left_unit,
    no_unit_example,
    unit_chain,
    virasoro,
    weyl,
)
from diaconf.constructions import (
    adjoint_bar_module,
    ado_envelope,
    current_embedding,
    current_rep_conformal,
    leibniz_conformal_rep,
    leibniz_tkk,
    random_nilpotent_leibniz,
    tkk,
    trivial_module,
)
from diaconf.dialgebra import (
    Algebra,
    check_zero_identities,
    engel_verdict,
    hat_extension,
    is_associative,
    is_di_variety,
    is_diassociative,
    is_leibniz,
    is_lie,
    series,
)
from diaconf.exactcore import matmul, rank
from diaconf.identities import (
    ASSOCIATIVITY,
    DASHV,
    VDASH,
    di_identities,
    dias_quotient_dim,
    holds_in,
    poly_from,
    psi,
    s_identity_space,
    variety_axioms,
)
from diaconf.specfile import load_catalog, parse_spec


@contextlib.contextmanager
def criterion(log, number, title, limit=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        bound = f" (limit {limit:g}s)" if limit is not None else ""
        log.append(f"{status} criterion {number:>2}: {title} [{elapsed:.2f}s{bound}]")


def catalog(kind, tag=None):
    return [s.build() for s in load_catalog(kind, tag)]


def test_criterion_01_variety_table(acceptance_log):
    with criterion(acceptance_log, 1, "translate(assoc) gives the three diassociative identities", 1):
        rep, code, _ = run_command(["translate", "assoc", "--json"])
        assert code == 0
        want = {
            poly_from([(1, ((1, DASHV, 2), DASHV, 3)), (-1, (1, DASHV, (2, DASHV, 3)))]),
            poly_from([(1, ((1, VDASH, 2), DASHV, 3)), (-1, (1, VDASH, (2, DASHV, 3)))]),
            poly_from([(1, ((1, VDASH, 2), VDASH, 3)), (-1, (1, VDASH, (2, VDASH, 3)))]),
        }
        assert set(di_identities([ASSOCIATIVITY])) == want
        assert len(rep.data["translated"]) == 3
        sym = poly_from([(1, (1, 2)), (1, (2, 1))])
        assert psi(sym, 1) == poly_from([(1, (1, DASHV, 2)), (1, (2, VDASH, 1))])


def _route_c(D, variety):
    if not check_zero_identities(D):
        return False
    rec, C = current_embedding(D)
    if not rec.ok:
        return False
    chk = check_conformal_associativity if variety == "assoc" else check_conformal_lie
    return bool(chk(C))


def test_criterion_02_coherence(acceptance_log):
    with criterion(acceptance_log, 2, "Psi-evaluation, hat membership and current embedding agree", 10):
        dialgebras = catalog("dialgebra")
        assert len(dialgebras) >= 10
        assert {D.dim for D in dialgebras} <= {1, 2, 3, 4}
        lie_hat = lambda A: bool(is_lie(A))
        for variety, hat_check in (("assoc", lambda A: bool(is_associative(A))), ("lie", lie_hat)):
            axioms = variety_axioms(variety)
            for D in dialgebras:
                zero = bool(check_zero_identities(D))
                a = zero and all(holds_in(g, D) for g in di_identities(axioms))
                b = zero and hat_check(hat_extension(D))
                c = _route_c(D, variety)
                assert a == b == c, (variety, D.name, a, b, c)
                assert bool(is_di_variety(D, axioms)) == b, (variety, D.name)


def test_criterion_03_leibniz_representation(acceptance_log):
    with criterion(acceptance_log, 3, "rho0/rho1 identities and rank rho1 = dim L on catalog Leibniz algebras", 5):
        algebras = [L for L in catalog("algebra", "leibniz") if L.dim <= 4]
        assert algebras
        for L in algebras:
            for module in (trivial_module, adjoint_bar_module):
                rep = leibniz_conformal_rep(L, module(L))
                n = len(rep.rho0[0])
                for i in range(L.dim):
                    for j in range(L.dim):
                        xy = L.mul(L.e(i), L.e(j))
                        for rho_left, rho_right in ((rep.rho0, rep.rho0), (rep.rho0, rep.rho1)):
                            lhs = _sub(matmul(rho_left[i], rho_right[j]), matmul(rho_right[j], rho_left[i]))
                            rhs = _comb(xy, rho_right, n)
                            assert lhs == rhs, (L.name, module.__name__, i, j)
                flat = [[x for row in m for x in row] for m in rep.rho1]
                assert rank(flat) == L.dim, (L.name, module.__name__)


def _sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _comb(coeffs, mats, n):
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        for i in range(n):
            for j in range(n):
                out[i][j] += c * m[i][j]
    return out


def test_criterion_04_ado_bound(acceptance_log):
    with criterion(acceptance_log, 4, "ado_envelope has dimension exactly 2(n+1)^2 and contains L", 5):
        algebras = [L for L in catalog("algebra", "leibniz") if L.dim <= 4]
        algebras.append(random_nilpotent_leibniz(4, random.Random(4)))
        for L in algebras:
            env = ado_envelope(L)
            D = env.dialgebra
            assert D.dim == 2 * (L.dim + 1) ** 2
            assert env.record.ok, L.name
            assert rank(env.image) == L.dim
            for i in range(L.dim):
                for j in range(L.dim):
                    u, v = env.image[i], env.image[j]
                    got = [x - y for x, y in zip(D.vdash(u, v), D.dashv(v, u))]
                    want = [sum(c * img[k] for c, img in zip(L.mul(L.e(i), L.e(j)), env.image))
                            for k in range(D.dim)]
                    assert got == want, (L.name, i, j)
        # diassociativity of the envelope, checked on the largest catalog case
        big = max(algebras, key=lambda A: A.dim)
        assert is_diassociative(ado_envelope(big).dialgebra)


def test_criterion_05_engel(acceptance_log):
    with criterion(acceptance_log, 5, "nilpotent left multiplications imply a nilpotent algebra (30 samples)", 10):
        rng = random.Random(2024)
        for k in range(30):
            L = random_nilpotent_leibniz(1 + k % 5, rng, density=rng.choice([0.5, 1.0]))
            r = engel_verdict(L)
            assert r.left_nilpotent
            assert series(L).zero_index is not None and r.nilpotent


def test_criterion_06_conformal_suite(acceptance_log):
    with criterion(acceptance_log, 6, "conformal axiom suite with 500 sesquilinearity pairs", 10):
        assert check_conformal_lie(virasoro())
        seen = set()
        for s in load_catalog("algebra"):
            A = s.build()
            assoc = bool(is_associative(A))
            seen.add(assoc)
            assert bool(check_conformal_associativity(current(A))) == assoc, s.name
        assert seen == {True, False}
        assert check_conformal_associativity(weyl())
        assert check_conformal_associativity(no_unit_example())
        dual = Algebra(["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}})
        for C in (virasoro(), weyl(), no_unit_example(), current(dual)):
            assert check_sesquilinearity(C, pairs=500)


def test_criterion_07_no_unit(acceptance_log):
    with criterion(acceptance_log, 7, "no left unit for bounds 1..5; unit chain n = 1..6 infeasible up to degree 5", 30):
        C = no_unit_example()
        for bound in range(1, 6):
            s = find_left_unit(C, bound)
            assert not s.feasible and s.certificate is not None
        for d in range(1, 6):
            c = unit_chain(d, n_max=6)
            assert not c.feasible and c.certificate is not None
            assert c.specialization_infeasible


def test_criterion_08_s_identities(acceptance_log):
    with criterion(acceptance_log, 8, "no s-identities in degrees 2, 3 and 4", 300):
        for degree in (2, 3, 4):
            r = s_identity_space(degree)
            assert r.verdict, degree
            assert r.intersection_dim == r.kernel_dim


def test_criterion_09_multilinear_dimensions(acceptance_log):
    with criterion(acceptance_log, 9, "diassociative multilinear quotient has dimension n * n! for n <= 4"):
        for n in range(1, 5):
            assert dias_quotient_dim(n) == n * math.factorial(n)


def _killing_nondegenerate(G):
    ad = [[G.mul(G.e(i), G.e(j)) for j in range(G.dim)] for i in range(G.dim)]
    # ad[i][j] is column j of ad(e_i)
    mats = [[[ad[i][j][r] for j in range(G.dim)] for r in range(G.dim)] for i in range(G.dim)]
    form = [[sum(matmul(a, b)[k][k] for k in range(G.dim)) for b in mats] for a in mats]
    return rank(form) == G.dim


def test_criterion_10_tkk(acceptance_log):
    with criterion(acceptance_log, 10, "TKK(k) is sl2; T(J) is Leibniz with the nilpotency split", 30):
        T = tkk(Algebra(["e"], {(0, 0): {0: 1}}))
        G = T.algebra
        assert G.dim == 3 and is_lie(G)
        h = [2 * c for c in T.s_element([[1]])]
        x = T.minus([1])
        y = [2 * c for c in T.plus([1])]
        assert G.mul(h, x) == [2 * c for c in x]
        assert G.mul(h, y) == [-2 * c for c in y]
        assert G.mul(x, y) == h
        assert rank([h, x, y]) == 3
        assert _killing_nondegenerate(G)
        dijordan = load_catalog("algebra", "dijordan")
        nilpotent = [s for s in dijordan if "nilpotent" in s.tags]
        assert nilpotent and len(nilpotent) < len(dijordan)
        for s in dijordan:
            J = s.build()
            res = leibniz_tkk(J)
            assert is_leibniz(res.algebra), s.name
            assert bool(series(res.algebra).verdict) == ("nilpotent" in s.tags), s.name


def test_criterion_11_current_homomorphism(acceptance_log):
    with criterion(acceptance_log, 11, "Cur g -> Cur gl(W) preserves the lambda-bracket (abelian, solvable, sl2)", 10):
        for name in ("abelian_2", "lie_solv2", "lie_sl2"):
            rec = current_rep_conformal(parse_spec(f"catalog:{name}").build())
            assert rec.ok, name


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
