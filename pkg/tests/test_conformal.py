import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diaconf.conformal import (
    FiltrationError,
    check_coefficient_associativity,
    check_conformal_associativity,
    check_conformal_lie,
    check_sesquilinearity,
    coeff_element,
    coeff_product,
    current,
    diffcur,
    find_left_unit,
    is_conformal_unit,
    minus_functor,
    n_product,
    no_unit_example,
    unit_chain,
    virasoro,
    weyl,
    zero_dashv,
    zero_functor,
    zero_vdash,
)
from diaconf.dialgebra import Algebra, is_associative, is_diassociative
from diaconf.exactcore import Poly
from diaconf.specfile import load_catalog

T, L, M, X = (Poly.var(s) for s in "TLMx")
ONE, ZERO = Poly.const(1), Poly.const(0)

# Q[x]/(x^3) on 1, x, x^2
TRUNC = Algebra(["1", "x", "x2"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1},
                                  (2, 0): {2: 1}, (1, 1): {2: 1}}, name="trunc3")
DUAL = Algebra(["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, name="dual")
NONCOMM = Algebra(["e", "f"], {(0, 0): {0: 1}, (0, 1): {1: 1}}, name="e_f")  # ee = e, ef = f


def test_virasoro_table():
    V = virasoro()
    v = (ONE,)
    assert V.lambda_product(v, v) == (T + 2 * L,)
    assert V.lambda_product((T,), v) == (-L * (T + 2 * L),)
    assert V.lambda_product((ZERO,), v) == (ZERO,)


def test_virasoro_is_lie_not_associative():
    assert check_conformal_lie(virasoro())
    r = check_conformal_associativity(virasoro())
    assert not r and r.witness == ("v", "v", "v")


def test_current_table():
    C = current(NONCOMM)
    e, f = C.basis_element(0), C.basis_element(1)
    assert C.lambda_product(e, f) == f
    assert C.lambda_product((T, ZERO), f) == (ZERO, -L)
    k = current(Algebra(["1"], {(0, 0): {0: 1}}))
    assert k.lambda_product((ONE,), (ONE,)) == (ONE,)


def test_current_associativity_matches_algebra():
    specs = load_catalog("algebra")
    assert len(specs) >= 10
    for s in specs:
        A = s.build()
        assert bool(check_conformal_associativity(current(A))) == bool(is_associative(A)), s.name


def test_current_lie_detection():
    for s in load_catalog("algebra", tag="lie"):
        assert check_conformal_lie(current(s.build())), s.name
    r = check_conformal_lie(current(NONCOMM))
    assert not r


def test_weyl_table():
    W = weyl()
    assert W.lambda_product((ONE,), (ONE,)) == (ONE,)
    assert W.lambda_product((ONE,), (X,)) == (X + L,)
    assert W.lambda_product((X,), (X,)) == (X ** 2 + L * X,)
    assert check_conformal_associativity(W)


def test_printed_weyl_variant_fails():
    from diaconf.exactcore import substitute

    class Printed(type(weyl())):
        def product(self, a, b, lam):
            f = substitute(a[0], {"T": -lam, "x": T})
            g = substitute(b[0], {"T": T + lam, "x": X + lam})
            return (f * g,)

    r = check_conformal_associativity(Printed())
    assert not r and r.witness == ("x^1", "x^0", "x^0")


def test_no_unit_example_table():
    C = no_unit_example()
    w, x, one = C.basis_element("w"), C.basis_element(1), C.basis_element(0)
    assert C.lambda_product(w, w) == (ZERO, ZERO)
    assert C.lambda_product(w, x) == (ZERO, T)
    assert C.lambda_product(x, one) == (X - T - L, ZERO)
    assert check_conformal_associativity(C)


def test_diffcur():
    # d/dx does not preserve the ideal (x^3): d(x * x^2) = 0 but d(x) x^2 + x d(x^2) = 3 x^2
    with pytest.raises(ValueError, match="derivation"):
        diffcur(TRUNC, [[0, 1, 0], [0, 0, 2], [0, 0, 0]])
    d = [[0, 0, 0], [0, 0, 0], [0, 1, 0]]  # x^2 d/dx: x -> x^2 -> 0
    C = diffcur(TRUNC, d)
    assert C.lambda_product(C.basis_element(0), C.basis_element(1)) == (ZERO, ONE, L)
    assert C.lambda_product(C.basis_element(1), C.basis_element(1)) == (ZERO, ZERO, ONE)
    assert check_conformal_associativity(C)
    zero = diffcur(TRUNC, [[0] * 3 for _ in range(3)])
    assert zero.table == current(TRUNC).table
    with pytest.raises(ValueError, match="derivation"):
        diffcur(DUAL, [[0, 1], [0, 0]])


def test_diffcur_rejects_non_nilpotent():
    with pytest.raises(ValueError, match="nilpotent"):
        diffcur(DUAL, [[0, 0], [0, 1]])  # x -> x is a derivation of Q[x]/(x^2)


@pytest.mark.parametrize("make", [virasoro, weyl, no_unit_example,
                                  lambda: current(TRUNC), lambda: minus_functor(weyl())])
def test_sesquilinearity(make):
    assert check_sesquilinearity(make(), pairs=100)


def test_minus_functor():
    Cm = minus_functor(current(NONCOMM))
    assert check_conformal_lie(Cm)
    assert check_conformal_lie(minus_functor(weyl()))
    assert check_conformal_lie(minus_functor(no_unit_example()))
    comm = minus_functor(current(TRUNC))
    g = comm.generators()
    assert all(not any(comm.product(a, b, L)) for a in g for b in g)
    with pytest.raises(ValueError):
        minus_functor(virasoro())


def test_minus_of_weyl_on_x():
    Wm = minus_functor(weyl())
    # x(x+L) - x(x - T - L) evaluated with the skew substitution
    assert Wm.product((X,), (X,), L) == (X * (X + L) - X * (X - T - L),)


def test_zero_functor_products():
    C = current(NONCOMM)
    e, f = C.basis_element(0), C.basis_element(1)
    assert zero_vdash(C, e, f) == f
    assert not any(zero_vdash(C, (T, ZERO), f))
    assert not any(zero_dashv(C, e, (ZERO, T)))
    D = zero_functor(C, bound=1)
    assert D.dim == 4 and is_diassociative(D)


def test_zero_functor_filtration_error():
    with pytest.raises(FiltrationError):
        zero_functor(virasoro(), bound=1)


def test_n_products():
    V = virasoro()
    v = (ONE,)
    assert n_product(V, v, v, 0) == (T,)
    assert n_product(V, v, v, 1) == (Poly.const(2),)
    assert n_product(V, v, v, 2) == (ZERO,)


def test_coeff_product_current():
    C = current(NONCOMM)
    e, f = C.basis_element(0), C.basis_element(1)
    assert coeff_product(C, 0, e, 0, f) == {(0, 1): 1}
    assert coeff_product(C, 2, e, 3, f) == {(5, 1): 1}


@pytest.mark.parametrize("m,n", [(m, n) for m in range(-1, 3) for n in range(-1, 3)])
def test_virasoro_coefficients_are_witt(m, n):
    V = virasoro()
    v = (ONE,)
    got = coeff_product(V, m + 1, v, n + 1, v)
    want = {(m + n + 1, 0): Fraction(m - n)} if m != n else {}
    assert got == want


def test_coeff_element_normalizes_T():
    V = virasoro()
    # t^2 (x) T v = -2 t (x) v
    assert coeff_element(V, 2, (T,)) == {(1, 0): -2}


@pytest.mark.parametrize("make", [weyl, no_unit_example, lambda: current(TRUNC)])
def test_coefficient_algebra_associative(make):
    assert check_coefficient_associativity(make(), samples=60)


def test_units_of_current():
    C = current(DUAL)
    assert is_conformal_unit(C, C.basis_element(0))
    s = find_left_unit(C, 0)
    assert s.feasible and is_conformal_unit(C, s.unit)
    assert not is_conformal_unit(C, C.zero())
    assert not is_conformal_unit(virasoro(), (ONE,))


def test_zero_algebra_has_no_unit():
    C = current(Algebra(["a"], {}))
    for b in range(3):
        assert not find_left_unit(C, b).feasible


@pytest.mark.parametrize("bound", [1, 2, 3])
def test_no_unit_bounded(bound):
    s = find_left_unit(no_unit_example(), bound)
    assert not s.feasible
    assert s.certificate is not None


def test_unit_chain_small():
    c = unit_chain(2, n_max=3, t_degree=3)
    assert not c.feasible and c.specialization_infeasible


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_sesquilinearity_random_seeds(seed):
    rng = random.Random(seed)
    for C in (virasoro(), weyl(), no_unit_example()):
        a, b = C.random_element(rng), C.random_element(rng)
        ab = C.product(a, b, L)
        assert C.product(C.t_act(a), b, L) == tuple(-L * p for p in ab)
        assert C.product(a, C.t_act(b), L) == tuple((T + L) * p for p in ab)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_current_unit_implies_search_succeeds(seed):
    rng = random.Random(seed)
    c = Fraction(rng.randint(1, 4))
    # scaled unit of the dual numbers: basis 1/c, x
    A = Algebra(["u", "x"], {(0, 0): {0: 1 / c}, (0, 1): {1: 1 / c}, (1, 0): {1: 1 / c}})
    C = current(A)
    e = (Poly.const(c), ZERO)
    assert is_conformal_unit(C, e)
    assert find_left_unit(C, 0).feasible
