import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diaconf.constructions import random_nilpotent_leibniz
from diaconf.dialgebra import (
    Algebra,
    Dialgebra,
    bar_quotient,
    check_zero_identities,
    d_zero_ideal,
    engel_verdict,
    hat_extension,
    is_associative,
    is_di_jordan,
    is_di_variety,
    is_diassociative,
    is_jordan,
    is_leibniz,
    is_lie,
    jordan_plus,
    left_multiplication,
    leibniz_dialgebra,
    minus_product,
    plus_product,
    series,
)
from diaconf.exactcore import Subspace, identity, is_nilpotent
from diaconf.identities import ASSOCIATIVITY, variety_axioms
from diaconf.specfile import load_catalog, parse_spec

LEIB = Algebra(["a", "b"], {(0, 0): {1: 1}}, name="leib")  # [a, a] = b
SOLV = Algebra(["a", "b"], {(0, 1): {1: 1}, (1, 0): {1: -1}}, name="solv")
IDEM = Algebra(["a"], {(0, 0): {0: 1}})
ZERO_D = Dialgebra(["a", "b"], {}, {})


def catalog(kind, tag=None):
    return [s.build() for s in load_catalog(kind, tag)]


def test_zero_identities_examples():
    for A in catalog("algebra"):
        assert check_zero_identities(A.as_dialgebra())
    assert check_zero_identities(ZERO_D)
    # a |- b = b with -| = 0: every term of both identities vanishes
    assert check_zero_identities(Dialgebra(["a", "b"], {(0, 1): {1: 1}}, {}))
    # a |- a = a with -| = 0: (a -| a) |- a = 0 but (a |- a) |- a = a
    r = check_zero_identities(parse_spec("catalog:dias_zero_fail").build())
    assert not r and r.witness == ("a", "a", "a")


def test_d_zero_ideal():
    assert d_zero_ideal(IDEM.as_dialgebra()).dim == 0
    assert d_zero_ideal(ZERO_D).dim == 0
    D0 = d_zero_ideal(leibniz_dialgebra(LEIB))
    assert D0 == Subspace(2, [[0, 2]])  # [a,a] + [a,a]
    with pytest.raises(ValueError):
        d_zero_ideal(parse_spec("catalog:dias_zero_fail").build())


def test_bar_quotient():
    q = bar_quotient(leibniz_dialgebra(LEIB))
    assert q.algebra.dim == 1 and not q.algebra.table
    assert bar_quotient(ZERO_D).algebra.dim == 2
    q = bar_quotient(IDEM.as_dialgebra())
    assert q.algebra.table == IDEM.table


def test_hat_extension():
    H = hat_extension(ZERO_D)
    assert H.dim == 4 and not H.table
    H = hat_extension(IDEM.as_dialgebra())
    # bar e * bar e = bar e, bar e * a = a, a * bar e = a, a * a = 0
    assert H.dim == 2
    assert H.table == {(0, 0): ((0, 1),), (0, 1): ((1, 1),), (1, 0): ((1, 1),)}
    H = hat_extension(leibniz_dialgebra(LEIB))
    assert H.dim == 3
    # bar a |- a = [a, a] = b, a -| bar a = -[a, a] = -b
    assert H.mul(H.e(0), H.e(1)) == [0, 0, 1]
    assert H.mul(H.e(1), H.e(0)) == [0, 0, -1]
    assert is_lie(H)


def test_is_di_variety_examples():
    for D in catalog("dialgebra", "diassociative"):
        assert is_di_variety(D, [ASSOCIATIVITY])
    assert is_di_variety(leibniz_dialgebra(LEIB), variety_axioms("lie"))
    D = parse_spec("catalog:dias_cur1").build()
    left = dict(D.left)
    left[(1, 0)] = ((1, Fraction(1)),)  # perturb q |- p
    bad = Dialgebra(D.names, {k: dict(v) for k, v in left.items()}, {k: dict(v) for k, v in D.right.items()})
    assert not is_diassociative(bad)
    assert not is_di_variety(bad, [ASSOCIATIVITY])
    with pytest.raises(ValueError, match="linearize"):
        from diaconf.identities import JORDAN_IDENTITY

        is_di_variety(D, [JORDAN_IDENTITY])


def test_di_variety_coherence_on_catalog():
    lie = variety_axioms("lie")
    for s in load_catalog("dialgebra"):
        D = s.build()
        if not check_zero_identities(D):
            continue
        assert bool(is_di_variety(D, [ASSOCIATIVITY])) == bool(is_diassociative(D)), s.name
        lie_d = bool(is_di_variety(D, lie))
        # Lie dialgebras are exactly Leibniz algebras written with x -| y = -[y, x]
        L = minus_product(D)
        normalized = leibniz_dialgebra(Algebra(D.names, {k: dict(v) for k, v in D.left.items()}))
        assert lie_d == (is_leibniz(L).ok and normalized == D), s.name


def test_leibniz_checks():
    assert is_leibniz(LEIB) and not is_lie(LEIB)
    for A in catalog("algebra", "lie"):
        assert is_leibniz(A)


def test_minus_and_plus():
    comm = parse_spec("catalog:dual_numbers").build()
    assert not minus_product(comm.as_dialgebra()).table
    A = parse_spec("catalog:assoc_upper2").build()
    plus = plus_product(A.as_dialgebra())
    sym = jordan_plus(A)
    assert plus.table == {k: tuple((i, 2 * c) for i, c in v) for k, v in sym.table.items()}
    for D in catalog("dialgebra", "diassociative"):
        assert is_leibniz(minus_product(D))
        assert is_di_jordan(plus_product(D))


def test_left_multiplication():
    Z = Algebra.zero(2)
    assert left_multiplication(Z, Z.e(0)) == [[0, 0], [0, 0]]
    La = left_multiplication(LEIB, LEIB.e(0))
    assert La == [[0, 0], [1, 0]] and is_nilpotent(La)
    dual = parse_spec("catalog:dual_numbers").build()
    assert left_multiplication(dual, dual.e(0)) == identity(2)


def test_series_examples():
    # X_1 is the whole algebra, so the zero algebra reaches 0 at X_2
    r = series(Algebra.zero(2))
    assert r.dims == [2, 0] and r.zero_index == 2
    r = series(LEIB)
    assert r.dims == [2, 1, 0] and r.zero_index == 3
    for kind in ("lower_central", "derived", "penico"):
        r = series(IDEM, kind)
        assert not r.verdict and r.dims == [1]


def test_series_terms_decrease():
    for A in catalog("algebra"):
        for kind in ("lower_central", "derived", "penico"):
            r = series(A, kind)
            for a, b in zip(r.terms, r.terms[1:]):
                assert b <= a
            assert len(r.terms) <= A.dim + 1


def test_left_normed_series_agrees_for_leibniz():
    for A in catalog("algebra", "leibniz"):
        two_sided = series(A).dims
        terms = [Subspace.full(A.dim)]
        while True:
            nxt = Subspace(A.dim, [A.mul(e, u) for e in A.basis() for u in terms[-1].basis()])
            if nxt == terms[-1]:
                break
            terms.append(nxt)
            if nxt.dim == 0:
                break
        assert [t.dim for t in terms] == two_sided, A.name


def test_engel_examples():
    r = engel_verdict(LEIB)
    assert r.left_nilpotent and r.nilpotent
    r = engel_verdict(SOLV)
    assert not r.left_nilpotent and not r.nilpotent
    r = engel_verdict(Algebra.zero(3))
    assert r.left_nilpotent and r.nilpotent
    with pytest.raises(ValueError):
        engel_verdict(parse_spec("catalog:nonassoc_2").build())


def test_jordan_checks():
    assert is_jordan(parse_spec("catalog:jordan_sym2").build())
    assert not is_jordan(parse_spec("catalog:lie_sl2").build())
    r = is_di_jordan(parse_spec("catalog:lie_sl2").build())
    assert not r and len(r.witness) == 3


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10 ** 6))
def test_engel_on_random_nilpotent(dim, seed):
    L = random_nilpotent_leibniz(dim, random.Random(seed))
    assert is_leibniz(L)
    r = engel_verdict(L)
    assert r.left_nilpotent and r.nilpotent


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_perturbed_dialgebra_coherence(seed):
    rng = random.Random(seed)
    D = rng.choice(catalog("dialgebra", "diassociative"))
    left = {k: dict(v) for k, v in D.left.items()}
    i, j, k = (rng.randrange(D.dim) for _ in range(3))
    left.setdefault((i, j), {})[k] = left.get((i, j), {}).get(k, 0) + rng.choice([-1, 1, 2])
    P = Dialgebra(D.names, left, {k: dict(v) for k, v in D.right.items()})
    if check_zero_identities(P):
        assert bool(is_di_variety(P, [ASSOCIATIVITY])) == bool(is_diassociative(P))
        if is_diassociative(P):
            assert is_associative(hat_extension(P))
