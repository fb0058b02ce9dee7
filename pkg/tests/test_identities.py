import itertools
import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from diaconf.constructions import random_nilpotent_leibniz
from diaconf.dialgebra import Algebra, check_zero_identities, hat_extension, is_leibniz, leibniz_dialgebra
from diaconf.identities import (
    ANTICOMMUTATIVITY,
    ASSOCIATIVITY,
    COMMUTATIVITY,
    DASHV,
    DIASSOCIATIVE_AXIOMS,
    JORDAN_IDENTITY,
    VDASH,
    DiMagmaPoly,
    MagmaPoly,
    MultilinearBasis,
    TooLarge,
    catalan,
    center_of,
    consequence_space,
    decompose_by_center,
    di_identities,
    dias_quotient_dim,
    expansion_matrix,
    fill,
    holds_in,
    linearize,
    normal_forms,
    parse_tree,
    poly_from,
    psi,
    s_identity_space,
    shapes,
    variety_axioms,
)
from diaconf.specfile import load_catalog

SYM = poly_from([(1, (1, 2)), (1, (2, 1))])


def colored(text):
    return DiMagmaPoly.monomial(parse_tree(text))


def test_psi_symmetric_example():
    assert psi(SYM, 1) == poly_from([(1, (1, DASHV, 2)), (1, (2, VDASH, 1))])
    assert str(psi(SYM, 1)) == "x1 <| x2 + x2 |> x1"


def test_psi_center_two():
    f = poly_from([(1, (1, (2, 3))), (-1, ((1, 2), 3))])
    assert psi(f, 2) == poly_from([(1, (1, VDASH, (2, DASHV, 3))), (-1, ((1, VDASH, 2), DASHV, 3))])


def test_psi_leaf_and_range():
    x = MagmaPoly.monomial(1)
    assert psi(x, 1) == DiMagmaPoly.monomial(1)
    with pytest.raises(ValueError):
        psi(ASSOCIATIVITY, 4)
    with pytest.raises(ValueError):
        psi(ASSOCIATIVITY, 0)


def test_associativity_translates_to_three_axioms():
    got = set(di_identities([ASSOCIATIVITY]))
    want = {
        poly_from([(1, ((1, DASHV, 2), DASHV, 3)), (-1, (1, DASHV, (2, DASHV, 3)))]),
        poly_from([(1, ((1, VDASH, 2), DASHV, 3)), (-1, (1, VDASH, (2, DASHV, 3)))]),
        poly_from([(1, ((1, VDASH, 2), VDASH, 3)), (-1, (1, VDASH, (2, VDASH, 3)))]),
    }
    assert got == want
    assert di_identities([]) == []


def test_decompose_examples():
    f = poly_from([(1, (1, (2, 3))), (-1, ((1, 2), 3))])
    parts, residual = decompose_by_center(psi(f, 2))
    assert parts[0] == MagmaPoly() and parts[1] == f and not residual
    parts, residual = decompose_by_center(psi(SYM, 1))
    assert parts[0] == SYM and not parts[1]
    parts, _ = decompose_by_center(colored("(x1 |> (x2 <| x3))"))
    assert parts[1] == MagmaPoly.monomial((1, (2, 3)))
    assert center_of(parse_tree("(x1 |> (x2 <| x3))")) == 2


def test_decompose_reports_residual():
    # the root puts the center in x3, the inner <| puts it in x1: no leaf fits
    g = colored("((x1 <| x2) |> x3)")
    parts, residual = decompose_by_center(g)
    assert residual == g and not any(parts)


def test_psi_round_trip_exhaustive_degree_3():
    for shape in shapes(3):
        for perm in itertools.permutations([1, 2, 3]):
            m = MagmaPoly.monomial(fill(shape, perm))
            for k in (1, 2, 3):
                parts, residual = decompose_by_center(psi(m, k))
                assert not residual
                assert parts[k - 1] == m
                assert all(not p for i, p in enumerate(parts) if i != k - 1)


@st.composite
def polylinear(draw, n):
    terms = []
    for _ in range(draw(st.integers(1, 4))):
        shape = draw(st.sampled_from(shapes(n)))
        perm = draw(st.permutations(list(range(1, n + 1))))
        terms.append((draw(st.integers(-3, 3)), fill(shape, perm)))
    return poly_from(terms)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 5).flatmap(lambda n: st.tuples(st.just(n), polylinear(n), st.integers(1, n))))
def test_psi_round_trip_random(args):
    n, f, k = args
    assume(f)
    parts, residual = decompose_by_center(psi(f, k))
    assert not residual
    assert parts[k - 1] == f


def test_linearize():
    assert linearize(SYM) == [SYM]
    assert linearize(COMMUTATIVITY) == [COMMUTATIVITY]
    (lin,) = linearize(JORDAN_IDENTITY)
    assert lin.is_polylinear() and lin.degree == 4
    # x1, x2, x3 stand for the three copies of x, x4 for y
    back = lin.relabel({1: 1, 2: 1, 3: 1, 4: 2})
    assert back == 6 * JORDAN_IDENTITY
    with pytest.raises(ValueError):
        linearize(poly_from([(1, (1, 2)), (1, 1)]))


def test_multilinear_sizes():
    for n in range(1, 6):
        assert len(MultilinearBasis(n).monomials) == catalan(n - 1) * math.factorial(n)
        assert len(normal_forms(n)) == n * math.factorial(n)
    with pytest.raises(TooLarge):
        MultilinearBasis(6, colored=True, guard=1000)


def test_consequence_space_examples():
    C, basis = consequence_space([COMMUTATIVITY], 2)
    assert C.dim == 1 and len(basis.monomials) == 2
    C, basis = consequence_space([ASSOCIATIVITY], 3)
    assert len(basis.monomials) - C.dim == 6
    C, basis = consequence_space([ASSOCIATIVITY], 4)
    assert len(basis.monomials) - C.dim == 24


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_diassociative_quotient_dimension(n):
    assert dias_quotient_dim(n) == n * math.factorial(n)


def test_consequence_space_monotone():
    small, basis = consequence_space([COMMUTATIVITY], 3)
    big, _ = consequence_space([COMMUTATIVITY, ASSOCIATIVITY], 3)
    assert small <= big
    assert big.contains(basis.vector(ASSOCIATIVITY))


def test_expansion_matrix():
    mat, rows, cols = expansion_matrix(2)
    # x1 o x2 = x1 |- x2 + x2 -| x1
    r = rows.index[(1, 2)]
    assert sorted(c for c in mat[r] if c) == [1, 1]
    assert mat[r] != mat[rows.index[(2, 1)]]
    for n in (2, 3, 4):
        mat, rows, cols = expansion_matrix(n)
        assert len(cols) == n * math.factorial(n)
        assert all(sum(row) == 2 ** (n - 1) for row in mat)
    with pytest.raises(TooLarge):
        expansion_matrix(5)


@pytest.mark.parametrize("n,kernel", [(2, 0), (3, 3)])
def test_no_s_identities_small(n, kernel):
    r = s_identity_space(n)
    assert r.verdict and r.kernel_dim == kernel
    assert r.consequences_special


def test_translation_soundness_on_catalog():
    for name in ("assoc", "lie"):
        axioms = variety_axioms(name)
        for s in load_catalog("dialgebra"):
            D = s.build()
            if not check_zero_identities(D):
                continue
            psi_ok = all(holds_in(g, D) for g in di_identities(axioms))
            hat_ok = all(holds_in(f, hat_extension(D)) for f in axioms)
            assert psi_ok == hat_ok, (name, s.name)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_lie_translation_is_leibniz(seed, nilpotent):
    rng = random.Random(seed)
    if nilpotent:
        L = random_nilpotent_leibniz(3, rng)
    else:
        table = {(i, j): {k: rng.randint(-1, 1) for k in range(2)} for i in range(2) for j in range(2)
                 if rng.random() < 0.4}
        L = Algebra(["a", "b"], table)
    D = leibniz_dialgebra(L)
    psi_ok = all(holds_in(g, D) for g in di_identities(variety_axioms("lie")))
    assert psi_ok == bool(is_leibniz(L))


def test_colored_axioms_hold_in_diassociative_catalog():
    for s in load_catalog("dialgebra", "diassociative"):
        D = s.build()
        assert all(holds_in(f, D) for f in DIASSOCIATIVE_AXIOMS), s.name


def test_anticommutativity_translation():
    # psi_1(x1 x2 + x2 x1) = 0 says x1 -| x2 = -x2 |- x1
    assert psi(ANTICOMMUTATIVITY, 1) == poly_from([(1, (1, DASHV, 2)), (1, (2, VDASH, 1))])
