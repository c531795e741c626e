from fractions import Fraction as Q

import pytest

import weylpat.roots as roots_mod
from weylpat.errors import InvalidCartanType
from weylpat.roots import RationalSpan, build_root_system, dot, inner_product, reflect

ROOT_COUNTS = {
    "A1": 2, "A2": 6, "A3": 12, "A4": 20,
    "B2": 8, "B3": 18, "B4": 32,
    "C3": 18, "C4": 32,
    "D4": 24, "G2": 12, "F4": 48,
}


@pytest.mark.parametrize("cartan_type,count", sorted(ROOT_COUNTS.items()))
def test_root_counts(cartan_type, count):
    rs = build_root_system(cartan_type)
    assert len(rs.roots) == count
    assert rs.num_positive * 2 == count
    assert len(rs.simple) == rs.rank


def test_products():
    rs = build_root_system("A1xA1")
    assert len(rs.roots) == 4
    assert rs.ambient_dim == 2
    assert rs.rank == 2
    a, b = (rs.roots[i] for i in rs.simple)
    assert dot(a, b) == 0

    ab = build_root_system("A2xB2")
    assert len(ab.roots) == 14
    assert ab.rank == 4
    # factors sit in orthogonal coordinate blocks
    for i in ab.simple[:2]:
        for j in ab.simple[2:]:
            assert inner_product(ab, ab.roots[i], ab.roots[j]) == 0
    assert ab.cartan_matrix[0][2] == 0 and ab.cartan_matrix[2][0] == 0


def test_aliases_and_interning():
    assert build_root_system("B1") is build_root_system("A1")
    assert build_root_system("C1") is build_root_system("A1")
    assert build_root_system("A2") is build_root_system("A2")
    # C2 keeps its own realization but has the B2 root count
    c2 = build_root_system("C2")
    assert c2.cartan_type == "C2"
    assert len(c2.roots) == 8
    long_count = sum(1 for r in c2.roots if dot(r, r) == 4)
    assert long_count == 4  # the +-2e_i roots


@pytest.mark.parametrize("bad", ["D1", "D2", "E5", "E9", "F3", "F5", "G3", "A0",
                                 "", "Q3", "A", "3A", "A2x", "xA2", "A2xxB2", "a2"])
def test_rejected_types(bad):
    with pytest.raises(InvalidCartanType):
        build_root_system(bad)


def test_exceptional_e_series():
    assert len(build_root_system("E6").roots) == 72
    assert len(build_root_system("E7").roots) == 126
    assert len(build_root_system("E8").roots) == 240


@pytest.mark.parametrize("cartan_type", sorted(ROOT_COUNTS))
def test_reflection_table_is_total_and_involutive(cartan_type):
    rs = build_root_system(cartan_type)
    n = len(rs.roots)
    for a in range(n):
        row = rs.reflection_table[a]
        assert sorted(row) == list(range(n))  # a permutation of the roots
        for b in range(n):
            assert rs.reflection_table[a][row[b]] == b
        assert row[a] == rs.negative_of(a)


@pytest.mark.parametrize("cartan_type", sorted(ROOT_COUNTS))
def test_positive_roots_decompose_over_simples(cartan_type):
    rs = build_root_system(cartan_type)
    for i in rs.positive:
        assert all(c >= 0 for c in rs.simple_coords[i])
        assert rs.heights[i] >= 1
    # exactly the simple roots have height 1
    height_one = {i for i, h in enumerate(rs.heights) if h == 1}
    assert height_one == set(rs.simple)
    # halves match under negation
    for i in rs.positive:
        assert not rs.is_positive(rs.negative_of(i))


def test_reflect_matches_table_and_formula():
    rs = build_root_system("A2")
    a1, a2 = rs.simple
    assert reflect(rs, a1, rs.roots[a1]) == rs.roots[rs.negative_of(a1)]
    # fixed hyperplane
    v = (Q(1), Q(1), Q(1))
    assert reflect(rs, a1, v) == v
    # s_1(a2) = a1 + a2
    expected = tuple(x + y for x, y in zip(rs.roots[a1], rs.roots[a2]))
    assert reflect(rs, a1, rs.roots[a2]) == expected
    assert rs.reflection_table[a1][a2] == rs.index_of(expected)


def test_reflect_agrees_with_table_on_all_root_pairs():
    for cartan_type in ["A3", "B3", "G2"]:
        rs = build_root_system(cartan_type)
        for a in range(len(rs.roots)):
            for b in range(len(rs.roots)):
                assert reflect(rs, a, rs.roots[b]) == rs.roots[rs.reflection_table[a][b]]


def test_inner_product():
    rs = build_root_system("A2")
    a1, a2 = (rs.roots[i] for i in rs.simple)
    assert inner_product(rs, a1, a1) == 2
    assert inner_product(rs, a1, a2) == -1
    zero = (Q(0),) * 3
    assert inner_product(rs, a1, zero) == 0
    assert inner_product(rs, a1, a2) == inner_product(rs, a2, a1)
    with pytest.raises(ValueError):
        inner_product(rs, (Q(1),), a2)


CARTAN_MATRICES = {
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "B3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    "C3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "D4": ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2)),
    "G2": ((2, -3), (-1, 2)),
    "F4": ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -2, 2, -1), (0, 0, -1, 2)),
}


@pytest.mark.parametrize("cartan_type,matrix", sorted(CARTAN_MATRICES.items()))
def test_cartan_matrices(cartan_type, matrix):
    rs = build_root_system(cartan_type)
    assert rs.cartan_matrix == matrix


@pytest.mark.parametrize("cartan_type", sorted(ROOT_COUNTS))
def test_cartan_matrix_shape_invariants(cartan_type):
    rs = build_root_system(cartan_type)
    cm = rs.cartan_matrix
    for i in range(rs.rank):
        assert cm[i][i] == 2
        for j in range(rs.rank):
            if i != j:
                assert -3 <= cm[i][j] <= 0
                assert (cm[i][j] == 0) == (cm[j][i] == 0)
                assert cm[i][j] * cm[j][i] in (0, 1, 2, 3)


def test_deterministic_reconstruction():
    before = build_root_system("B3")
    snapshot = (before.roots, before.simple, before.positive, before.cartan_matrix)
    roots_mod._SYSTEMS.pop("B3")
    after = build_root_system("B3")
    assert (after.roots, after.simple, after.positive, after.cartan_matrix) == snapshot
    assert after == before


def test_two_root_lengths_in_g2():
    rs = build_root_system("G2")
    norms = sorted({dot(r, r) for r in rs.roots})
    assert len(norms) == 2
    assert norms[1] == 3 * norms[0]


def test_rational_span():
    rs = build_root_system("A3")
    a1, a2, a3 = (rs.roots[i] for i in rs.simple)
    span = RationalSpan([a1, a2])
    assert span.contains(tuple(x + y for x, y in zip(a1, a2)))
    assert not span.contains(a3)
    coeffs = span.coefficients(tuple(2 * x + y for x, y in zip(a1, a2)))
    assert coeffs == (Q(2), Q(1))
    with pytest.raises(ValueError):
        RationalSpan([a1, tuple(-x for x in a1)])
