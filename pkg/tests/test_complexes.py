import io
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagtwin import complexes as cx
from flagtwin import graphs as gr
from flagtwin.errors import FaceNotFoundError, FormatError, ParameterError, QuotientError

import oracles


def c5():
    return gr.cycle_graph(5)


def rp2_graph():
    return gr.complement(gr.from_edges(6, [(v, (v + 1) % 5) for v in range(5)]))


# ---------------------------------------------------------------- flag complexes


def test_flag_k4_full_simplex():
    fv, euler = cx.f_vector(cx.flag_complex(gr.complete_graph(4), 3))
    assert fv == (4, 6, 4, 1) and euler == 1


def test_flag_c5_no_triangles():
    fv, _ = cx.f_vector(cx.flag_complex(c5(), 2))
    assert fv == (5, 5, 0)


def test_flag_triangle_count_matches_triple_loop():
    g = gr.sample_gnp(50, 0.5, 31)
    fv, _ = cx.f_vector(cx.flag_complex(g, 2))
    assert fv[2] == oracles.triangle_count_brute(g)


# ---------------------------------------------------------------- odd-rule complexes


def test_two_clique_c5_is_mobius_counts():
    z = cx.two_clique_complex(c5(), 4)
    fv, euler = cx.f_vector(z)
    assert fv[:3] == (5, 10, 5) and sum(fv[3:]) == 0
    assert euler == 0
    got = {f for fs in z.faces_by_dim for f in fs}
    assert got == oracles.odd_faces_brute(c5(), 5)


def test_two_clique_rp2_counts():
    z = cx.two_clique_complex(rp2_graph(), 5)
    fv, euler = cx.f_vector(z)
    assert fv[:3] == (6, 15, 10) and sum(fv[3:]) == 0
    assert euler == 1


def test_two_clique_edgeless_is_complete_one_complex():
    g = gr.Graph(6, (0,) * 6)
    z = cx.two_clique_complex(g, 5)
    fv, _ = cx.f_vector(z)
    assert fv == (6, 15, 0, 0, 0, 0)


def test_max_dim_cutoff_and_monotonicity():
    g = gr.sample_gnp(10, 0.5, 8)
    small = cx.two_clique_complex(g, 2)
    big = cx.two_clique_complex(g, 5)
    assert small.faces_by_dim == big.faces_by_dim[:3]
    fl_small = cx.flag_complex(g, 1)
    fl_big = cx.flag_complex(g, 4)
    assert fl_small.faces_by_dim == fl_big.faces_by_dim[:2]


# ---------------------------------------------------------------- deleted join


def test_sdj_single_vertex():
    g = gr.Graph(1, (0,))
    join, inv = cx.separated_deleted_join(g, 3)
    assert cx.f_vector(join)[0] == (2, 0, 0, 0)
    assert inv.apply((0,)) == (1,) and inv.apply((1,)) == (0,)


def test_sdj_k3_two_disjoint_triangles():
    join, _ = cx.separated_deleted_join(gr.complete_graph(3), 3)
    faces = set(join.all_faces())
    minus = {(0,), (2,), (4,), (0, 2), (0, 4), (2, 4), (0, 2, 4)}
    plus = {tuple(sorted(v + 1 for v in f)) for f in minus}
    assert faces == minus | plus


def test_sdj_c5_doubles_the_quotient():
    join, inv = cx.separated_deleted_join(c5(), 4)
    f_join, _ = cx.f_vector(join)
    q = cx.quotient_by_free_involution(join, inv)
    f_q, _ = cx.f_vector(q)
    assert f_join == tuple(2 * x for x in f_q)
    assert q == cx.two_clique_complex(c5(), 4)


@pytest.mark.parametrize("seed", range(12))
def test_sdj_matches_brute_force(seed):
    g = gr.sample_gnp(7, 0.5, 50 + seed)
    join, _ = cx.separated_deleted_join(g, 6)
    assert set(join.all_faces()) == oracles.sdj_faces_brute(g, 6)


def test_involution_equivariance():
    g = gr.sample_gnp(9, 0.4, 17)
    join, inv = cx.separated_deleted_join(g, 5)
    for faces in join.faces_by_dim:
        images = {inv.apply(f) for f in faces}
        assert images == set(faces)


def test_quotient_two_points():
    two = cx.Complex(2, 0, (((0,), (1,)),))
    q = cx.quotient_by_free_involution(two, cx.Involution((1, 0)))
    assert cx.f_vector(q)[0] == (1,)


def test_quotient_rejects_adjacent_orbit():
    edge = cx.Complex(2, 1, (((0,), (1,)), ((0, 1),)))
    with pytest.raises(QuotientError):
        cx.quotient_by_free_involution(edge, cx.Involution((1, 0)))


def test_quotient_rejects_distance_two():
    # 4-cycle 0-2-1-3 with (0,1) and (2,3) swapped: 0 and 1 share neighbors
    square = cx._from_face_iter(
        4, cx.close_downward([(0, 2), (1, 2), (0, 3), (1, 3)]), 1, False
    )
    with pytest.raises(QuotientError):
        cx.quotient_by_free_involution(square, cx.Involution((1, 0, 3, 2)))


def test_involution_must_be_fixed_point_free():
    with pytest.raises(ParameterError):
        cx.Involution((0, 1))
    with pytest.raises(ParameterError):
        cx.Involution((1, 2, 0))


def test_equivalence_check_examples():
    assert cx.check_construction_equivalence(c5())
    assert cx.check_construction_equivalence(gr.complete_graph(4))
    assert cx.check_construction_equivalence(rp2_graph())


@pytest.mark.parametrize("seed", range(30))
def test_equivalence_random_with_public_pipeline(seed):
    n = 5 + seed % 6
    g = gr.sample_gnp(n, (0.2, 0.5, 0.8)[seed % 3], 300 + seed)
    assert cx.check_construction_equivalence(g)
    join, inv = cx.separated_deleted_join(g, n - 1)
    q = cx.quotient_by_free_involution(join, inv)
    assert q == cx.two_clique_complex(g, n - 1)


# ---------------------------------------------------------------- links


def test_link_vertex_in_full_simplex():
    full = cx.flag_complex(gr.complete_graph(4), 3)
    lk = cx.link(full, (0,))
    assert {f for fs in lk.faces_by_dim for f in fs} == set(
        cx.close_downward([(1, 2, 3)])
    )


def test_link_edge_in_boundary_tetrahedron():
    full = cx.flag_complex(gr.complete_graph(4), 3)
    boundary = cx.Complex(4, 2, full.faces_by_dim[:3])
    lk = cx.link(boundary, (0, 1))
    assert cx.f_vector(lk)[0] == (2,)


def test_link_missing_face_error():
    full = cx.flag_complex(gr.complete_graph(3), 2)
    with pytest.raises(FaceNotFoundError):
        cx.link(full, (0, 5))


@pytest.mark.parametrize("seed", range(8))
def test_link_of_flag_is_flag_of_common_neighborhood(seed):
    g = gr.sample_gnp(15, 0.45, 400 + seed)
    fc = cx.flag_complex(g, 4)
    for v in range(0, g.n, 5):
        nbrs = g.neighbors(v)
        if not nbrs:
            continue
        lk = cx.link(fc, (v,))
        sub_edges = [
            (a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1 :] if g.has_edge(a, b)
        ]
        induced = gr.from_edges(g.n, sub_edges)
        expected = set()
        for f in cx.flag_complex(induced, 3).all_faces():
            if set(f) <= set(nbrs):
                expected.add(f)
        for w in nbrs:
            expected.add((w,))
        assert {f for f in lk.all_faces()} == expected


# ---------------------------------------------------------------- bidegree pieces


def test_bidegree_1_1_is_nonadjacency_graph():
    g = c5()
    join, _ = cx.separated_deleted_join(g, 4)
    pi = cx.bidegree_subcomplex(join, 1, 1)
    expected_edges = {
        tuple(sorted((2 * u, 2 * v + 1)))
        for u in range(5)
        for v in range(5)
        if u != v and not g.has_edge(u, v)
    }
    assert set(pi.faces(1)) == expected_edges


def test_bidegree_k_0_is_minus_clique_complex():
    # generated by the minus 3-cliques: the downward closure of g's triangles
    g = gr.sample_gnp(8, 0.6, 5)
    join, _ = cx.separated_deleted_join(g, 7)
    pi = cx.bidegree_subcomplex(join, 3, 0)
    triangles = [f for f in cx.flag_complex(g, 2).faces(2)]
    expected = {
        tuple(2 * v for v in f) for f in cx.close_downward(triangles)
    }
    assert {f for f in pi.all_faces()} == expected


def test_bidegree_dimension_bound_and_errors():
    g = gr.sample_gnp(8, 0.5, 6)
    join, _ = cx.separated_deleted_join(g, 7)
    for k, l in ((1, 1), (2, 1), (2, 2)):
        pi = cx.bidegree_subcomplex(join, k, l)
        assert pi.dim <= k + l - 1
    with pytest.raises(ParameterError):
        cx.bidegree_subcomplex(cx.flag_complex(g, 2), 1, 1)


# ---------------------------------------------------------------- f-vectors


def test_f_vector_examples():
    z = cx.two_clique_complex(c5(), 2)
    assert cx.f_vector(z) == ((5, 10, 5), 0)
    zz = cx.two_clique_complex(rp2_graph(), 2)
    assert cx.f_vector(zz) == ((6, 15, 10), 1)
    full = cx.flag_complex(gr.complete_graph(6), 5)
    assert cx.f_vector(full)[1] == 1


def test_expected_face_count_closed_forms():
    # at p=1 only the one-sided term survives
    assert cx.expected_face_count(10, 1.0, 2) == 2 * comb(10, 3)
    assert cx.expected_face_count(7, 1.0, 3) == 2 * comb(7, 4)
    # at p=0 only all-crossing-free terms with no internal edges survive
    assert cx.expected_face_count(5, 0.0, 1) == 2 * 5 * 4
    assert cx.expected_face_count(5, 0.0, 2) == 0
    assert cx.expected_face_count(6, 0.0, 0) == 12


def test_expected_face_count_is_exact_rational():
    val = cx.expected_face_count(9, 0.3, 2)
    assert isinstance(val, Fraction)
    p = Fraction(0.3)
    manual = (
        2 * comb(9, 3) * p**3
        + 2 * comb(9, 2) * 7 * p * (1 - p) ** 2
    )
    assert val == manual


# ---------------------------------------------------------------- structure


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 9), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_closure_invariant(n, p, seed):
    g = gr.sample_gnp(n, p, seed)
    for c in (cx.flag_complex(g, 3), cx.two_clique_complex(g, 4)):
        cx.validate_closure(c)
    join, _ = cx.separated_deleted_join(g, 4)
    cx.validate_closure(join)


def test_faces_sorted_and_indexable():
    g = gr.sample_gnp(9, 0.5, 12)
    z = cx.two_clique_complex(g, 3)
    for k in range(4):
        faces = z.faces(k)
        assert list(faces) == sorted(faces)
        for i, f in enumerate(faces):
            assert z.face_index(f) == i


def test_complex_io_roundtrip():
    g = gr.sample_gnp(8, 0.55, 21)
    z = cx.two_clique_complex(g, 3)
    buf = io.StringIO()
    cx.write_complex(z, buf)
    buf.seek(0)
    back = cx.read_complex(buf)
    assert back.faces_by_dim == z.faces_by_dim and back.n == z.n and back.max_dim == z.max_dim


def test_complex_reader_rejects_bad_input():
    with pytest.raises(FormatError):
        cx.read_complex(io.StringIO("3\n"))
    with pytest.raises(FormatError):
        cx.read_complex(io.StringIO("3 1\ndim 0 1\n0\ndim 1 1\n0 1\n"))  # missing vertex 1
