import itertools

import pytest

from cubrig.boxcat import BoxMap, enumerate_maps, mask_of, omega
from cubrig.cubeset import (
    BipointedComplex, ComplexMap, FormalCell, SubcomplexOfCube, boundary,
    bipointed_cube, collapsed_square, complex_from_json, coproduct,
    critical_edge, inner_cube, inner_open_box, k_complex, map_from_boxmap,
    open_box, pairs_of_complex, point_complex, pushout, q_complex,
    standard_cube, theta_complex, wedge,
)


def test_standard_cube_counts():
    c3 = standard_cube(3).to_complex()
    assert c3.cell_counts() == (8, 12, 6, 1)
    assert c3.validate() == []


def test_boundary_square():
    b2 = boundary(2).to_complex()
    assert b2.cell_counts() == (4, 4)
    assert b2.validate() == []


def test_open_box_counts():
    ob = open_box(2, 1, 1).to_complex()
    assert ob.cell_counts() == (4, 3)
    # the removed edge is the pair ({1}, {1,2})
    assert not open_box(2, 1, 1).has_pair(0b01, 0b11)
    assert open_box(2, 1, 1).has_pair(0b10, 0b11)
    assert ob.validate() == []


def test_open_box_range_checks():
    with pytest.raises(ValueError):
        open_box(1, 1, 1)
    with pytest.raises(ValueError):
        open_box(3, 4, 0)


def test_subcomplex_closure_roundtrip():
    for sub in (standard_cube(3), boundary(3), open_box(3, 2, 0)):
        assert sub.is_closed()
        assert pairs_of_complex(sub.to_complex()) == sub.pairs


def test_boundary_contains_all_but_top():
    n = 3
    sub = boundary(n)
    assert (0, omega(n)) not in sub.pairs
    # pairs a <= b in the subset lattice: 3 choices per coordinate
    assert len(sub.pairs) == 3 ** n - 1


def test_act_resolves_degenerate_faces():
    # in K, the left square's (1,0) face is the degenerate edge at vertex 1
    k = k_complex()
    assert k.validate() == []
    fc = k.act(k.nondeg(2, "sL"), BoxMap.face(2, 1, 0))
    assert not fc.is_nondegenerate()
    assert fc.key == "1"


def test_k_complex_shape():
    k = k_complex()
    assert k.cell_counts() == (2, 3, 2)
    assert k.validate() == []
    assert k.edge_endpoints("f") == ("0", "1")
    assert k.edge_endpoints("u") == ("1", "0")


def test_validate_catches_dangling_target():
    cells = {0: ["a"], 1: ["e"]}
    faces = {(1, "e"): {(1, 0): FormalCell(BoxMap.identity(0), "a"),
                        (1, 1): FormalCell(BoxMap.identity(0), "ghost")}}
    from cubrig.cubeset import CubicalComplex
    bad = CubicalComplex(1, cells, faces)
    assert any("missing cell" in p for p in bad.validate())


def test_mono_criterion_on_box_maps():
    # a complex map between cubes is mono iff the box map is
    for n, m in [(1, 1), (1, 2), (2, 2), (2, 1)]:
        dst = standard_cube(m).to_complex()
        src = standard_cube(n).to_complex()
        for h in enumerate_maps(n, m):
            cm = map_from_boxmap(h, src, dst)
            assert cm.validate() == []
            assert cm.is_mono() == h.is_mono()


def test_pushout_along_identity():
    c = standard_cube(2).to_complex()
    ident = ComplexMap.identity(c)
    result, leg_b, leg_c = pushout(ident, ident)
    assert result.cell_counts() == c.cell_counts()
    assert result.validate() == []


def test_collapsed_square():
    sq, leg = collapsed_square()
    assert sq.cell_counts() == (2, 2, 1)
    assert sq.validate() == []
    assert leg.validate() == []


def test_theta_complex_counterexample_shape():
    x, (u, v, w), (a, b) = theta_complex()
    assert x.cell_counts() == (2, 3, 2)
    assert x.validate() == []
    assert len({u, v, w}) == 3
    assert a != b
    for e in (u, v, w):
        assert x.edge_endpoints(e) == (a, b)


def test_inner_cube_2():
    c, p = inner_cube(2, 1, 1)
    # 3 vertices: bottom and {1} are identified
    assert c.n_cells(0) == 3
    assert p[0] == p[0b01]
    assert len({p[m] for m in range(4)}) == 3
    assert c.n_cells(2) == 1
    assert c.validate() == []


def test_inner_cube_pole_convention():
    # for eps=0 the identified pair is top and top minus {i}
    n = 2
    c, p = inner_cube(2, 2, 0)
    assert p[omega(2)] == p[omega(2) & ~0b10]
    assert critical_edge(2, 2, 0) == (0b01, 0b11)


def test_inner_open_box():
    c, p = inner_open_box(2, 1, 1)
    assert c.n_cells(0) == 3
    assert c.n_cells(2) == 0
    assert c.validate() == []


def test_q_complex_vertices():
    for n in range(4):
        c, pi = q_complex(n)
        assert c.validate() == []
        classes = {pi[m] for m in range(1 << n)}
        assert len(classes) == n + 1
        # pi identifies masks exactly by their largest coordinate
        for m1 in range(1 << n):
            for m2 in range(1 << n):
                assert (pi[m1] == pi[m2]) == (m1.bit_length() == m2.bit_length())


def test_q1_is_the_segment():
    c, pi = q_complex(1)
    assert c.cell_counts() == (2, 1)


def test_q2_pushout_vertex_count():
    c, pi = q_complex(2)
    assert c.n_cells(0) == 3


def test_q_vertex_actions_match_simplex_actions():
    # the face/degeneracy actions on vertex classes agree with the simplex ones
    from cubrig.boxcat import sup
    for n in range(1, 4):
        for i in range(1, n + 1):
            for mask in range(1 << (n - 1)):
                img = BoxMap.face(n, i, 0).apply(mask)
                d_i = lambda v: v if v < i else v + 1
                assert sup(img) == d_i(sup(mask))
            img0 = BoxMap.face(n, 1, 1)
            for mask in range(1 << (n - 1)):
                assert sup(img0.apply(mask)) == sup(mask) + 1
        for i in range(1, n):
            g = BoxMap.connection(n, i)
            for mask in range(1 << n):
                s_i = lambda v: v if v <= i else v - 1
                assert sup(g.apply(mask)) == s_i(sup(mask))
        s = BoxMap.degeneracy(n, 1)
        for mask in range(1 << n):
            assert sup(s.apply(mask)) == max(sup(mask) - 1, 0)


def test_wedge_unit_law():
    pt = point_complex()
    key = pt.cells(0)[0]
    p = BipointedComplex(pt, key, key)
    s = bipointed_cube(1)
    w = wedge(p, s)
    assert w.complex.cell_counts() == (2, 1)
    w2 = wedge(s, p)
    assert w2.complex.cell_counts() == (2, 1)


def test_wedge_two_segments():
    s = bipointed_cube(1)
    w = wedge(s, s)
    assert w.complex.cell_counts() == (3, 2)
    assert w.a != w.b
    assert w.complex.validate() == []


def test_wedge_cube2_cube3_matches_necklace_counts():
    w = wedge(bipointed_cube(2), bipointed_cube(3))
    # counts of the necklace (2, 3): cells of each bead, joints shared
    c2 = standard_cube(2).to_complex().cell_counts()
    c3 = standard_cube(3).to_complex().cell_counts()
    expected = [c2[k] + c3[k] for k in range(3)] + [c3[3]]
    expected[0] -= 1
    assert list(w.complex.cell_counts()) == expected
    assert w.complex.validate() == []


def test_coproduct():
    c, injs = coproduct([point_complex(), standard_cube(1).to_complex()])
    assert c.n_cells(0) == 3 and c.n_cells(1) == 1
    assert all(i.validate() == [] for i in injs)


def test_json_roundtrip():
    k = k_complex()
    data = __import__("json").loads(k.dump_json())
    k2 = complex_from_json(data)
    assert k2.cell_counts() == k.cell_counts()
    assert k2.validate() == []
    assert k.dump_json() == complex_from_json(data).dump_json()


def test_pushout_renormalizes_degenerate_classes():
    # collapsing one edge of the square keeps the square nondegenerate
    c, p = inner_cube(2, 1, 1)
    assert c.n_cells(1) == 3
    assert c.n_cells(2) == 1
