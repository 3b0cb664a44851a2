import itertools
import math

import pytest

from cubrig.boxcat import mask_of, omega
from cubrig.cubeset import (
    BipointedComplex, k_complex, standard_cube, theta_complex,
)
from cubrig.necklace import Necklace
from cubrig.pathcat import (
    LoopDetected, Path, PathPreorder, bruhat_compare, leadsto_closure,
    leadsto_pairs, path_category, paths, square_moves, step_word,
)
from cubrig.posets import bruhat, is_order_isomorphism


def cube_bp(n, a, b):
    return BipointedComplex(standard_cube(n).to_complex(), (a, a), (b, b))


def test_constant_path_unique():
    for n in (1, 2, 3):
        ps = paths(cube_bp(n, 0, 0))
        assert len(ps) == 1 and ps[0].edges == ()


def test_path_counts_are_factorials():
    for n in range(1, 5):
        assert len(paths(cube_bp(n, 0, omega(n)))) == math.factorial(n)


def test_paths_empty_when_not_below():
    ps = paths(cube_bp(2, 0b01, 0b10))
    assert ps == []


def test_square_single_move():
    pre = leadsto_closure(cube_bp(2, 0, 0b11))
    assert len(pre) == 2
    strict = [(p, q) for p in pre.paths for q in pre.paths
              if p != q and pre.leadsto(p, q)]
    assert len(strict) == 1
    p, q = strict[0]
    assert step_word(p) == (2, 1)
    assert step_word(q) == (1, 2)


def test_segment_trivial_preorder():
    pre = leadsto_closure(cube_bp(1, 0, 1))
    assert len(pre) == 1 and pre.is_partial_order()


def test_path_preorder_antisymmetric_on_cubes():
    for n in range(1, 4):
        for b in range(1 << n):
            pre = leadsto_closure(cube_bp(n, 0, b))
            assert pre.is_partial_order()


def test_cube3_hasse_matches_bruhat_figure():
    pre, target, mapping = bruhat_compare(3, 0, omega(3))
    poset = pre.to_poset()
    expected = {
        ((3, 2, 1), (2, 3, 1)), ((3, 2, 1), (3, 1, 2)),
        ((2, 3, 1), (2, 1, 3)), ((3, 1, 2), (1, 3, 2)),
        ((2, 1, 3), (1, 2, 3)), ((1, 3, 2), (1, 2, 3)),
    }
    got = {(mapping[x], mapping[y]) for x, y in poset.cover_pairs()}
    assert got == expected


def test_bruhat_compare_all_pairs_small():
    for n in range(1, 4):
        for a in range(1 << n):
            for b in range(1 << n):
                if (a | b) == b:
                    pre, target, mapping = bruhat_compare(n, a, b)
                    assert len(pre) == len(target)


def test_bruhat_compare_incomparable():
    pre, target, mapping = bruhat_compare(2, 0b01, 0b10)
    assert pre is None and len(target) == 0 and mapping == {}


def test_composition_monotone_in_cube3():
    n = 3
    complex_ = standard_cube(n).to_complex()
    cat = path_category(complex_)
    mid = 0b001
    top = omega(n)
    left = cat.hom((0, 0), (mid, mid))
    right = cat.hom((mid, mid), (top, top))
    whole = cat.hom((0, 0), (top, top))
    for g1 in left.paths:
        for g2 in left.paths:
            if not left.leadsto(g1, g2):
                continue
            for b1 in right.paths:
                for b2 in right.paths:
                    if right.leadsto(b1, b2):
                        assert whole.leadsto(cat.compose(g1, b1),
                                             cat.compose(g2, b2))


def test_path_category_point():
    cat = path_category(standard_cube(0).to_complex())
    hom = cat.hom((0, 0), (0, 0))
    assert len(hom) == 1
    u = cat.unit((0, 0))
    assert cat.compose(u, u) == u


def test_wedge_splitting_on_necklace():
    t = Necklace((2, 1))
    complex_ = t.to_complex()
    joint = t.prefix_mask(1)
    whole = leadsto_closure(BipointedComplex(complex_, (0, 0), (t.omega, t.omega)))
    left = leadsto_closure(BipointedComplex(complex_, (0, 0), (joint, joint)))
    right = leadsto_closure(BipointedComplex(complex_, (joint, joint), (t.omega, t.omega)))
    assert len(whole) == len(left) * len(right)
    for g1 in left.paths:
        for b1 in right.paths:
            combined = g1.compose(b1)
            assert any(p.edges == combined.edges for p in whole.paths)
    # order compatible both ways
    for g1, g2 in itertools.product(left.paths, repeat=2):
        for b1, b2 in itertools.product(right.paths, repeat=2):
            lhs = whole.leadsto(g1.compose(b1), g2.compose(b2))
            rhs = left.leadsto(g1, g2) and right.leadsto(b1, b2)
            assert lhs == rhs


def test_subnecklace_restriction():
    t = Necklace((2, 2))
    complex_ = t.to_complex()
    a = 0b01
    b = t.global_vertex(2, 0b01)
    sub, flag = t.subnecklace(a, b)
    inner = sub.to_complex()
    restricted = paths(BipointedComplex(complex_, (a, a), (b, b)))
    small = paths(BipointedComplex(inner, (0, 0), (sub.omega, sub.omega)))
    assert len(restricted) == len(small)


def test_counterexample_theta():
    x, (u, v, w), (a, b) = theta_complex()
    pre = leadsto_closure(BipointedComplex(x, a, b))
    assert len(pre) == 3
    pu = next(p for p in pre.paths if p.edges == (u,))
    pv = next(p for p in pre.paths if p.edges == (v,))
    pw = next(p for p in pre.paths if p.edges == (w,))
    assert pre.leadsto(pu, pv) and pre.leadsto(pv, pw)
    assert pre.leadsto(pu, pw)
    assert not pre.leadsto(pw, pu) and not pre.leadsto(pv, pu)
    assert pre.is_partial_order()
    # the order is the 3-chain u -> v -> w
    poset = pre.to_poset()
    assert poset.height() == 3


def test_loop_detected_on_k():
    with pytest.raises(LoopDetected):
        paths(BipointedComplex(k_complex(), "0", "1"))


def test_square_moves_shape():
    moves = square_moves(standard_cube(2).to_complex())
    assert len(moves) == 1
    src, dst, u, v = moves[0]
    assert u == (0, 0) and v == (0b11, 0b11)
    assert len(src) == 2 and len(dst) == 2


def test_degenerate_representations_collapse():
    # random degenerate presentations reduce to the canonical class: walk a
    # path of the square with repeated vertices spliced in; the class only
    # records nondegenerate edges
    complex_ = standard_cube(2).to_complex()
    bp = BipointedComplex(complex_, (0, 0), (0b11, 0b11))
    ps = paths(bp)
    for p in ps:
        assert len(p.vertices) == len(p.edges) + 1
        assert all(x != y for x, y in zip(p.vertices, p.vertices[1:]))
