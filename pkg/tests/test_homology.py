from fractions import Fraction

import pytest

from cubrig.posets import FinitePoset, bruhat, nerve, ordered_partitions, product
from cubrig.sset import TruncSSet, FormalSimplex, op_identity
from cubrig.homology import (
    HomologyReport, euler_characteristic, homology,
    is_contractible_homologically, is_sphere_homologically,
    normalized_chain_complex, smith_invariant_factors,
)


# ---------------------------------------------------------------------------
# independent oracle: dense rank over Q plus a fresh textbook Smith routine

def naive_rank(mat):
    mat = [[Fraction(v) for v in row] for row in mat]
    rank = 0
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c] / mat[r][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return r


def naive_smith(mat):
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0]) if m else 0
    divs = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(m[i][j]), i, j) for i in range(t, rows)
              for j in range(t, cols) if m[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        again = True
        while again:
            again = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        again = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for i in range(rows):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for i in range(rows):
                            m[i][t], m[i][j] = m[i][j], m[i][t]
                        again = True
            if not again:
                bad = next(((i, j) for i in range(t + 1, rows)
                            for j in range(t + 1, cols) if m[i][j] % m[t][t]), None)
                if bad is not None:
                    i, _ = bad
                    m[t] = [a + b for a, b in zip(m[t], m[i])]
                    again = True
        divs.append(abs(m[t][t]))
        t += 1
    return divs


def naive_homology(space):
    sizes, boundaries = normalized_chain_complex(space)
    top = len(sizes) - 1
    mats = []
    for k in range(top + 1):
        mat = [[0] * sizes[k] for _ in range(sizes[k - 1] if k else 0)]
        if k:
            for j, col in enumerate(boundaries[k]):
                for r, c in col.items():
                    mat[r][j] = c
        mats.append(mat)
    mats.append([[0] * 0 for _ in range(sizes[top])])
    out = []
    for k in range(top + 1):
        rk = naive_rank(mats[k]) if k else 0
        rk1 = naive_rank(mats[k + 1]) if k < top else 0
        divs = naive_smith(mats[k + 1]) if k < top else []
        betti = sizes[k] - rk - rk1
        torsion = tuple(d for d in divs if d > 1)
        out.append((betti, torsion))
    return out


def compare_with_oracle(space):
    rep = homology(space)
    expected = naive_homology(space)
    for k in range(rep.top_degree + 1):
        assert (rep.betti[k], tuple(sorted(rep.torsion[k]))) == \
               (expected[k][0], tuple(sorted(expected[k][1]))), f"degree {k}"


def complex_from_facets(facets, top_dim=None):
    """TruncSSet of an abstract simplicial complex given by facets."""
    cells = {}
    seen = set()
    import itertools
    for f in facets:
        f = tuple(sorted(f))
        for r in range(1, len(f) + 1):
            for s in itertools.combinations(f, r):
                seen.add(s)
    for s in seen:
        cells.setdefault(len(s) - 1, []).append(s)
    for k in cells:
        cells[k].sort()
    d = max(cells) if cells else 0
    if top_dim is not None:
        d = max(d, top_dim)

    def face_fn(k, key, i):
        return FormalSimplex(op_identity(k - 1), key[:i] + key[i + 1:])
    return TruncSSet(d, cells, face_fn)


# ---------------------------------------------------------------------------

def test_smith_invariant_factors():
    assert smith_invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert smith_invariant_factors([[1, 0], [0, 1]]) == [1, 1]
    assert smith_invariant_factors([[0, 0], [0, 0]]) == []
    assert smith_invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert naive_smith([[2, 4], [6, 8]]) == [2, 4]


def test_point():
    rep = homology(TruncSSet.point())
    assert rep.betti == (1,)
    assert rep.components == 1
    assert rep.is_point_like()


def test_empty():
    rep = homology(TruncSSet.empty())
    assert rep.betti == (0,)
    assert rep.components == 0


def test_two_points_is_zero_sphere():
    x = complex_from_facets([(0,), (1,)], top_dim=1)
    assert is_sphere_homologically(x, 0)
    rep = homology(x)
    assert rep.betti[0] == 2 and rep.components == 2


def test_circle():
    x = complex_from_facets([(0, 1), (1, 2), (0, 2)], top_dim=2)
    rep = homology(x)
    assert rep.betti[0] == 1 and rep.betti[1] == 1 and rep.betti[2] == 0
    assert is_sphere_homologically(x, 1)
    compare_with_oracle(x)


def test_two_sphere_boundary_of_tetrahedron():
    import itertools
    facets = list(itertools.combinations(range(4), 3))
    x = complex_from_facets(facets, top_dim=3)
    rep = homology(x)
    assert (rep.betti[0], rep.betti[1], rep.betti[2]) == (1, 0, 1)
    assert is_sphere_homologically(x, 2)
    compare_with_oracle(x)


def test_nerve_bruhat3_contractible():
    x = nerve(bruhat({1, 2, 3}))
    assert is_contractible_homologically(x)
    compare_with_oracle(x)


def test_nerve_partition_boundary_is_circle():
    p = ordered_partitions(3)
    boundary = p.subposet([x for x in p.elements if x != p.top()])
    assert len(boundary) == 12
    x = nerve(boundary)
    rep = homology(x)
    assert rep.betti[0] == 1 and rep.betti[1] == 1
    assert all(not t for t in rep.torsion)
    assert is_sphere_homologically(x, 1)
    compare_with_oracle(x)


def rp2_face_poset():
    """Face poset of the antipodal quotient of the cube boundary: a regular
    CW structure on the projective plane (4 vertices, 6 edges, 3 squares)."""
    verts = sorted({min(m, m ^ 7) for m in range(8)})
    cube_edges = [(a, a | 1 << i) for a in range(8) for i in range(3)
                  if not a >> i & 1]
    edge_class = {}
    for a, b in cube_edges:
        rep = min(tuple(sorted((a, b))), tuple(sorted((a ^ 7, b ^ 7))))
        edge_class[(a, b)] = rep
    edges = sorted(set(edge_class.values()))
    face_class = {}
    for i in range(3):
        for eps in (0, 1):
            face_class[(i, eps)] = (i, 0)
    faces = sorted(set(face_class.values()))
    elements = [("v", v) for v in verts] + [("e", e) for e in edges] + \
               [("f", f) for f in faces]

    def le(x, y):
        if x == y:
            return True
        kx, vx = x
        ky, vy = y
        if kx == "v" and ky == "e":
            return any(edge_class[e] == vy and vx in {min(u, u ^ 7) for u in e}
                       for e in cube_edges)
        if ky == "f":
            i, _ = vy
            members = []
            for eps in (0, 1):
                cube_face_verts = [m for m in range(8) if (m >> i & 1) == eps]
                members.append(cube_face_verts)
            if kx == "v":
                return any(vx in {min(m, m ^ 7) for m in side} for side in members)
            if kx == "e":
                for side in members:
                    sset = set(side)
                    for e in cube_edges:
                        if set(e) <= sset and edge_class[e] == vx:
                            return True
                return False
        return False
    return FinitePoset.from_relation(elements, le)


def test_projective_plane_torsion():
    p = rp2_face_poset()
    assert len(p) == 13
    x = nerve(p)
    rep = homology(x)
    assert rep.betti[0] == 1
    assert rep.betti[1] == 0 and rep.torsion[1] == (2,)
    assert rep.betti[2] == 0 and not rep.torsion[2]
    assert euler_characteristic(x) == 1
    compare_with_oracle(x)


def test_product_poset_kunneth_rank_bound():
    # torsion-free examples: betti of a product nerve is the convolution
    p = bruhat({1, 2})
    q = FinitePoset.from_covers([0, 1, 2], {0: [1], 1: [2]})
    b_p = homology(nerve(p)).betti
    b_q = homology(nerve(q)).betti
    pq = homology(nerve(product(p, q)))
    for k in range(pq.top_degree + 1):
        conv = sum(b_p[i] * b_q[k - i]
                   for i in range(len(b_p)) if 0 <= k - i < len(b_q))
        assert pq.betti[k] == conv


def test_euler_equals_alternating_betti():
    for space in (
            nerve(bruhat({1, 2, 3})),
            complex_from_facets([(0, 1), (1, 2), (0, 2)], top_dim=2),
            nerve(ordered_partitions(3))):
        rep = homology(space)
        chi = sum((-1) ** k * rep.betti[k] for k in range(rep.top_degree + 1))
        assert euler_characteristic(space) == chi


def test_report_str_and_group():
    rep = homology(TruncSSet.point())
    assert "H_0 = Z" in str(rep)
    assert rep.group(0) == (1, ())
    with pytest.raises(IndexError):
        rep.group(5)


def test_random_complexes_match_oracle():
    import itertools
    import random
    rng = random.Random(7)
    universe = list(range(6))
    for _ in range(12):
        facets = []
        for _ in range(rng.randint(2, 6)):
            size = rng.randint(1, 4)
            facets.append(tuple(sorted(rng.sample(universe, size))))
        x = complex_from_facets(facets)
        compare_with_oracle(x)
