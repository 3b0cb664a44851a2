import itertools

import pytest

from cubrig.boxcat import (
    BoxMap, NormalForm, NonMonotoneError, NotInBoxCategory, SizeGuardExceeded,
    Vertex, alpha, omega, coords_of, mask_of, vertex_le, distance,
    compose, enumerate_maps, enumerate_epis, enumerate_monos,
    epi_mono_factor, is_mono, distance_check, normalize, normalize_table,
)


def brute_words(n, m):
    """Oracle: every well-formed generator word [1]^n -> [1]^m, generated
    independently of the library's enumeration."""
    for p in range(n + 1):
        for degs in itertools.combinations(range(1, n + 1), p):
            d0 = n - p
            for q in range(max(d0, 1)):
                for conns in itertools.combinations(range(1, d0), q):
                    r = m - (d0 - q)
                    if r < 0:
                        continue
                    for cs in itertools.combinations(range(1, m + 1), r):
                        for eps in itertools.product((0, 1), repeat=r):
                            faces = tuple(zip(sorted(cs, reverse=True), eps))
                            yield NormalForm(faces, conns, degs)


def brute_tables(n, m):
    return {BoxMap.from_word(n, w).table: w for w in brute_words(n, m)}


def all_monotone_tables(n, m):
    verts = range(1 << n)
    for t in itertools.product(range(1 << m), repeat=1 << n):
        if all(vertex_le(t[a], t[a | (1 << i)])
               for a in verts for i in range(n)):
            yield t


def test_vertex_basics():
    v = Vertex(3, frozenset({1, 3}))
    assert v.mask == 0b101
    assert Vertex.from_mask(3, 0b101) == v
    assert coords_of(mask_of({2}, 3)) == frozenset({2})
    assert vertex_le(0b001, 0b011) and not vertex_le(0b010, 0b001)
    assert distance(0b001, 0b111) == 2
    with pytest.raises(ValueError):
        Vertex(2, frozenset({3}))


def test_apply_identity():
    f = BoxMap.identity(2)
    v = Vertex(2, frozenset({1}))
    assert f.apply(v) == v


def test_apply_iota_paper_example():
    # iota^5 for a=(1,0,0,0,0), b=(1,0,1,0,1) sends (x,y) to (1,0,x,0,y)
    a = mask_of({1}, 5)
    b = mask_of({1, 3, 5}, 5)
    f = BoxMap.iota(5, a, b)
    for x in (0, 1):
        for y in (0, 1):
            src = x | (y << 1)
            expect = mask_of({1} | ({3} if x else set()) | ({5} if y else set()), 5)
            assert f.apply(src) == expect


def test_apply_connection_by_hand():
    # max(x1, x2): (1,0) -> 1, (0,0) -> 0
    g = BoxMap.connection(2, 1)
    assert g.apply(0b01) == 1
    assert g.apply(0b00) == 0
    assert g.apply(0b10) == 1
    assert g.apply(0b11) == 1


def test_compose_sigma_after_face_is_identity():
    # sigma_1 o d_{1,1}: [1] -> [1]^2 -> [1]
    f = BoxMap.face(2, 1, 1)
    s = BoxMap.degeneracy(2, 1)
    assert compose(s, f) == BoxMap.identity(1)


def test_compose_unit():
    for f in enumerate_maps(2, 1):
        assert compose(f, BoxMap.identity(2)) == f
        assert compose(BoxMap.identity(1), f) == f


def test_compose_face_after_sigma_is_constant():
    # d_{1,0} o sigma_1: [1] -> [1]^0 -> ... realized as [1] -> [1]: constant 0
    f = compose(BoxMap.face(1, 1, 0), BoxMap.degeneracy(1, 1))
    assert f.table == (0, 0)


def test_compose_dimension_mismatch():
    with pytest.raises(ValueError):
        compose(BoxMap.identity(2), BoxMap.identity(1))


def test_normalize_identity_empty_word():
    assert normalize(BoxMap.identity(3)).is_identity()


def test_normalize_max():
    nf = normalize_table(2, 1, (0, 1, 1, 1))
    assert nf == NormalForm(faces=(), connections=(1,), degeneracies=())


def test_normalize_min_rejected():
    # oracle: no generated word [1]^2 -> [1] evaluates to min
    assert (0, 0, 0, 1) not in brute_tables(2, 1)
    with pytest.raises(NotInBoxCategory):
        normalize_table(2, 1, (0, 0, 0, 1))


def test_normalize_non_monotone_distinct_error():
    with pytest.raises(NonMonotoneError):
        normalize_table(1, 1, (1, 0))


def test_normalize_diagonal_rejected():
    with pytest.raises(NotInBoxCategory):
        normalize_table(1, 2, (0b00, 0b11))


@pytest.mark.parametrize("n,m", [(n, m) for n in range(4) for m in range(4)])
def test_normal_form_bijection(n, m):
    # distinct words give distinct tables, and normalization round-trips
    oracle = brute_tables(n, m)
    assert len(oracle) == len(list(brute_words(n, m)))
    for table, word in oracle.items():
        assert normalize_table(n, m, table) == word


@pytest.mark.parametrize("n,m", [(n, m) for n in range(3) for m in range(3)])
def test_monotone_non_box_tables_rejected(n, m):
    oracle = brute_tables(n, m)
    for t in all_monotone_tables(n, m):
        if t in oracle:
            assert BoxMap.from_table(n, m, t).normal == oracle[t]
        else:
            with pytest.raises(NotInBoxCategory):
                normalize_table(n, m, t)


def test_enumerate_counts():
    assert len(enumerate_maps(1, 1)) == 3
    assert len(enumerate_maps(2, 1)) == 5
    assert len(enumerate_maps(0, 0)) == 1


def test_enumerate_21_classification():
    maps = {f.table for f in enumerate_maps(2, 1)}
    const0 = (0, 0, 0, 0)
    const1 = (1, 1, 1, 1)
    pr1 = (0, 1, 0, 1)
    pr2 = (0, 0, 1, 1)
    mx = (0, 1, 1, 1)
    assert maps == {const0, const1, pr1, pr2, mx}
    assert (0, 0, 0, 1) not in maps  # min excluded


@pytest.mark.parametrize("n,m", [(n, m) for n in range(4) for m in range(4)])
def test_enumerate_matches_oracle(n, m):
    got = {f.table for f in enumerate_maps(n, m)}
    assert got == set(brute_tables(n, m))


def test_enumerate_guard():
    with pytest.raises(SizeGuardExceeded):
        enumerate_maps(5, 5)
    # override flag
    assert enumerate_epis(5, 5) == (BoxMap.identity(5),)


def test_composition_closure():
    maps21 = enumerate_maps(2, 1)
    maps12 = enumerate_maps(1, 2)
    all22 = {f.table for f in enumerate_maps(2, 2)}
    for f in maps12:
        for g in maps21:
            assert compose(f, g).table in {h.table for h in enumerate_maps(2, 2)}
            assert compose(g, f).table in {h.table for h in enumerate_maps(1, 1)}
    assert BoxMap.identity(2).table in all22


@pytest.mark.parametrize("n,m", [(n, m) for n in range(4) for m in range(4)])
def test_mono_criterion_exhaustive(n, m):
    for f in enumerate_maps(n, m):
        faces_only = not (f.normal.connections or f.normal.degeneracies)
        assert is_mono(f) == faces_only == distance_check(f)
        if is_mono(f):
            # determined by images of bottom and top
            assert f == BoxMap.iota(m, f.table[0], f.table[-1])


def test_is_mono_examples():
    assert is_mono(BoxMap.identity(2))
    assert not is_mono(BoxMap.degeneracy(1, 1))


@pytest.mark.parametrize("n,m", [(n, m) for n in range(4) for m in range(4)])
def test_epi_mono_factor(n, m):
    for f in enumerate_maps(n, m):
        epi, mono = epi_mono_factor(f)
        assert epi.is_epi() and mono.is_mono()
        assert compose(mono, epi) == f
        # re-factoring returns the same pair
        assert epi_mono_factor(compose(mono, epi)) == (epi, mono)


def test_epi_mono_trivial_cases():
    f = BoxMap.face(2, 1, 1)
    epi, mono = epi_mono_factor(f)
    assert epi.is_identity() and mono == f
    s = BoxMap.degeneracy(1, 1)
    epi, mono = epi_mono_factor(s)
    assert epi == s and mono.is_identity()


def test_enumerate_monos_by_pairs():
    # monos [1]^k -> [1]^m correspond to pairs at distance k
    for k, m in [(0, 2), (1, 2), (2, 2), (1, 3)]:
        monos = enumerate_monos(k, m)
        pairs = [(a, b) for b in range(1 << m) for a in range(1 << m)
                 if vertex_le(a, b) and distance(a, b) == k]
        assert len(monos) == len(pairs) == len(set(monos))


def test_word_serialization_roundtrip():
    for f in enumerate_maps(2, 2):
        nf = NormalForm.from_json(f.normal.as_json())
        assert BoxMap.from_word(2, nf) == f
