"""Finite cubical sets.

A complex stores only its nondegenerate cells; every face record carries
the epi part of the epi-mono decomposition, so arbitrary operator actions
resolve through the records.  Pushouts are computed dimensionwise by
union-find on formal cells and renormalized afterwards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

from .boxcat import (
    BoxMap, NormalForm, coords_of, distance, enumerate_epis, mask_of,
    omega, vertex_le,
)


class FormalCell(NamedTuple):
    """A cell  base . epi  with epi an epimorphism onto the base dimension."""

    epi: BoxMap
    key: object

    @property
    def dim(self) -> int:
        return self.epi.src_dim

    @property
    def base_dim(self) -> int:
        return self.epi.dst_dim

    def is_nondegenerate(self) -> bool:
        return self.epi.is_identity()

    def sort_token(self):
        return (self.epi.src_dim, self.epi.dst_dim, self.epi.table, _key_token(self.key))


def _key_token(key):
    return key if isinstance(key, str) else repr(key)


class CubicalComplex:
    """A finite cubical set by nondegenerate cells and face records."""

    def __init__(self, top_dim: int, cells: dict[int, list], faces: dict, name: str = ""):
        self.top_dim = top_dim
        self._cells = {k: list(cells.get(k, ())) for k in range(top_dim + 1)}
        self._index = {k: {key: i for i, key in enumerate(self._cells[k])}
                       for k in self._cells}
        self._faces = faces  # (dim, key) -> {(i, eps): FormalCell}
        self.name = name

    # -- queries --------------------------------------------------------------

    def cells(self, k: int) -> list:
        return self._cells.get(k, [])

    def n_cells(self, k: int) -> int:
        return len(self._cells.get(k, ()))

    def cell_counts(self) -> tuple[int, ...]:
        top = max((k for k in self._cells if self._cells[k]), default=0)
        return tuple(self.n_cells(k) for k in range(top + 1))

    def has_cell(self, k: int, key) -> bool:
        return key in self._index.get(k, {})

    def vertices(self) -> list:
        return self.cells(0)

    def face(self, k: int, key, i: int, eps: int) -> FormalCell:
        return self._faces[(k, key)][(i, eps)]

    def nondeg(self, k: int, key) -> FormalCell:
        return FormalCell(BoxMap.identity(k), key)

    # -- operator actions -----------------------------------------------------

    def act(self, fc: FormalCell, g: BoxMap) -> FormalCell:
        """The cell  fc . g  for g a box map into fc's dimension."""
        if g.dst_dim != fc.dim:
            raise ValueError("operator dimension mismatch")
        return self._resolve(fc.key, fc.epi.compose(g))

    def _resolve(self, key, total: BoxMap) -> FormalCell:
        # base . total with base nondegenerate of dimension total.dst_dim;
        # peel the outermost face through the stored records
        nf = total.normal
        if not nf.faces:
            return FormalCell(total, key)
        c, e = nf.faces[0]
        rec = self._faces[(total.dst_dim, key)][(c, e)]
        rest = BoxMap.from_word(total.src_dim, NormalForm(
            faces=nf.faces[1:], connections=nf.connections,
            degeneracies=nf.degeneracies))
        return self._resolve(rec.key, rec.epi.compose(rest))

    def all_formal_cells(self, k: int):
        """Every k-cell, degenerate ones included."""
        for m in range(k + 1):
            for epi in enumerate_epis(k, m):
                for key in self.cells(m):
                    yield FormalCell(epi, key)

    def edge_endpoints(self, key) -> tuple:
        """(source, target) vertex keys of a nondegenerate edge."""
        lo = self.face(1, key, 1, 0)
        hi = self.face(1, key, 1, 1)
        return lo.key, hi.key

    # -- validation -----------------------------------------------------------

    def validate(self) -> list[str]:
        problems = []
        for k in range(1, self.top_dim + 1):
            for key in self.cells(k):
                recs = self._faces.get((k, key))
                if recs is None:
                    problems.append(f"cell ({k},{key}) has no face records")
                    continue
                for i in range(1, k + 1):
                    for eps in (0, 1):
                        fc = recs.get((i, eps))
                        if fc is None:
                            problems.append(f"({k},{key}) missing face ({i},{eps})")
                            continue
                        if fc.epi.src_dim != k - 1 or not fc.epi.is_epi():
                            problems.append(f"({k},{key}) face ({i},{eps}) has a bad epi")
                        elif not self.has_cell(fc.base_dim, fc.key):
                            problems.append(
                                f"({k},{key}) face ({i},{eps}) targets a missing cell")
        if problems:
            return problems
        for k in range(2, self.top_dim + 1):
            for key in self.cells(k):
                x = self.nondeg(k, key)
                for i2 in range(1, k + 1):
                    for e2 in (0, 1):
                        outer = BoxMap.face(k, i2, e2)
                        y = self.act(x, outer)
                        for i1 in range(1, k):
                            for e1 in (0, 1):
                                inner = BoxMap.face(k - 1, i1, e1)
                                if self.act(y, inner) != self.act(x, outer.compose(inner)):
                                    problems.append(
                                        f"coherence failure at ({k},{key}) "
                                        f"d({i2},{e2}) d({i1},{e1})")
        return problems

    # -- serialization --------------------------------------------------------

    def as_json(self) -> dict:
        cells = {str(k): [_key_token(key) for key in self.cells(k)]
                 for k in range(self.top_dim + 1)}
        faces = {}
        for k in range(1, self.top_dim + 1):
            for key in self.cells(k):
                recs = {}
                for i in range(1, k + 1):
                    for eps in (0, 1):
                        fc = self.face(k, key, i, eps)
                        recs[f"{i},{eps}"] = {
                            "epi": fc.epi.normal.as_json(),
                            "target": _key_token(fc.key),
                        }
                faces[f"{k}:{_key_token(key)}"] = recs
        return {"top_dim": self.top_dim, "cells": cells, "faces": faces}

    def dump_json(self) -> str:
        return json.dumps(self.as_json(), sort_keys=True, indent=1)


def complex_from_json(data: dict) -> CubicalComplex:
    """Rebuild a complex from its JSON form; keys become strings."""
    top = data["top_dim"]
    cells = {int(k): list(v) for k, v in data["cells"].items()}
    faces = {}
    for tag, recs in data["faces"].items():
        k, key = tag.split(":", 1)
        k = int(k)
        table = {}
        for ie, rec in recs.items():
            i, eps = (int(t) for t in ie.split(","))
            epi = BoxMap.from_word(k - 1, NormalForm.from_json(rec["epi"]))
            table[(i, eps)] = FormalCell(epi, rec["target"])
        faces[(k, key)] = table
    return CubicalComplex(top, cells, faces, name="from_json")


# ---------------------------------------------------------------------------
# subcomplexes of a cube

@dataclass(frozen=True)
class SubcomplexOfCube:
    """A subcomplex of the ambient cube, as a set of face pairs (a, b).

    Each pair of vertex masks a <= b names the face spanned between them;
    the set is closed under taking sub-faces.
    """

    ambient_dim: int
    pairs: frozenset

    @classmethod
    def from_generators(cls, n: int, generators) -> "SubcomplexOfCube":
        todo = list(generators)
        seen = set()
        while todo:
            a, b = todo.pop()
            if (a, b) in seen:
                continue
            if not vertex_le(a, b):
                raise ValueError("face pair requires a <= b")
            seen.add((a, b))
            for j in coords_of(b & ~a):
                bit = 1 << (j - 1)
                todo.append((a, b & ~bit))
                todo.append((a | bit, b))
        return cls(n, frozenset(seen))

    def is_closed(self) -> bool:
        for a, b in self.pairs:
            for j in coords_of(b & ~a):
                bit = 1 << (j - 1)
                if (a, b & ~bit) not in self.pairs or (a | bit, b) not in self.pairs:
                    return False
        return True

    def has_pair(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs

    def vertex_masks(self) -> list[int]:
        return sorted({a for a, b in self.pairs if a == b})

    def dim_of(self, pair) -> int:
        return distance(pair[0], pair[1])

    def face_pairs_by_dim(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for a, b in self.pairs:
            out.setdefault(distance(a, b), []).append((a, b))
        for k in out:
            out[k].sort()
        return out

    def to_complex(self) -> CubicalComplex:
        """The abstract complex: cells are the pairs, epis all trivial."""
        by_dim = self.face_pairs_by_dim()
        top = max(by_dim, default=0)
        cells = {k: by_dim.get(k, []) for k in range(top + 1)}
        faces = {}
        for k in range(1, top + 1):
            for a, b in cells[k]:
                diff = sorted(coords_of(b & ~a))
                recs = {}
                for i in range(1, k + 1):
                    bit = 1 << (diff[i - 1] - 1)
                    recs[(i, 0)] = FormalCell(BoxMap.identity(k - 1), (a, b & ~bit))
                    recs[(i, 1)] = FormalCell(BoxMap.identity(k - 1), (a | bit, b))
                faces[(k, (a, b))] = recs
        return CubicalComplex(top, cells, faces,
                              name=f"subcomplex of cube^{self.ambient_dim}")


def pairs_of_complex(complex_: CubicalComplex) -> frozenset:
    """Extract the face pairs from a complex built out of a SubcomplexOfCube."""
    return frozenset(key for k in range(complex_.top_dim + 1)
                     for key in complex_.cells(k))


def standard_cube(n: int) -> SubcomplexOfCube:
    """The full cube as a subcomplex of itself."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return SubcomplexOfCube.from_generators(n, [(0, omega(n))])


def boundary(n: int) -> SubcomplexOfCube:
    """Union of all the facets of the cube."""
    if n < 1:
        raise ValueError("boundary needs dimension at least 1")
    gens = []
    for j in range(1, n + 1):
        bit = 1 << (j - 1)
        gens.append((0, omega(n) & ~bit))
        gens.append((bit, omega(n)))
    return SubcomplexOfCube.from_generators(n, gens)


def open_box(n: int, i: int, eps: int) -> SubcomplexOfCube:
    """The boundary minus the (i, eps) facet."""
    if n < 2:
        raise ValueError("open boxes need dimension at least 2")
    if not 1 <= i <= n or eps not in (0, 1):
        raise ValueError("facet index out of range")
    gens = []
    for j in range(1, n + 1):
        bit = 1 << (j - 1)
        if (j, 0) != (i, eps):
            gens.append((0, omega(n) & ~bit))
        if (j, 1) != (i, eps):
            gens.append((bit, omega(n)))
    return SubcomplexOfCube.from_generators(n, gens)


def critical_edge(n: int, i: int, eps: int) -> tuple[int, int]:
    """The edge adjacent to the (i, eps) facet through the opposite corner."""
    bit = 1 << (i - 1)
    if eps == 1:
        return (0, bit)
    return (omega(n) & ~bit, omega(n))


# ---------------------------------------------------------------------------
# maps of complexes

class ComplexMap:
    """A map of cubical sets, stored on nondegenerate cells."""

    def __init__(self, source: CubicalComplex, target: CubicalComplex, mapping: dict):
        self.source = source
        self.target = target
        self.mapping = mapping  # (dim, key) -> FormalCell of the target

    def apply(self, fc: FormalCell) -> FormalCell:
        img = self.mapping[(fc.base_dim, fc.key)]
        return FormalCell(img.epi.compose(fc.epi), img.key)

    def compose(self, other: "ComplexMap") -> "ComplexMap":
        """self o other."""
        mapping = {}
        for k in range(other.source.top_dim + 1):
            for key in other.source.cells(k):
                mapping[(k, key)] = self.apply(other.mapping[(k, key)])
        return ComplexMap(other.source, self.target, mapping)

    def validate(self) -> list[str]:
        problems = []
        src, dst = self.source, self.target
        for k in range(src.top_dim + 1):
            for key in src.cells(k):
                img = self.mapping.get((k, key))
                if img is None:
                    problems.append(f"no image for ({k},{key})")
                elif img.dim != k or not dst.has_cell(img.base_dim, img.key):
                    problems.append(f"bad image for ({k},{key})")
        if problems:
            return problems
        for k in range(1, src.top_dim + 1):
            for key in src.cells(k):
                for i in range(1, k + 1):
                    for eps in (0, 1):
                        g = BoxMap.face(k, i, eps)
                        left = self.apply(src.act(src.nondeg(k, key), g))
                        right = dst.act(self.apply(src.nondeg(k, key)), g)
                        if left != right:
                            problems.append(
                                f"face mismatch at ({k},{key}) d({i},{eps})")
        return problems

    def is_mono(self) -> bool:
        """Nondegenerate cells map injectively to nondegenerate cells."""
        for k in range(self.source.top_dim + 1):
            images = set()
            for key in self.source.cells(k):
                img = self.mapping[(k, key)]
                if not img.is_nondegenerate() or img in images:
                    return False
                images.add(img)
        return True

    @classmethod
    def identity(cls, complex_: CubicalComplex) -> "ComplexMap":
        mapping = {(k, key): complex_.nondeg(k, key)
                   for k in range(complex_.top_dim + 1)
                   for key in complex_.cells(k)}
        return cls(complex_, complex_, mapping)

    @classmethod
    def terminal(cls, source: CubicalComplex, point: CubicalComplex) -> "ComplexMap":
        """The unique map to the point complex."""
        pt = point.cells(0)[0]
        mapping = {(k, key): FormalCell(BoxMap.terminal(k), pt)
                   for k in range(source.top_dim + 1)
                   for key in source.cells(k)}
        return cls(source, point, mapping)


def map_from_boxmap(h: BoxMap, source: CubicalComplex, target: CubicalComplex) -> ComplexMap:
    """The complex map of pair-keyed complexes induced by postcomposition
    with a box map; the image faces must lie in the target."""
    mapping = {}
    for k in range(source.top_dim + 1):
        for a, b in source.cells(k):
            total = h.compose(BoxMap.iota(h.src_dim, a, b))
            epi, mono = total.epi_part(), total.mono_part()
            pair = (total.table[0], total.table[-1])
            if not target.has_cell(epi.dst_dim, pair):
                raise ValueError(f"image face {pair} is not in the target")
            mapping[(k, (a, b))] = FormalCell(epi, pair)
    return ComplexMap(source, target, mapping)


def point_complex() -> CubicalComplex:
    return standard_cube(0).to_complex()


def coproduct(complexes: list) -> tuple[CubicalComplex, list]:
    """Disjoint union; cells are tagged by the summand index."""
    top = max((c.top_dim for c in complexes), default=0)
    cells = {k: [] for k in range(top + 1)}
    faces = {}
    for tag, c in enumerate(complexes):
        for k in range(c.top_dim + 1):
            for key in c.cells(k):
                cells[k].append((tag, key))
            for key in c.cells(k):
                if k >= 1:
                    faces[(k, (tag, key))] = {
                        ie: FormalCell(fc.epi, (tag, fc.key))
                        for ie, fc in c._faces[(k, key)].items()}
    result = CubicalComplex(top, cells, faces, name="coproduct")
    injections = []
    for tag, c in enumerate(complexes):
        mapping = {(k, key): FormalCell(BoxMap.identity(k), (tag, key))
                   for k in range(c.top_dim + 1) for key in c.cells(k)}
        injections.append(ComplexMap(c, result, mapping))
    return result, injections


# ---------------------------------------------------------------------------
# pushouts

class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        if x not in p:
            p[x] = x
            return x
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


_ELEMENTARY_EPIS = {}


def _elementary_epis(k: int):
    if k not in _ELEMENTARY_EPIS:
        eps = [BoxMap.degeneracy(k, i) for i in range(1, k + 1)]
        eps += [BoxMap.connection(k, i) for i in range(1, k)]
        _ELEMENTARY_EPIS[k] = tuple(eps)
    return _ELEMENTARY_EPIS[k]


def pushout(f: ComplexMap, g: ComplexMap, top_dim: int | None = None):
    """Pushout of target(f) <- source -> target(g).

    Computed dimensionwise on all cells up to the bound (degenerate cells
    materialized, then renormalized through the epi-mono decomposition).
    Returns (complex, left leg, right leg).
    """
    if f.source is not g.source:
        raise ValueError("pushout legs must share their source")
    a, b, c = f.source, f.target, g.target
    if top_dim is None:
        top_dim = max(b.top_dim, c.top_dim)
    if a.top_dim > top_dim:
        raise ValueError("pushout bound is below the source dimension")

    uf = _UnionFind()
    for k in range(top_dim + 1):
        for fc in a.all_formal_cells(k):
            uf.union((k, 0, f.apply(fc)), (k, 1, g.apply(fc)))
        for tag, x in ((0, b), (1, c)):
            for fc in x.all_formal_cells(k):
                uf.find((k, tag, fc))

    member: dict = {}
    for node in list(uf.parent):
        root = uf.find(node)
        tok = (node[1], node[2].sort_token())
        if root not in member or tok < member[root][0]:
            member[root] = (tok, node)

    homes = (b, c)
    cells: dict[int, list] = {k: [] for k in range(top_dim + 1)}
    faces: dict = {}
    decomp: dict = {}
    classes_at: dict[int, list] = {}
    for k in range(top_dim + 1):
        degenerate = {}
        if k > 0:
            for root in classes_at[k - 1]:
                _, (_, tag, fc) = member[root]
                d = decomp[root]
                for e in _elementary_epis(k):
                    img = FormalCell(fc.epi.compose(e), fc.key)
                    r = uf.find((k, tag, img))
                    cand = FormalCell(d.epi.compose(e), d.key)
                    if r in degenerate:
                        if degenerate[r] != cand:
                            raise AssertionError(
                                "inconsistent degeneracy decomposition in pushout")
                    else:
                        degenerate[r] = cand
        roots = set()
        for tag, x in ((0, b), (1, c)):
            for fc in x.all_formal_cells(k):
                roots.add(uf.find((k, tag, fc)))
        fresh = sorted((r for r in roots if r not in degenerate),
                       key=lambda r: member[r][0])
        for idx, r in enumerate(fresh):
            decomp[r] = FormalCell(BoxMap.identity(k), (k, idx))
            cells[k].append((k, idx))
        for r, cand in degenerate.items():
            decomp[r] = cand
        classes_at[k] = sorted(roots, key=lambda r: member[r][0])
        for r in fresh:
            _, (_, tag, fc) = member[r]
            key = decomp[r].key
            if k >= 1:
                home = homes[tag]
                recs = {}
                for i in range(1, k + 1):
                    for eps in (0, 1):
                        ffc = home.act(fc, BoxMap.face(k, i, eps))
                        recs[(i, eps)] = decomp[uf.find((k - 1, tag, ffc))]
                faces[(k, key)] = recs

    result = CubicalComplex(top_dim, cells, faces, name="pushout")
    legs = []
    for tag, x in ((0, b), (1, c)):
        mapping = {}
        for k in range(x.top_dim + 1):
            for key in x.cells(k):
                fc = x.nondeg(k, key)
                mapping[(k, key)] = decomp[uf.find((k, tag, fc))]
        legs.append(ComplexMap(x, result, mapping))
    return result, legs[0], legs[1]


# ---------------------------------------------------------------------------
# named complexes

def inner_cube(n: int, i: int, eps: int):
    """Quotient of the cube collapsing the (i, eps) critical edge.

    Returns (complex, p) with p the vertex-level quotient map, as a dict
    from vertex masks to vertex keys of the quotient.
    """
    if n < 2:
        raise ValueError("inner cubes need dimension at least 2")
    return _collapse_critical_edge(standard_cube(n).to_complex(), n, i, eps)


def inner_open_box(n: int, i: int, eps: int):
    """Quotient of the open box collapsing its critical edge."""
    if n < 2:
        raise ValueError("inner open boxes need dimension at least 2")
    return _collapse_critical_edge(open_box(n, i, eps).to_complex(), n, i, eps)


def _collapse_critical_edge(ambient: CubicalComplex, n: int, i: int, eps: int):
    a, b = critical_edge(n, i, eps)
    edge = standard_cube(1).to_complex()
    into = map_from_boxmap(BoxMap.iota(n, a, b), edge, ambient)
    pt = point_complex()
    collapse = ComplexMap.terminal(edge, pt)
    result, leg, _ = pushout(into, collapse)
    p = {}
    for mask in range(1 << n):
        img = leg.mapping[(0, (mask, mask))]
        p[mask] = img.key
    return result, p


def q_complex(n: int, guard: int = 6):
    """The cubified simplex: the quotient of the cube identifying each
    positive facet along the projection that forgets the leading block.

    Returns (complex, pi) with pi the vertex map; vertex classes are in
    bijection with 0..n via the largest coordinate.
    """
    if n > guard:
        raise ValueError(f"q_complex guard {guard} exceeded")
    cube = standard_cube(n).to_complex()
    if n == 0:
        return cube, {0: (0, 0)}
    lower = [standard_cube(n - 1).to_complex() for _ in range(n)]
    targets = [standard_cube(n - i).to_complex() for i in range(1, n + 1)]
    src, src_inj = coproduct(lower)
    dst, dst_inj = coproduct(targets)
    f_parts = [map_from_boxmap(BoxMap.face(n, i, 1), lower[i - 1], cube)
               for i in range(1, n + 1)]
    g_parts = []
    for i in range(1, n + 1):
        drop = BoxMap.from_word(n - 1, NormalForm(
            degeneracies=tuple(range(1, i))))
        g_parts.append(map_from_boxmap(drop, lower[i - 1], targets[i - 1]))
    f_map = {}
    g_map = {}
    for i in range(1, n + 1):
        for k in range(n):
            for key in lower[i - 1].cells(k):
                f_map[(k, (i - 1, key))] = f_parts[i - 1].mapping[(k, key)]
                img = g_parts[i - 1].mapping[(k, key)]
                g_map[(k, (i - 1, key))] = dst_inj[i - 1].apply(img)
    f = ComplexMap(src, cube, f_map)
    g = ComplexMap(src, dst, g_map)
    result, leg_cube, _ = pushout(f, g)
    pi = {mask: leg_cube.mapping[(0, (mask, mask))].key for mask in range(1 << n)}
    return result, pi


def k_complex() -> CubicalComplex:
    """The two-square witness complex for equivalences: two vertices, one
    middle edge one way, two flanking edges the other way, two squares
    whose remaining faces are degenerate."""
    v0, v1 = "0", "1"
    cells = {0: [v0, v1], 1: ["f", "u", "w"], 2: ["sL", "sR"]}
    point = lambda v: FormalCell(BoxMap.terminal(1), v)
    ident = lambda e: FormalCell(BoxMap.identity(1), e)
    vert = lambda v: FormalCell(BoxMap.identity(0), v)
    faces = {
        (1, "u"): {(1, 0): vert(v1), (1, 1): vert(v0)},
        (1, "f"): {(1, 0): vert(v0), (1, 1): vert(v1)},
        (1, "w"): {(1, 0): vert(v1), (1, 1): vert(v0)},
        (2, "sL"): {(1, 0): point(v1), (1, 1): ident("f"),
                    (2, 0): ident("u"), (2, 1): point(v1)},
        (2, "sR"): {(1, 0): ident("f"), (1, 1): point(v0),
                    (2, 0): point(v0), (2, 1): ident("w")},
    }
    return CubicalComplex(2, cells, faces, name="K")


def collapsed_square():
    """The square with both side edges collapsed: two vertices, two parallel
    edges, one nondegenerate square.  Returns (complex, leg from the square)."""
    square = standard_cube(2).to_complex()
    sides = [standard_cube(1).to_complex() for _ in range(2)]
    src, _ = coproduct(sides)
    pts = [point_complex() for _ in range(2)]
    dst, dst_inj = coproduct(pts)
    f_map = {}
    g_map = {}
    for t, (i, eps) in enumerate([(1, 0), (1, 1)]):
        part = map_from_boxmap(BoxMap.face(2, i, eps), sides[t], square)
        for k in range(2):
            for key in sides[t].cells(k):
                f_map[(k, (t, key))] = part.mapping[(k, key)]
                g_map[(k, (t, key))] = dst_inj[t].apply(
                    ComplexMap.terminal(sides[t], pts[t]).mapping[(k, key)])
    f = ComplexMap(src, square, f_map)
    g = ComplexMap(src, dst, g_map)
    result, leg, _ = pushout(f, g)
    return result, leg


def theta_complex():
    """Two collapsed squares glued along an edge: two vertices, three
    parallel edges u, v, w and two squares witnessing u ~> v ~> w.

    Returns (complex, (u, v, w) edge keys, (a, b) vertex keys).
    """
    left, leg_l = collapsed_square()
    right, leg_r = collapsed_square()
    seg = standard_cube(1).to_complex()
    square = standard_cube(2).to_complex()
    bottom = map_from_boxmap(BoxMap.face(2, 2, 0), seg, square)
    top = map_from_boxmap(BoxMap.face(2, 2, 1), seg, square)
    f = leg_l.compose(bottom)
    g = leg_r.compose(top)
    result, leg_left, leg_right = pushout(f, g)
    u = leg_left.apply(leg_l.apply(square.nondeg(1, (2, 3)))).key
    v = leg_left.apply(leg_l.apply(square.nondeg(1, (0, 1)))).key
    w = leg_right.apply(leg_r.apply(square.nondeg(1, (0, 1)))).key
    a = leg_left.apply(leg_l.apply(square.nondeg(0, (0, 0)))).key
    b = leg_left.apply(leg_l.apply(square.nondeg(0, (3, 3)))).key
    return result, (u, v, w), (a, b)


# ---------------------------------------------------------------------------
# bipointed complexes and wedges

@dataclass(frozen=True)
class BipointedComplex:
    """A complex with two chosen vertex keys."""

    complex: CubicalComplex
    a: object
    b: object

    def __post_init__(self):
        if not (self.complex.has_cell(0, self.a) and self.complex.has_cell(0, self.b)):
            raise ValueError("base points must be vertices of the complex")


def wedge(s: BipointedComplex, t: BipointedComplex) -> BipointedComplex:
    """Glue s's second point to t's first point; bipointed by (s.a, t.b)."""
    pt = point_complex()
    pkey = pt.cells(0)[0]
    f = ComplexMap(pt, s.complex, {(0, pkey): s.complex.nondeg(0, s.b)})
    g = ComplexMap(pt, t.complex, {(0, pkey): t.complex.nondeg(0, t.a)})
    result, leg_s, leg_t = pushout(f, g)
    return BipointedComplex(result,
                            leg_s.mapping[(0, s.a)].key,
                            leg_t.mapping[(0, t.b)].key)


def bipointed_cube(n: int) -> BipointedComplex:
    c = standard_cube(n).to_complex()
    return BipointedComplex(c, (0, 0), (omega(n), omega(n)))
