"""Truncated simplicial sets.

Only nondegenerate simplices are stored; an arbitrary simplex is a pair
(op, key) of a monotone surjection and a nondegenerate base, and operator
actions are computed through epi-mono factorisation in the simplex
category.  Monotone maps [j] -> [k] are plain tuples of images.
"""

from __future__ import annotations

import json
from typing import Callable, NamedTuple


# ---------------------------------------------------------------------------
# monotone maps of finite ordinals

def op_identity(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def op_face(n: int, i: int) -> tuple[int, ...]:
    """The injection [n-1] -> [n] skipping i."""
    return tuple(j for j in range(n + 1) if j != i)


def op_degeneracy(n: int, i: int) -> tuple[int, ...]:
    """The surjection [n+1] -> [n] repeating i."""
    return tuple(min(j, n) for j in range(i + 1)) + tuple(max(j - 1, 0) for j in range(i + 1, n + 2))


def op_compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """f o g."""
    return tuple(f[v] for v in g)


def op_is_monotone(t) -> bool:
    return all(t[i] <= t[i + 1] for i in range(len(t) - 1))


def op_epi_mono(t: tuple[int, ...], target: int):
    """Factor a monotone map [j] -> [target] as injection o surjection."""
    image = sorted(set(t))
    rank = {v: i for i, v in enumerate(image)}
    epi = tuple(rank[v] for v in t)
    mono_missing = tuple(v for v in range(target + 1) if v not in rank)
    return epi, tuple(image), mono_missing


def op_is_identity(t) -> bool:
    return all(v == i for i, v in enumerate(t))


class FormalSimplex(NamedTuple):
    """A simplex base . op with op a monotone surjection onto [dim(base)]."""

    op: tuple[int, ...]
    key: object

    @property
    def base_dim(self) -> int:
        return self.op[-1] if self.op else 0

    def is_nondegenerate(self) -> bool:
        return op_is_identity(self.op)


def surjections(k: int, m: int):
    """All monotone surjections [k] -> [m], as image tuples."""
    if m > k or m < 0:
        return
    import itertools
    # choose which of the k steps increase
    for rises in itertools.combinations(range(k), m):
        t = [0] * (k + 1)
        v = 0
        rset = set(rises)
        for i in range(k):
            if i in rset:
                v += 1
            t[i + 1] = v
        yield tuple(t)


class TruncSSet:
    """A simplicial set truncated at dimension top_dim.

    cells[k] lists the nondegenerate k-simplices by key; face(k, key, i)
    returns the i-th face as a FormalSimplex.
    """

    def __init__(self, top_dim: int, cells: dict[int, list], face_fn: Callable, name: str = ""):
        self.top_dim = top_dim
        self._cells = {k: list(cells.get(k, ())) for k in range(top_dim + 1)}
        self._index = {k: {key: i for i, key in enumerate(self._cells[k])}
                       for k in self._cells}
        self._face_fn = face_fn
        self.name = name

    @classmethod
    def from_faces_dict(cls, top_dim: int, cells: dict[int, list], faces: dict, name: str = ""):
        """faces maps (k, key) to the tuple of FormalSimplex faces."""
        return cls(top_dim, cells, lambda k, key, i: faces[(k, key)][i], name=name)

    @classmethod
    def empty(cls, top_dim: int = 0):
        return cls(top_dim, {}, lambda k, key, i: None, name="empty")

    @classmethod
    def point(cls, top_dim: int = 0):
        return cls(top_dim, {0: ["*"]}, lambda k, key, i: None, name="point")

    # -- basic queries -------------------------------------------------------

    def cells(self, k: int) -> list:
        return self._cells.get(k, [])

    def n_cells(self, k: int) -> int:
        return len(self._cells.get(k, ()))

    def has_cell(self, k: int, key) -> bool:
        return key in self._index.get(k, {})

    def face(self, k: int, key, i: int) -> FormalSimplex:
        if k <= 0:
            raise ValueError("vertices have no faces")
        return self._face_fn(k, key, i)

    def is_empty(self) -> bool:
        return all(not c for c in self._cells.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.n_cells(k) for k in self._cells)

    def nondegenerate_counts(self) -> tuple[int, ...]:
        top = max((k for k in self._cells if self._cells[k]), default=-1)
        return tuple(self.n_cells(k) for k in range(top + 1))

    # -- simplex algebra -----------------------------------------------------

    def act(self, fs: FormalSimplex, op: tuple[int, ...]) -> FormalSimplex:
        """The simplex fs . op, for op a monotone map into fs's dimension."""
        return self._resolve(fs.key, fs.base_dim, op_compose(fs.op, op))

    def _resolve(self, key, m: int, total: tuple[int, ...]) -> FormalSimplex:
        # y . total for y nondegenerate of dimension m; peel one missed face
        # index at a time through the stored face records
        hit = set(total)
        missing = [b for b in range(m + 1) if b not in hit]
        if not missing:
            return FormalSimplex(total, key)
        b = max(missing)
        rec = self.face(m, key, b)
        shifted = tuple(v - 1 if v > b else v for v in total)
        return self._resolve(rec.key, rec.base_dim, op_compose(rec.op, shifted))

    def all_simplices(self, k: int):
        """Every k-simplex, degenerate ones included, as FormalSimplex."""
        for m in range(k + 1):
            for eta in surjections(k, m):
                for key in self.cells(m):
                    yield FormalSimplex(eta, key)

    def n_all_simplices(self, k: int) -> int:
        from math import comb
        return sum(comb(k, m) * self.n_cells(m) for m in range(k + 1))

    # -- validation ----------------------------------------------------------

    def validate(self) -> list[str]:
        """Check the simplicial identities on the stored face records."""
        problems = []
        for k in range(1, self.top_dim + 1):
            for key in self.cells(k):
                for i in range(k + 1):
                    fs = self.face(k, key, i)
                    if not isinstance(fs, FormalSimplex):
                        problems.append(f"face({k},{key},{i}) missing")
                        continue
                    if len(fs.op) != k or not op_is_monotone(fs.op):
                        problems.append(f"face({k},{key},{i}) has a bad operator")
                        continue
                    if sorted(set(fs.op)) != list(range(fs.base_dim + 1)):
                        problems.append(f"face({k},{key},{i}) operator not surjective")
                        continue
                    if not self.has_cell(fs.base_dim, fs.key):
                        problems.append(f"face({k},{key},{i}) targets a missing cell")
        if problems:
            return problems
        for k in range(2, self.top_dim + 1):
            for key in self.cells(k):
                x = FormalSimplex(op_identity(k), key)
                for j in range(k + 1):
                    for i in range(j):
                        # d_i d_j = d_{j-1} d_i for i < j
                        a = self.act(self.act(x, op_face(k, j)), op_face(k - 1, i))
                        b = self.act(self.act(x, op_face(k, i)), op_face(k - 1, j - 1))
                        if a != b:
                            problems.append(f"d_{i} d_{j} failure at ({k},{key})")
        return problems

    # -- serialization -------------------------------------------------------

    def as_json(self) -> dict:
        cells = {str(k): [str(key) for key in self.cells(k)]
                 for k in range(self.top_dim + 1)}
        faces = {}
        for k in range(1, self.top_dim + 1):
            for key in self.cells(k):
                recs = []
                for i in range(k + 1):
                    fs = self.face(k, key, i)
                    recs.append({"op": list(fs.op), "target": str(fs.key)})
                faces[f"{k}:{key}"] = recs
        return {"top_dim": self.top_dim, "cells": cells, "faces": faces}

    def dump_json(self) -> str:
        return json.dumps(self.as_json(), sort_keys=True, indent=1)


def from_json(data: dict) -> TruncSSet:
    """Rebuild a TruncSSet with string keys from its JSON form."""
    top = data["top_dim"]
    cells = {int(k): list(v) for k, v in data["cells"].items()}
    faces = {}
    for tag, recs in data["faces"].items():
        k, key = tag.split(":", 1)
        faces[(int(k), key)] = tuple(
            FormalSimplex(tuple(r["op"]), r["target"]) for r in recs)
    return TruncSSet.from_faces_dict(top, cells, faces)


# ---------------------------------------------------------------------------
# maps and colimits

class SSetMap:
    """A simplicial map, stored on nondegenerate simplices."""

    def __init__(self, source: TruncSSet, target: TruncSSet, mapping: dict):
        # mapping[(k, key)] -> FormalSimplex of the target
        self.source = source
        self.target = target
        self.mapping = mapping

    def apply(self, k: int, fs: FormalSimplex) -> FormalSimplex:
        img = self.mapping[(fs.base_dim, fs.key)]
        return FormalSimplex(op_compose(img.op, fs.op), img.key)

    def validate(self) -> list[str]:
        problems = []
        for k in range(self.source.top_dim + 1):
            for key in self.source.cells(k):
                if (k, key) not in self.mapping:
                    problems.append(f"no image for ({k},{key})")
                    continue
                img = self.mapping[(k, key)]
                if not self.target.has_cell(img.base_dim, img.key):
                    problems.append(f"image of ({k},{key}) missing in target")
        if problems:
            return problems
        for k in range(1, self.source.top_dim + 1):
            for key in self.source.cells(k):
                for i in range(k + 1):
                    left = self.apply(k - 1, self.source.face(k, key, i))
                    right = self.target.act(
                        self.apply(k, FormalSimplex(op_identity(k), key)),
                        op_face(k, i))
                    if left != right:
                        problems.append(f"face mismatch at ({k},{key}) d_{i}")
        return problems


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
            if _sort_token(rx) <= _sort_token(ry):
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


def _sort_token(x):
    return repr(x)


def colimit(objects: dict, maps: list, top_dim: int | None = None):
    """Dimensionwise colimit of a finite diagram of truncated simplicial sets.

    objects maps a tag to a TruncSSet; maps is a list of triples (src_tag,
    dst_tag, SSetMap).  All simplices are materialized up to the common
    truncation bound, glued by union-find, and the result is renormalized to
    its nondegenerate cells.  Returns (colimit, legs) where legs[tag] is a
    dict (k, nondegenerate key) -> FormalSimplex of the result.
    """
    if top_dim is None:
        top_dim = max((x.top_dim for x in objects.values()), default=0)
    if any(x.top_dim < top_dim for x in objects.values()):
        raise ValueError("objects must share the truncation bound")

    uf = _UnionFind()
    classes_at: dict[int, dict] = {k: {} for k in range(top_dim + 1)}
    for k in range(top_dim + 1):
        for src, dst, f in maps:
            for fs in objects[src].all_simplices(k):
                uf.union((k, src, fs), (k, dst, f.apply(k, fs)))
        for tag, x in objects.items():
            for fs in x.all_simplices(k):
                uf.find((k, tag, fs))

    def class_of(k, tag, fs):
        return uf.find((k, tag, fs))

    # one deterministic member per class
    member: dict = {}
    for node in list(uf.parent):
        root = uf.find(node)
        if root not in member or _sort_token(node) < _sort_token(member[root]):
            member[root] = node

    # renormalize bottom-up: decompose every class as (surjection, nondeg key)
    cells: dict[int, list] = {k: [] for k in range(top_dim + 1)}
    faces: dict = {}
    decomp: dict = {}  # class root -> FormalSimplex over new keys
    for k in range(top_dim + 1):
        degenerate = {}
        if k > 0:
            for root in classes_at[k - 1]:
                _, tag, fs = member[root]
                d = decomp[root]
                for i in range(k):
                    eta = op_degeneracy(k - 1, i)
                    img = FormalSimplex(op_compose(fs.op, eta), fs.key)
                    r = class_of(k, tag, img)
                    cand = FormalSimplex(op_compose(d.op, eta), d.key)
                    if r in degenerate:
                        if degenerate[r] != cand:
                            raise AssertionError(
                                "inconsistent degeneracy decomposition in colimit")
                    else:
                        degenerate[r] = cand
        roots = set()
        for tag, x in objects.items():
            for fs in x.all_simplices(k):
                roots.add(class_of(k, tag, fs))
        fresh = sorted((r for r in roots if r not in degenerate),
                       key=lambda r: _sort_token(member[r]))
        for idx, r in enumerate(fresh):
            key = (k, idx)
            cells[k].append(key)
            decomp[r] = FormalSimplex(op_identity(k), key)
        for r, cand in degenerate.items():
            decomp[r] = cand
        for r in roots:
            classes_at[k][r] = decomp[r]
        # face records of the new nondegenerate cells
        for r in fresh:
            _, tag, fs = member[r]
            key = decomp[r].key
            if k > 0:
                x = objects[tag]
                recs = []
                for i in range(k + 1):
                    ffs = x.act(fs, op_face(k, i))
                    recs.append(decomp[class_of(k - 1, tag, ffs)])
                faces[(k, key)] = tuple(recs)

    result = TruncSSet.from_faces_dict(top_dim, cells, faces, name="colimit")
    legs = {}
    for tag, x in objects.items():
        mapping = {}
        for k in range(top_dim + 1):
            for key in x.cells(k):
                fs = FormalSimplex(op_identity(k), key)
                mapping[(k, key)] = decomp[class_of(k, tag, fs)]
        legs[tag] = mapping
    return result, legs


def pushout(f: SSetMap, g: SSetMap):
    """Pushout of target(f) <- source -> target(g); source is shared."""
    if f.source is not g.source:
        raise ValueError("pushout legs must share their source")
    objects = {0: f.source, 1: f.target, 2: g.target}
    result, legs = colimit(objects, [(0, 1, f), (0, 2, g)])
    return result, legs[1], legs[2]
