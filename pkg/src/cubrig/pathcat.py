"""Path categories of cubical sets.

A path class is the sequence of nondegenerate edges it traverses; constant
steps are collapsed away.  The leadsto preorder is generated by exchanging
the two boundary paths of each 2-cell, oriented from the path through the
larger coordinate to the path through the smaller one, then closed
reflexively and transitively.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boxcat import BoxMap, coords_of, distance, vertex_le
from .cubeset import BipointedComplex, CubicalComplex, standard_cube
from .posets import FinitePoset, bruhat, is_order_isomorphism


class LoopDetected(ValueError):
    """The nondegenerate edge graph has a directed cycle, so path sets may
    be infinite."""


@dataclass(frozen=True)
class Path:
    """A path class: the nondegenerate edges traversed, with the vertex
    chain they pass through (one more vertex than edges)."""

    edges: tuple
    vertices: tuple

    @property
    def source(self):
        return self.vertices[0]

    @property
    def target(self):
        return self.vertices[-1]

    def __len__(self):
        return len(self.edges)

    def compose(self, other: "Path") -> "Path":
        """self followed by other."""
        if self.target != other.source:
            raise ValueError("paths do not chain")
        return Path(self.edges + other.edges, self.vertices + other.vertices[1:])

    def sort_key(self):
        return (len(self.edges), repr(self.edges))


def edge_digraph(complex_: CubicalComplex):
    """Vertex adjacency through nondegenerate edges; raises LoopDetected."""
    succ = {v: [] for v in complex_.cells(0)}
    for e in complex_.cells(1):
        lo, hi = complex_.edge_endpoints(e)
        succ[lo].append((e, hi))
    # Kahn cycle check
    indeg = {v: 0 for v in succ}
    for v in succ:
        for _, w in succ[v]:
            indeg[w] += 1
    order = [v for v in succ if indeg[v] == 0]
    seen = 0
    while order:
        v = order.pop()
        seen += 1
        for _, w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
    if seen != len(succ):
        raise LoopDetected("directed cycle among nondegenerate edges")
    return succ


def paths(bp: BipointedComplex) -> list[Path]:
    """All path classes from bp.a to bp.b, each as its canonical
    nondegenerate representative."""
    succ = edge_digraph(bp.complex)
    out = []
    edges_stack: list = []
    verts_stack = [bp.a]

    def walk(v):
        if v == bp.b:
            out.append(Path(tuple(edges_stack), tuple(verts_stack)))
        for e, w in succ[v]:
            edges_stack.append(e)
            verts_stack.append(w)
            walk(w)
            edges_stack.pop()
            verts_stack.pop()
    walk(bp.a)
    out.sort(key=Path.sort_key)
    return out


def square_moves(complex_: CubicalComplex):
    """One move per nondegenerate 2-cell: the two boundary paths between its
    extreme corners, larger-coordinate-first path leading to the other."""
    moves = []
    for sq in complex_.cells(2):
        cell = complex_.nondeg(2, sq)
        corner = {}
        for mask in (0, 3):
            fc = complex_.act(cell, BoxMap.iota(2, mask, mask))
            corner[mask] = fc.key
        sides = {}
        for i, eps in ((1, 0), (1, 1), (2, 0), (2, 1)):
            fc = complex_.act(cell, BoxMap.face(2, i, eps))
            sides[(i, eps)] = fc.key if fc.is_nondegenerate() else None
        src = _boundary_path(complex_, [sides[(1, 0)], sides[(2, 1)]])
        dst = _boundary_path(complex_, [sides[(2, 0)], sides[(1, 1)]])
        moves.append((src, dst, corner[0], corner[3]))
    return moves


def _boundary_path(complex_, side_keys):
    edges = []
    for key in side_keys:
        if key is not None:
            edges.append(key)
    return tuple(edges)


def _vertex_chain(complex_, start, edges):
    verts = [start]
    for e in edges:
        lo, hi = complex_.edge_endpoints(e)
        verts.append(hi)
    return tuple(verts)


def leadsto_pairs(bp: BipointedComplex, path_list=None):
    """The one-step moves among the paths of bp, as index pairs."""
    complex_ = bp.complex
    path_list = paths(bp) if path_list is None else path_list
    index = {p.edges: i for i, p in enumerate(path_list)}
    moves = square_moves(complex_)
    pairs = set()
    for i, p in enumerate(path_list):
        for src, dst, u, v in moves:
            m = len(src)
            for pos in range(len(p.edges) - m + 1):
                if p.vertices[pos] != u or p.vertices[pos + m] != v:
                    continue
                if p.edges[pos:pos + m] != src:
                    continue
                q_edges = p.edges[:pos] + dst + p.edges[pos + m:]
                j = index.get(q_edges)
                if j is not None:
                    pairs.add((i, j))
    return pairs


class PathPreorder:
    """Paths between two vertices with the reflexive-transitive closure of
    the 2-cell moves."""

    def __init__(self, paths_list, pairs):
        self.paths = list(paths_list)
        n = len(self.paths)
        reach = [set([i]) for i in range(n)]
        succ = [set() for _ in range(n)]
        for i, j in pairs:
            succ[i].add(j)
        for i in range(n):
            todo = [i]
            while todo:
                x = todo.pop()
                for y in succ[x]:
                    if y not in reach[i]:
                        reach[i].add(y)
                        todo.append(y)
        self._reach = reach

    def __len__(self):
        return len(self.paths)

    def leadsto(self, p: Path, q: Path) -> bool:
        i = next(i for i, x in enumerate(self.paths) if x.edges == p.edges)
        j = next(j for j, x in enumerate(self.paths) if x.edges == q.edges)
        return j in self._reach[i]

    def is_partial_order(self) -> bool:
        return all(not (j in self._reach[i] and i in self._reach[j])
                   for i in range(len(self.paths))
                   for j in range(len(self.paths)) if i != j)

    def to_poset(self) -> FinitePoset:
        """The underlying poset; requires antisymmetry."""
        if not self.is_partial_order():
            raise ValueError("preorder is not antisymmetric")
        order = {p.edges: self._reach[i] for i, p in enumerate(self.paths)}
        return FinitePoset(
            [p.edges for p in self.paths],
            [order[p.edges] for p in self.paths])


def leadsto_closure(bp: BipointedComplex) -> PathPreorder:
    path_list = paths(bp)
    return PathPreorder(path_list, leadsto_pairs(bp, path_list))


class PathCategory:
    """Objects are the vertices; homs are path preorders; composition is
    concatenation of representatives."""

    def __init__(self, complex_: CubicalComplex):
        self.complex = complex_
        edge_digraph(complex_)  # loop-freeness check
        self._homs: dict = {}

    def hom(self, a, b) -> PathPreorder:
        if (a, b) not in self._homs:
            self._homs[(a, b)] = leadsto_closure(
                BipointedComplex(self.complex, a, b))
        return self._homs[(a, b)]

    def unit(self, a) -> Path:
        return Path((), (a,))

    def compose(self, p: Path, q: Path) -> Path:
        """p then q, landing in hom(p.source, q.target)."""
        return p.compose(q)


def path_category(complex_: CubicalComplex) -> PathCategory:
    return PathCategory(complex_)


# ---------------------------------------------------------------------------
# the comparison with the weak Bruhat order

def step_word(p: Path) -> tuple[int, ...]:
    """Coordinates flipped along a path of a cube, in traversal order."""
    out = []
    for i in range(len(p.vertices) - 1):
        a, _ = p.vertices[i]
        b, _ = p.vertices[i + 1]
        diff = b & ~a
        out.append(diff.bit_length())
    return tuple(out)


def bruhat_compare(n: int, a: int, b: int):
    """The order isomorphism from the path poset of the cube between a and b
    onto the weak Bruhat order of the swept coordinates.

    Returns (preorder, poset, mapping dict); empty data when a is not
    below b.
    """
    cube = standard_cube(n).to_complex()
    if not vertex_le(a, b):
        return None, FinitePoset([], []), {}
    bp = BipointedComplex(cube, (a, a), (b, b))
    pre = leadsto_closure(bp)
    target = bruhat(sorted(coords_of(b & ~a)), guard=max(6, n))
    mapping = {p.edges: step_word(p) for p in pre.paths}
    if not pre.is_partial_order():
        raise AssertionError("path preorder on a cube must be a partial order")
    poset = pre.to_poset()
    if not is_order_isomorphism(poset, target, mapping):
        raise AssertionError("path order does not match the Bruhat order")
    return pre, target, mapping
