"""Finite posets: weak Bruhat orders, ordered partitions, subset lattices,
products, wedges, nerves, and DOT export."""

from __future__ import annotations

import itertools

from .sset import TruncSSet, FormalSimplex, op_identity


class PosetGuardExceeded(ValueError):
    """A poset constructor refused a base set beyond its guard."""


DEFAULT_POSET_GUARD = 6


class FinitePoset:
    """An explicit finite poset.

    Elements are arbitrary sortable hashables kept in a fixed order; the
    order relation is stored as up-sets over element indices, with the Hasse
    covering relation cached on demand.
    """

    def __init__(self, elements, up):
        self.elements = list(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate elements")
        self._up = [frozenset(s) for s in up]  # indices j with i <= j, includes i
        self._covers = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_covers(cls, elements, covers) -> "FinitePoset":
        """Build from the covering relation, as a dict element -> iterable of
        elements covering it; the order is its reflexive-transitive closure."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        succ = [[] for _ in elements]
        for x, ys in covers.items():
            for y in ys:
                succ[index[x]].append(index[y])
        up: list = [None] * len(elements)
        in_progress = set()

        def close(i):
            if up[i] is None:
                if i in in_progress:
                    raise ValueError("covering relation has a cycle")
                in_progress.add(i)
                acc = {i}
                for j in succ[i]:
                    close(j)
                    acc |= up[j]
                up[i] = acc
                in_progress.discard(i)
        for i in range(len(elements)):
            close(i)
        return cls(elements, up)

    @classmethod
    def from_relation(cls, elements, le) -> "FinitePoset":
        """Build from a binary predicate; relation must already be an order."""
        elements = list(elements)
        up = [{j for j, y in enumerate(elements) if le(x, y)}
              for x in elements]
        poset = cls(elements, up)
        poset._check_order()
        return poset

    def _check_order(self):
        up = self._up
        n = len(self.elements)
        for i in range(n):
            if i not in up[i]:
                raise ValueError("relation is not reflexive")
            for j in up[i]:
                if i != j and i in up[j]:
                    raise ValueError("relation is not antisymmetric")
                if not up[j] <= up[i]:
                    raise ValueError("relation is not transitive")

    # -- basic queries -------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def index(self, x) -> int:
        return self._index[x]

    def le(self, x, y) -> bool:
        return self._index[y] in self._up[self._index[x]]

    def lt(self, x, y) -> bool:
        return x != y and self.le(x, y)

    def up_indices(self, i: int) -> frozenset:
        return self._up[i]

    def covers(self) -> dict:
        """Hasse diagram: element -> sorted tuple of covering elements."""
        if self._covers is None:
            out = {}
            for i, x in enumerate(self.elements):
                strict = self._up[i] - {i}
                minimal = [j for j in strict
                           if not any(j in self._up[k] and k != j for k in strict)]
                out[x] = tuple(sorted((self.elements[j] for j in minimal)))
            self._covers = out
        return self._covers

    def cover_pairs(self) -> list:
        return sorted((x, y) for x, ys in self.covers().items() for y in ys)

    def minimal_elements(self) -> list:
        n = len(self.elements)
        below = [0] * n
        for i in range(n):
            for j in self._up[i]:
                if j != i:
                    below[j] += 1
        return [x for i, x in enumerate(self.elements) if below[i] == 0]

    def maximal_elements(self) -> list:
        return [x for i, x in enumerate(self.elements)
                if self._up[i] == frozenset({i})]

    def bottom(self):
        mins = self.minimal_elements()
        return mins[0] if len(mins) == 1 else None

    def top(self):
        maxs = self.maximal_elements()
        return maxs[0] if len(maxs) == 1 else None

    def is_bounded(self) -> bool:
        return (len(self.elements) > 0
                and self.bottom() is not None and self.top() is not None)

    def height(self) -> int:
        """Number of elements in a longest chain."""
        n = len(self.elements)
        order = sorted(range(n), key=lambda i: len(self._up[i]), reverse=True)
        h = [1] * n
        for i in order:
            for j in self._up[i]:
                if j != i:
                    h[j] = max(h[j], h[i] + 1)
        return max(h, default=0)

    def chains(self, max_size: int | None = None):
        """All nonempty strict chains as tuples of element indices."""
        n = len(self.elements)
        if max_size is None:
            max_size = n
        stack = []

        def walk(i):
            stack.append(i)
            yield tuple(stack)
            if len(stack) < max_size:
                for j in sorted(self._up[i] - {i}):
                    yield from walk(j)
            stack.pop()
        for i in range(n):
            yield from walk(i)

    # -- constructions -------------------------------------------------------

    def product(self, other: "FinitePoset") -> "FinitePoset":
        elements = [(x, y) for x in self.elements for y in other.elements]
        nq = len(other.elements)
        up = []
        for i in range(len(self.elements)):
            for j in range(len(other.elements)):
                up.append({a * nq + b
                           for a in self._up[i] for b in other._up[j]})
        return FinitePoset(elements, up)

    def wedge(self, other: "FinitePoset") -> "FinitePoset":
        """Glue self's top to other's bottom; both posets must be bounded."""
        if not (self.is_bounded() and other.is_bounded()):
            raise ValueError("wedge requires bounded posets")
        bot_q = other.index(other.bottom())
        elements = [("L", x) for x in self.elements]
        keep = [j for j in range(len(other.elements)) if j != bot_q]
        reindex = {j: len(elements) + pos for pos, j in enumerate(keep)}
        reindex[bot_q] = self.index(self.top())
        elements += [("R", other.elements[j]) for j in keep]
        up = []
        for i in range(len(self.elements)):
            up.append(set(self._up[i])
                      | {reindex[j] for j in range(len(other.elements))})
        for j in keep:
            up.append({reindex[b] for b in other._up[j]})
        return FinitePoset(elements, up)

    def opposite(self) -> "FinitePoset":
        n = len(self.elements)
        up = [{j for j in range(n) if i in self._up[j]} for i in range(n)]
        return FinitePoset(self.elements, up)

    def subposet(self, subset) -> "FinitePoset":
        keep = [self._index[x] for x in subset]
        keep_set = set(keep)
        keep.sort()
        reindex = {i: pos for pos, i in enumerate(keep)}
        elements = [self.elements[i] for i in keep]
        up = [{reindex[j] for j in self._up[i] & keep_set} for i in keep]
        return FinitePoset(elements, up)

    # -- predicates ----------------------------------------------------------

    def downward_closed(self, subset) -> bool:
        idx = {self._index[x] for x in subset}
        return all(i in idx
                   for i in range(len(self.elements)) if self._up[i] & idx)

    def upward_closed(self, subset) -> bool:
        idx = {self._index[x] for x in subset}
        return all(self._up[j] <= idx for j in idx)

    def downward_closure(self, subset) -> list:
        idx = {self._index[x] for x in subset}
        out = [i for i in range(len(self.elements)) if self._up[i] & idx]
        return [self.elements[i] for i in sorted(out)]

    # -- export --------------------------------------------------------------

    def to_dot(self, name: str = "poset") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        labels = {x: str(x) for x in self.elements}
        for x in sorted(self.elements):
            lines.append(f'  "{labels[x]}";')
        for x, y in self.cover_pairs():
            lines.append(f'  "{labels[x]}" -> "{labels[y]}";')
        lines.append("}")
        return "\n".join(lines)


def is_order_isomorphism(p: FinitePoset, q: FinitePoset, mapping) -> bool:
    """Check that mapping (a dict or callable) is an order isomorphism."""
    f = mapping if callable(mapping) else mapping.__getitem__
    if len(p) != len(q):
        return False
    images = [f(x) for x in p.elements]
    if len(set(images)) != len(images) or any(y not in q for y in images):
        return False
    for x in p.elements:
        for y in p.elements:
            if p.le(x, y) != q.le(f(x), f(y)):
                return False
    return True


# ---------------------------------------------------------------------------
# the named posets

def inversions(seq: tuple) -> frozenset:
    """Pairs (u, v) with u < v appearing in decreasing order in seq."""
    return frozenset((seq[j], seq[i])
                     for i in range(len(seq)) for j in range(i + 1, len(seq))
                     if seq[i] > seq[j])


def bruhat_le_by_inversions(x: tuple, y: tuple) -> bool:
    """Oracle for the reverse right weak order: x leads to y iff the
    inversion set of y is contained in that of x."""
    return inversions(y) <= inversions(x)


def bruhat(base, guard: int = DEFAULT_POSET_GUARD) -> FinitePoset:
    """The (reverse right) weak Bruhat order on the enumerations of a finite
    totally ordered set.  The decreasing enumeration is the bottom."""
    base = sorted(base)
    if len(base) > guard:
        raise PosetGuardExceeded(f"bruhat guard {guard} exceeded")
    elements = sorted(itertools.permutations(base))
    covers = {}
    for w in elements:
        out = []
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                out.append(w[:i] + (w[i + 1], w[i]) + w[i + 2:])
        covers[w] = out
    return FinitePoset.from_covers(elements, covers)


def ordered_partitions(n: int, guard: int = DEFAULT_POSET_GUARD) -> FinitePoset:
    """Ordered partitions of {1, ..., n} under the refinement inverse order:
    merging two adjacent blocks goes up."""
    if n > guard:
        raise PosetGuardExceeded(f"ordered_partitions guard {guard} exceeded")
    if n == 0:
        return FinitePoset([()], [{0}])

    def gen(rest):
        rest = tuple(sorted(rest))
        if not rest:
            yield ()
            return
        for r in range(1, len(rest) + 1):
            for block in itertools.combinations(rest, r):
                for tail in gen(set(rest) - set(block)):
                    yield (tuple(sorted(block)),) + tail
    elements = sorted(gen(range(1, n + 1)))
    covers = {}
    for part in elements:
        out = []
        for i in range(len(part) - 1):
            merged = tuple(sorted(part[i] + part[i + 1]))
            out.append(part[:i] + (merged,) + part[i + 2:])
        covers[part] = out
    return FinitePoset.from_covers(elements, covers)


def interval_lattice(i: int, j: int) -> FinitePoset:
    """Subsets of the open integer interval between i and j, by inclusion.
    A single point when j <= i + 1; empty when i > j."""
    if i > j:
        return FinitePoset([], [])
    mid = range(i + 1, j)
    elements = sorted(
        (tuple(sorted(s)) for r in range(len(mid) + 1)
         for s in itertools.combinations(mid, r)))
    return FinitePoset.from_relation(
        elements, lambda a, b: set(a) <= set(b))


def product(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    return p.product(q)


def wedge(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    return p.wedge(q)


def point_poset() -> FinitePoset:
    return FinitePoset(["*"], [{0}])


def downward_closed(p: FinitePoset, subset) -> bool:
    return p.downward_closed(subset)


def upward_closed(p: FinitePoset, subset) -> bool:
    return p.upward_closed(subset)


# ---------------------------------------------------------------------------
# nerves

def nerve(p: FinitePoset, top_dim: int | None = None) -> TruncSSet:
    """Nerve of a poset as a truncated simplicial set.

    Nondegenerate k-simplices are the strict chains with k+1 elements,
    stored as tuples of element indices.  The default truncation is one
    above the longest chain, so every homology degree of the nerve is
    computed exactly.
    """
    if top_dim is None:
        top_dim = p.height()
    cells: dict[int, list] = {k: [] for k in range(top_dim + 1)}
    for chain in p.chains(max_size=top_dim + 1):
        cells[len(chain) - 1].append(chain)
    for k in cells:
        cells[k].sort()

    def face_fn(k, key, i):
        return FormalSimplex(op_identity(k - 1), key[:i] + key[i + 1:])

    name = f"nerve[{len(p)} elements]"
    return TruncSSet(top_dim, cells, face_fn, name=name)


def nerve_map(p: FinitePoset, q: FinitePoset, mapping, np_sset=None, nq_sset=None):
    """The simplicial map of nerves induced by a monotone injection p -> q
    given as a dict on elements.  Returns (nerve(p), nerve(q), SSetMap)."""
    from .sset import SSetMap
    xp = np_sset if np_sset is not None else nerve(p)
    xq = nq_sset if nq_sset is not None else nerve(q)
    if xq.top_dim < xp.top_dim:
        raise ValueError("target nerve is truncated below the source")
    table = {}
    for k in range(xp.top_dim + 1):
        for key in xp.cells(k):
            image = tuple(q.index(mapping[p.elements[i]]) for i in key)
            table[(k, key)] = FormalSimplex(op_identity(k), image)
    return xp, xq, SSetMap(xp, xq, table)
