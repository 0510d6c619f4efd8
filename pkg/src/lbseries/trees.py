"""Rooted trees and forests: planar and non-planar data model.

Conventions used throughout the package:

* A planar tree stores its children as a tuple in *serialization order*,
  which is the order the children appear in the bracket notation.  The
  planar left-to-right order is the reverse of the stored tuple: grafting
  a new subtree "leftmost" at a vertex appends it to the stored tuple.
  (All products, coproducts and worked identities in this package are
  consistent with this single orientation.)
* Serialization is the nested-bracket form.  The single vertex is ``[]``,
  a tree is ``[<children>]`` and a forest is its trees joined by spaces.
  The empty forest serializes to the empty string.
* Non-planar trees are represented by a canonical planar embedding whose
  child lists are sorted under a fixed total order (vertex count first,
  then recursively on the sorted child keys).  Forests of non-planar
  trees are sorted multisets under the same order.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence


class ForestParseError(ValueError):
    """Malformed bracket input; ``position`` is the offending index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PlanarTree:
    """An ordered rooted tree; children order is significant."""

    __slots__ = ("children", "vertex_count", "_hash")

    def __init__(self, children: Sequence["PlanarTree"] = ()):
        self.children = tuple(children)
        self.vertex_count = 1 + sum(c.vertex_count for c in self.children)
        self._hash = hash(("pt", self.children))

    def __eq__(self, other):
        return (
            self is other
            or (isinstance(other, PlanarTree) and self.children == other.children)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PlanarTree({self.serialize()!r})"

    def serialize(self) -> str:
        return "[" + "".join(c.serialize() for c in self.children) + "]"

    def preorder(self) -> Iterator["PlanarTree"]:
        """Yield all subtrees, root first, children in stored order."""
        yield self
        for c in self.children:
            yield from c.preorder()

    def attach_at(self, index: int, sub: "PlanarTree") -> "PlanarTree":
        """Return a copy with ``sub`` grafted leftmost below preorder vertex ``index``.

        "Leftmost" appends ``sub`` to the vertex's stored child tuple.
        """
        tree, rest = self._attach(index, sub)
        if rest is not None:
            raise IndexError(f"vertex index {index} out of range")
        return tree

    def _attach(self, index: int, sub: "PlanarTree"):
        if index == 0:
            return PlanarTree(self.children + (sub,)), None
        index -= 1
        new_children = list(self.children)
        for i, c in enumerate(self.children):
            if index < c.vertex_count:
                new_children[i], _ = c._attach(index, sub)
                return PlanarTree(new_children), None
            index -= c.vertex_count
        return self, index

    def to_json(self):
        return [c.to_json() for c in self.children]

    @staticmethod
    def from_json(data) -> "PlanarTree":
        return PlanarTree(tuple(PlanarTree.from_json(c) for c in data))


LEAF = PlanarTree()


class OrderedForest:
    """A finite sequence of planar trees; the empty sequence is the unit."""

    __slots__ = ("trees", "vertex_count", "_hash")

    def __init__(self, trees: Sequence[PlanarTree] = ()):
        self.trees = tuple(trees)
        self.vertex_count = sum(t.vertex_count for t in self.trees)
        self._hash = hash(("of", self.trees))

    def __eq__(self, other):
        return (
            self is other
            or (isinstance(other, OrderedForest) and self.trees == other.trees)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"OrderedForest({self.serialize()!r})"

    def __len__(self):
        return len(self.trees)

    @property
    def is_empty(self) -> bool:
        return not self.trees

    def serialize(self) -> str:
        return " ".join(t.serialize() for t in self.trees)

    def concat(self, other: "OrderedForest") -> "OrderedForest":
        return OrderedForest(self.trees + other.trees)

    def to_json(self):
        return {"trees": [t.to_json() for t in self.trees]}

    @staticmethod
    def from_json(data) -> "OrderedForest":
        return OrderedForest(tuple(PlanarTree.from_json(t) for t in data["trees"]))


EMPTY_FOREST = OrderedForest()


def parse_forest(text: str) -> OrderedForest:
    """Parse nested-bracket notation into an :class:`OrderedForest`.

    Grammar: ``forest := tree*``, ``tree := "[" tree* "]"``; whitespace
    separates top-level trees and is ignored elsewhere between trees.
    """
    pos = 0
    n = len(text)

    def parse_tree() -> PlanarTree:
        nonlocal pos
        if pos >= n or text[pos] != "[":
            raise ForestParseError("expected '['", pos)
        pos += 1
        children = []
        while pos < n and text[pos] != "]":
            if text[pos].isspace():
                pos += 1
                continue
            children.append(parse_tree())
        if pos >= n:
            raise ForestParseError("unbalanced brackets: missing ']'", pos)
        pos += 1
        return PlanarTree(children)

    trees = []
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch == "[":
            trees.append(parse_tree())
        else:
            raise ForestParseError(f"unexpected character {ch!r}", pos)
    return OrderedForest(trees)


def parse_tree(text: str) -> PlanarTree:
    """Parse a single planar tree; reject multi-tree input."""
    forest = parse_forest(text)
    if len(forest.trees) != 1:
        raise ForestParseError(
            f"expected exactly one tree, found {len(forest.trees)}", 0
        )
    return forest.trees[0]


def mirror_tree(t: PlanarTree) -> PlanarTree:
    """Reverse every child list (the planar mirror image)."""
    return PlanarTree(tuple(mirror_tree(c) for c in reversed(t.children)))


def mirror_forest(f: OrderedForest) -> OrderedForest:
    """Mirror every tree and reverse the forest order."""
    return OrderedForest(tuple(mirror_tree(t) for t in reversed(f.trees)))


class NonPlanarTree:
    """A rooted tree up to planar embedding, held in canonical form.

    The canonical representative sorts every child list ascending under
    ``sort_key``: vertex count first, then lexicographically on the
    children's own keys.  Two embeddings of the same abstract tree always
    canonicalize identically.
    """

    __slots__ = ("rep", "_key", "_hash")

    def __init__(self, rep: PlanarTree, _key=None):
        self.rep = rep
        self._key = _key if _key is not None else _planar_key(rep)
        self._hash = hash(("nt", self._key))

    @property
    def vertex_count(self) -> int:
        return self.rep.vertex_count

    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return (
            self is other
            or (isinstance(other, NonPlanarTree) and self._key == other._key)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"NonPlanarTree({self.serialize()!r})"

    def serialize(self) -> str:
        return self.rep.serialize()


def _planar_key(t: PlanarTree):
    return (t.vertex_count, tuple(_planar_key(c) for c in t.children))


def canonicalize(t: PlanarTree) -> NonPlanarTree:
    """Forget the planar embedding of a single tree."""
    rep = _canonical_rep(t)
    return NonPlanarTree(rep)


def _canonical_rep(t: PlanarTree) -> PlanarTree:
    children = sorted((_canonical_rep(c) for c in t.children), key=_planar_key)
    return PlanarTree(children)


class Forest:
    """A multiset of non-planar trees, stored sorted; product is commutative."""

    __slots__ = ("trees", "vertex_count", "_hash")

    def __init__(self, trees: Sequence[NonPlanarTree] = ()):
        self.trees = tuple(sorted(trees, key=NonPlanarTree.sort_key))
        self.vertex_count = sum(t.vertex_count for t in self.trees)
        self._hash = hash(("f", tuple(t.sort_key() for t in self.trees)))

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Forest)
            and len(self.trees) == len(other.trees)
            and all(a == b for a, b in zip(self.trees, other.trees))
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Forest({self.serialize()!r})"

    def __len__(self):
        return len(self.trees)

    @property
    def is_empty(self) -> bool:
        return not self.trees

    def serialize(self) -> str:
        return " ".join(t.serialize() for t in self.trees)

    def mul(self, other: "Forest") -> "Forest":
        return Forest(self.trees + other.trees)


EMPTY_NP_FOREST = Forest()


def forget_planarity(forest: OrderedForest) -> Forest:
    """Canonicalize each tree and forget the sequence order."""
    return Forest(tuple(canonicalize(t) for t in forest.trees))


def parse_nonplanar_forest(text: str) -> Forest:
    return forget_planarity(parse_forest(text))


def symmetry_factor(t: NonPlanarTree) -> int:
    """Order of the automorphism group of a non-planar rooted tree."""
    return _symmetry_of_rep(t.rep)


def _symmetry_of_rep(rep: PlanarTree) -> int:
    result = 1
    run = 0
    prev = None
    for c in rep.children:
        result *= _symmetry_of_rep(c)
        if prev is not None and c == prev:
            run += 1
        else:
            run = 1
        result *= run
        prev = c
    return result


@lru_cache(maxsize=None)
def enumerate_planar_trees(n: int) -> tuple[PlanarTree, ...]:
    """All planar trees with ``n`` vertices, lexicographic by serialization."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (LEAF,)
    out = []
    for forest in enumerate_ordered_forests(n - 1):
        if forest.trees:
            out.append(PlanarTree(forest.trees))
    return tuple(sorted(out, key=PlanarTree.serialize))


@lru_cache(maxsize=None)
def enumerate_ordered_forests(n: int) -> tuple[OrderedForest, ...]:
    """All ordered forests with ``n`` vertices, lexicographic by serialization."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return (EMPTY_FOREST,)
    out = []
    for first_size in range(1, n + 1):
        for tree in enumerate_planar_trees(first_size):
            for rest in enumerate_ordered_forests(n - first_size):
                out.append(OrderedForest((tree,) + rest.trees))
    return tuple(sorted(out, key=OrderedForest.serialize))


@lru_cache(maxsize=None)
def enumerate_nonplanar_trees(n: int) -> tuple[NonPlanarTree, ...]:
    """All non-planar trees with ``n`` vertices, sorted by canonical key."""
    seen = {}
    for t in enumerate_planar_trees(n):
        c = canonicalize(t)
        seen[c.sort_key()] = c
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def enumerate_forests(n: int) -> tuple[Forest, ...]:
    """All non-planar forests with ``n`` total vertices."""
    seen = {}
    for of in enumerate_ordered_forests(n):
        f = forget_planarity(of)
        key = tuple(t.sort_key() for t in f.trees)
        seen[key] = f
    return tuple(seen[k] for k in sorted(seen))
