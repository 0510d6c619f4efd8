"""Non-planar side: grafting, the vertex-replacement operad, and the two
coproducts that govern composition (admissible edge cuts) and substitution
(extraction-contraction of spanning subforests) for series over rooted trees.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .coeffalg import CharacterMap, LinComb, bilinear, tensor
from .trees import (
    EMPTY_NP_FOREST,
    Forest,
    NonPlanarTree,
    PlanarTree,
    canonicalize,
    enumerate_forests,
)


def graft(t1: NonPlanarTree, t2: NonPlanarTree) -> LinComb:
    """Sum over all ways to add an edge from a vertex of ``t2`` to ``t1``'s root."""
    rep1, rep2 = t1.rep, t2.rep
    terms = []
    for index in range(rep2.vertex_count):
        terms.append((canonicalize(rep2.attach_at(index, rep1)), 1))
    return LinComb(terms)


def graft_comb(x: LinComb, y: LinComb) -> LinComb:
    return bilinear(x, y, graft)


def check_prelie_identity(t1: NonPlanarTree, t2: NonPlanarTree, t3: NonPlanarTree) -> bool:
    """a(bc)-associator symmetry in the first two arguments."""
    one = LinComb.of
    lhs = (
        graft_comb(one(t1), graft_comb(one(t2), one(t3)))
        - graft_comb(graft_comb(one(t1), one(t2)), one(t3))
        - graft_comb(one(t2), graft_comb(one(t1), one(t3)))
        + graft_comb(graft_comb(one(t2), one(t1)), one(t3))
    )
    return lhs.is_zero()


def _attach_many(host: PlanarTree, extras: dict[int, list[PlanarTree]]) -> PlanarTree:
    """Rebuild ``host`` appending the listed subtrees below each preorder vertex."""

    def rec(node: PlanarTree, next_id: int):
        my = next_id
        next_id += 1
        children = []
        for c in node.children:
            built, next_id = rec(c, next_id)
            children.append(built)
        children.extend(extras.get(my, ()))
        return PlanarTree(tuple(children)), next_id

    return rec(host, 0)[0]


def compose_prelie_operad(
    inputs: Sequence[NonPlanarTree],
    base: NonPlanarTree,
    assignment: Sequence[int] | None = None,
) -> LinComb:
    """Replace each vertex of ``base`` by a tree and redistribute edges.

    ``assignment[v]`` names the input placed at preorder vertex ``v`` of the
    canonical representative of ``base`` (identity when omitted).  The
    incoming edge of a vertex moves to the root of its replacement; each
    outgoing edge may reattach to any vertex of the replacement, and the sum
    ranges over all such choices.
    """
    n = base.vertex_count
    if len(inputs) != n:
        raise ValueError(f"expected {n} inputs, got {len(inputs)}")
    if assignment is None:
        assignment = list(range(n))
    if sorted(assignment) != list(range(n)):
        raise ValueError("assignment must be a bijection onto the inputs")

    counter = itertools.count()

    def build(node: PlanarTree) -> LinComb:
        vertex = next(counter)
        slot = inputs[assignment[vertex]].rep
        child_results = [build(c) for c in node.children]
        m = slot.vertex_count
        out = LinComb()
        for picks in itertools.product(*(list(c.items()) for c in child_results)):
            coeff = Fraction(1)
            for _, c in picks:
                coeff *= c
            subtrees = [t for t, _ in picks]
            for targets in itertools.product(range(m), repeat=len(subtrees)):
                extras: dict[int, list[PlanarTree]] = {}
                for sub, tgt in zip(subtrees, targets):
                    extras.setdefault(tgt, []).append(sub)
                out = out + LinComb.of(_attach_many(slot, extras), coeff)
        return out

    raw = build(base.rep)
    return raw.map_basis(canonicalize)


def _edge_antichains(tree: PlanarTree):
    """Yield (cut-off branches, remaining tree) over admissible cuts.

    A cut takes at most one edge on any root-to-leaf path: either an edge to
    a child is cut (its whole branch comes off) or the recursion continues
    inside that child.
    """
    options = []
    for child in tree.children:
        child_options = [((child,), None)]
        child_options.extend(
            (branches, kept) for branches, kept in _edge_antichains(child)
        )
        options.append(child_options)
    for combo in itertools.product(*options):
        branches = tuple(itertools.chain.from_iterable(b for b, _ in combo))
        kept_children = tuple(k for _, k in combo if k is not None)
        yield branches, PlanarTree(kept_children)


def _delta_ck_tree(tree: NonPlanarTree) -> LinComb:
    terms = []
    for branches, remainder in _edge_antichains(tree.rep):
        left = Forest(tuple(canonicalize(b) for b in branches))
        terms.append(((left, Forest((canonicalize(remainder),))), 1))
    terms.append(((Forest((tree,)), EMPTY_NP_FOREST), 1))
    return LinComb(terms)


def _forest_tensor_mul(x: LinComb, y: LinComb) -> LinComb:
    return bilinear(x, y, lambda a, b: (a[0].mul(b[0]), a[1].mul(b[1])))


def delta_ck(forest: Forest) -> LinComb:
    """Admissible-cut coproduct, multiplicative over forest factors."""
    out = LinComb.of((EMPTY_NP_FOREST, EMPTY_NP_FOREST))
    for t in forest.trees:
        out = _forest_tensor_mul(out, _delta_ck_tree(t))
    return out


def _vertex_partitions(tree: PlanarTree):
    """Yield (parts, contraction) over spanning subforests of one tree.

    Every subset of edges spans a subforest; parts are the connected
    components of the kept edges and the contraction collapses each part to
    one vertex.
    """
    edges = []

    def walk(node: PlanarTree, my_id: int, next_id: int) -> int:
        for c in node.children:
            edges.append((my_id, next_id, c))
            child_id = next_id
            next_id = walk(c, child_id, next_id + 1)
        return next_id

    nodes = list(tree.preorder())
    walk(tree, 0, 1)
    n = len(nodes)
    for mask in range(1 << len(edges)):
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        kept = [bool(mask & (1 << j)) for j in range(len(edges))]
        for j, (a, b, _) in enumerate(edges):
            if kept[j]:
                parent[find(a)] = find(b)
        groups: dict[int, list[int]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        part_children: dict[int, list[int]] = {i: [] for i in range(n)}
        cut_children: dict[int, list[int]] = {i: [] for i in range(n)}
        for j, (a, b, _) in enumerate(edges):
            (part_children if kept[j] else cut_children)[a].append(b)

        def build_part(i: int) -> PlanarTree:
            return PlanarTree(tuple(build_part(c) for c in part_children[i]))

        parts = Forest(
            tuple(canonicalize(build_part(min(g))) for g in groups.values())
        )

        def build_quotient(i: int) -> PlanarTree:
            root = find(i)
            children = []
            for member in groups[root]:
                for c in cut_children[member]:
                    children.append(build_quotient(c))
            return PlanarTree(tuple(children))

        yield parts, canonicalize(build_quotient(0))


def _delta_h_tree(tree: NonPlanarTree) -> LinComb:
    terms = []
    for parts, quotient in _vertex_partitions(tree.rep):
        terms.append(((parts, Forest((quotient,))), 1))
    return LinComb(terms)


def delta_h(forest: Forest) -> LinComb:
    """Extraction-contraction coproduct, multiplicative over forest factors."""
    out = LinComb.of((EMPTY_NP_FOREST, EMPTY_NP_FOREST))
    for t in forest.trees:
        out = _forest_tensor_mul(out, _delta_h_tree(t))
    return out


# ---------------------------------------------------------------------------
# Labeled brute-force dual of the vertex-replacement operad.


def _labeled_trees_on(labels: tuple[int, ...]):
    """All rooted trees on the given distinct labels, as parent maps."""
    labels = tuple(labels)
    n = len(labels)
    if n == 1:
        yield {labels[0]: None}
        return
    for root in labels:
        rest = [v for v in labels if v != root]
        for parents in itertools.product(labels, repeat=len(rest)):
            pmap = {root: None}
            for v, p in zip(rest, parents):
                pmap[v] = p
            ok = True
            for v in rest:
                w, hops = v, 0
                while w is not None and hops <= n:
                    w = pmap[w]
                    hops += 1
                if w is not None:
                    ok = False
                    break
            if ok:
                yield pmap


def _parent_map_shape(pmap: dict) -> NonPlanarTree:
    children: dict = {v: [] for v in pmap}
    root = None
    for v, p in pmap.items():
        if p is None:
            root = v
        else:
            children[p].append(v)

    def build(v) -> PlanarTree:
        return PlanarTree(tuple(build(c) for c in children[v]))

    return canonicalize(build(root))


def _ordered_set_partitions(items: tuple):
    """All ways to split ``items`` into an ordered tuple of nonempty blocks."""
    items = tuple(items)
    if not items:
        yield ()
        return
    n = len(items)
    for n_blocks in range(1, n + 1):
        for labels in itertools.product(range(n_blocks), repeat=n):
            if sorted(set(labels)) != list(range(n_blocks)):
                continue
            blocks = tuple(
                tuple(items[i] for i in range(n) if labels[i] == b)
                for b in range(n_blocks)
            )
            yield blocks


def check_h_operad_duality(tree: NonPlanarTree) -> bool:
    """Compare ``delta_h`` with the 1/n!-weighted labeled operadic dual.

    The oracle fixes one labeling of the tree, then enumerates ordered label
    partitions, labeled trees on each block, a labeled pattern tree on the
    blocks, and all edge redistributions; every tuple whose composite
    contains the fixed labeled tree contributes its block shapes tensor the
    pattern shape, weighted by 1/n!.
    """
    target: dict[int, int | None] = {}

    def index_tree(node: PlanarTree, parent: int | None, next_id: int) -> int:
        my = next_id
        target[my] = parent
        next_id += 1
        for c in node.children:
            next_id = index_tree(c, my, next_id)
        return next_id

    index_tree(tree.rep, None, 0)
    labels = tuple(sorted(target))

    total = LinComb()
    for blocks in _ordered_set_partitions(labels):
        n = len(blocks)
        weight = Fraction(1, _factorial(n))
        block_trees = [list(_labeled_trees_on(b)) for b in blocks]
        for pattern in _labeled_trees_on(tuple(range(n))):
            for combo in itertools.product(*block_trees):
                if _composition_contains(combo, pattern, blocks, target):
                    left = Forest(tuple(_parent_map_shape(m) for m in combo))
                    right = Forest((_parent_map_shape(pattern),))
                    total = total + LinComb.of((left, right), weight)
    return total == delta_h(Forest((tree,)))


def _composition_contains(combo, pattern, blocks, target) -> bool:
    roots = {}
    for i, pmap in enumerate(combo):
        for v, p in pmap.items():
            if p is None:
                roots[i] = v
    pattern_edges = [(v, p) for v, p in pattern.items() if p is not None]
    choice_sets = [blocks[p] for _, p in pattern_edges]
    base = {}
    for pmap in combo:
        base.update(pmap)
    for choice in itertools.product(*choice_sets):
        candidate = dict(base)
        for (child_block, _), attach_vertex in zip(pattern_edges, choice):
            candidate[roots[child_block]] = attach_vertex
        if candidate == target:
            return True
    return False


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def convolve(a: CharacterMap, b: CharacterMap, coproduct: str) -> CharacterMap:
    """Convolution of functionals through ``delta_ck`` or ``delta_h``.

    The left argument is evaluated multiplicatively over the tree factors of
    the left tensor legs (so a functional given on trees extends to the cut
    branches / extracted parts); the right argument is looked up directly.
    """
    if coproduct not in ("ck", "h"):
        raise ValueError("coproduct must be 'ck' or 'h'")
    if a.order != b.order:
        raise ValueError("truncation orders differ")
    delta = delta_ck if coproduct == "ck" else delta_h
    order = a.order
    values = []
    for size in range(0, order + 1):
        for forest in enumerate_forests(size):
            total = Fraction(0)
            for (left, right), c in delta(forest).items():
                total += c * a.eval_multiplicative(left) * b(right)
            values.append((forest, total))
    return CharacterMap(order, 0, values)
