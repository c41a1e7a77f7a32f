"""Detection and elimination of good induced 3-vertex paths.

A triple of color sets is "good" when all three have size at least two
and they pairwise intersect; an induced P3 whose lists form a good
triple is the obstruction that blocks the later reduction stages.  The
streams here refine an instance until no such path remains, preserving
colorability in both directions (frugal colorings forward, arbitrary
colorings come back through the pinned singletons).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

from .graphs import induced_p3_stream, set_neighborhood
from .instances import (
    GoodTriple,
    Instance,
    colors_from_mask,
    is_good_triple,
    p3_list_type,
    triple_weight,
)


@lru_cache(maxsize=None)
def good_triples(k: int) -> Tuple[GoodTriple, ...]:
    """All good triples over {1..k}, heaviest first.

    Sorted by total size non-increasing, ties in ascending lexicographic
    order of the triple of bitmasks.
    """
    if not (1 <= k <= 8):
        raise ValueError(f"k={k} outside 1..8")
    masks = [m for m in range(1, 1 << k) if m.bit_count() >= 2]
    out = [
        (a, b, c)
        for a in masks
        for b in masks
        for c in masks
        if a & b and a & c and b & c
    ]
    out.sort(key=lambda t: (-triple_weight(t), t))
    return tuple(out)


def _match_orientation(
    inst: Instance, p3: Tuple[int, int, int], triple: GoodTriple
) -> Optional[Tuple[int, int, int]]:
    """Orient ``p3`` so its list type equals ``triple``, or None."""
    t = p3_list_type(inst, p3)
    if t == triple:
        return p3
    if (t[2], t[1], t[0]) == triple:
        return (p3[2], p3[1], p3[0])
    return None


def find_type_p3(
    inst: Instance, triple: GoodTriple
) -> Optional[Tuple[int, int, int]]:
    """First induced P3 (stream order) whose lists match ``triple`` in
    either orientation."""
    for p3 in induced_p3_stream(inst.graph):
        if _match_orientation(inst, p3, triple) is not None:
            return p3
    return None


def count_anticomplete_of_type(inst: Instance, triple: GoodTriple) -> int:
    """Maximum number of pairwise anticomplete induced P3s of this list type."""
    g = inst.graph
    matches = [
        p3
        for p3 in induced_p3_stream(g)
        if _match_orientation(inst, p3, triple) is not None
    ]
    vmask = []
    cmask = []
    for p3 in matches:
        vm = sum(1 << v for v in p3)
        vmask.append(vm)
        cm = vm
        for v in p3:
            cm |= g.adj_mask[v]
        cmask.append(cm)
    best = 0

    def rec(i: int, blocked: int, size: int):
        nonlocal best
        best = max(best, size)
        for j in range(i, len(matches)):
            if vmask[j] & blocked == 0:
                rec(j + 1, blocked | cmask[j], size + 1)

    rec(0, 0, 0)
    return best


def pivot_refinements(
    inst: Instance, triple: GoodTriple, pivot: Tuple[int, int, int]
) -> Iterator[Instance]:
    """Refinements that pin a colored patch around one good P3.

    The pivot must be an induced P3 whose lists match ``triple`` (either
    orientation; it is oriented to match).  Each output corresponds to a
    patch S with pivot inside S inside the closed pivot neighborhood,
    |S| <= 3k, and a proper list coloring psi of the patch in which no
    pivot vertex sees two patch neighbors share a color from its list.
    Output lists: patch vertices are pinned to their psi color;
    unpatched pivot neighbors drop the triple entry of every pivot
    vertex they touch; everything else is unchanged.

    Patches stream by size then lexicographic order, colorings in
    lexicographic order over the patch (ascending ids).  A frugal
    coloring of the input restricts to a witness patch, so feasibility
    carries forward; each output only pins list colors, so any output
    coloring is an input coloring.
    """
    oriented = _match_orientation(inst, pivot, triple)
    if oriented is None:
        raise ValueError(f"pivot {pivot} does not match the triple")
    g, k = inst.graph, inst.k
    pivotset = frozenset(oriented)
    closed = set_neighborhood(g, pivotset, closed=True)
    cands = sorted(closed - pivotset)

    patches: List[Tuple[int, ...]] = []
    for size in range(0, min(3 * k - 3, len(cands)) + 1):
        for combo in combinations(cands, size):
            patches.append(tuple(sorted(pivotset | set(combo))))
    patches.sort(key=lambda s: (len(s), s))

    def stream() -> Iterator[Instance]:
        for patch in patches:
            for psi in _patch_colorings(inst, patch, oriented):
                yield _pinned_child(inst, patch, psi, oriented, triple, closed)

    return stream()


def _patch_colorings(
    inst: Instance, patch: Tuple[int, ...], oriented: Tuple[int, int, int]
) -> Iterator[Tuple[int, ...]]:
    """Proper list colorings of the patch, pivot-frugal, in lex order."""
    g = inst.graph
    pos = {v: i for i, v in enumerate(patch)}
    psi = [0] * len(patch)
    # pivot indices watching each patch position
    watch = [
        [i for i in range(3) if g.has_edge(oriented[i], v)] for v in patch
    ]
    counts: List[Dict[int, int]] = [{}, {}, {}]

    def rec(idx: int) -> Iterator[Tuple[int, ...]]:
        if idx == len(patch):
            yield tuple(psi)
            return
        v = patch[idx]
        for c in colors_from_mask(inst.lists[v]):
            if any(
                pos[w] < idx and psi[pos[w]] == c
                for w in g.adj[v]
                if w in pos
            ):
                continue
            bit = 1 << (c - 1)
            if any(
                inst.lists[oriented[i]] & bit and counts[i].get(c, 0) >= 1
                for i in watch[idx]
            ):
                continue
            psi[idx] = c
            for i in watch[idx]:
                counts[i][c] = counts[i].get(c, 0) + 1
            yield from rec(idx + 1)
            for i in watch[idx]:
                counts[i][c] -= 1
        psi[idx] = 0

    yield from rec(0)


def _pinned_child(
    inst: Instance,
    patch: Tuple[int, ...],
    psi: Tuple[int, ...],
    oriented: Tuple[int, int, int],
    triple: GoodTriple,
    closed: frozenset,
) -> Instance:
    g = inst.graph
    lists = list(inst.lists)
    in_patch = set(patch)
    for v, c in zip(patch, psi):
        lists[v] = 1 << (c - 1)
    for v in closed - in_patch:
        drop = 0
        for j in range(3):
            if g.has_edge(oriented[j], v):
                drop |= triple[j]
        lists[v] = inst.lists[v] & ~drop
    return Instance(g, inst.k, tuple(lists))


def eliminate_type(inst: Instance, triple: GoodTriple) -> Iterator[Instance]:
    """Refinements of ``inst`` in which no induced P3 has this list type.

    Requires that no good P3 of the instance weighs more than the
    triple (checked; ValueError otherwise).  Works depth-first: while a
    matching P3 exists, expand the first one (stream order) through
    pivot_refinements and recurse; the count of anticomplete matching
    P3s strictly drops at each level, so the recursion terminates.
    """
    if not is_good_triple(triple):
        raise ValueError(f"triple {triple} is not good")
    bound = triple_weight(triple)
    for p3 in induced_p3_stream(inst.graph):
        t = p3_list_type(inst, p3)
        if is_good_triple(t) and triple_weight(t) > bound:
            raise ValueError(
                f"good P3 {p3} has weight {triple_weight(t)}, above {bound}"
            )

    def rec(cur: Instance) -> Iterator[Instance]:
        pivot = find_type_p3(cur, triple)
        if pivot is None:
            yield cur
            return
        for child in pivot_refinements(cur, triple, pivot):
            yield from rec(child)

    return rec(inst)


def _earliest_good(cur: Instance, index: Dict[GoodTriple, int]):
    """Smallest triple index with a matching P3, plus the first matching
    P3 (stream order) per index; (None, {}) when no good P3 exists."""
    best = None
    first: Dict[int, Tuple[int, int, int]] = {}
    for p3 in induced_p3_stream(cur.graph):
        t = p3_list_type(cur, p3)
        if not is_good_triple(t):
            continue
        for key in (t, (t[2], t[1], t[0])):
            i = index[key]
            if i not in first:
                first[i] = p3
            if best is None or i < best:
                best = i
    return best, first


def eliminate_good_p3(inst: Instance, r: int) -> Iterator[Instance]:
    """Refinements of ``inst`` with no good P3 at all.

    Folds eliminate_type over good_triples(inst.k) heaviest-first,
    skipping triples with no matching P3 (those levels pass instances
    through unchanged, so the output sequence is identical).  The
    parameter r names the packing bound under which the stream stays
    small; the enumeration itself is exact for any input.
    """
    if r < 1:
        raise ValueError(f"packing parameter {r} below 1")
    gammas = good_triples(inst.k)
    index = {t: i for i, t in enumerate(gammas)}

    def rec(cur: Instance) -> Iterator[Instance]:
        best, first = _earliest_good(cur, index)
        if best is None:
            yield cur
            return
        for child in pivot_refinements(cur, gammas[best], first[best]):
            yield from rec(child)

    return rec(inst)
