"""The list-shrinking reduction toward binary lists.

One round targets a vertex u0 with at least three allowed colors and
either removes vertices or shrinks lists, strictly lowering the
potential p_value.  Rounds assume k = 5, no singleton lists and no good
P3; under those hypotheses frugal colorability survives forward and any
coloring of the output lifts back (the lift functions at the bottom).
The structure of u0's second neighborhood in the list graph drives the
later steps; center_context exposes it for direct inspection.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from .graphs import Graph, dist_neighborhood, induced_subgraph, is_clique
from .instances import (
    Coloring,
    Instance,
    InstanceError,
    colors_from_mask,
    find_good_p3,
    list_graph,
    p_value,
)
from .oracle import frugal_colorings
from .profiles import (
    LiftStep,
    ReductionTrace,
    eliminate_singletons,
    embed_coloring,
    identity_map,
    invert_perm,
)

log = logging.getLogger("rp3color")

_BIT4 = 1 << 3
_BIT5 = 1 << 4


def _remap_mask(mask: int, mapping: Sequence[int]) -> int:
    out = 0
    for c in range(1, len(mapping) + 1):
        if (mask >> (c - 1)) & 1:
            out |= 1 << (mapping[c - 1] - 1)
    return out


def _perm_for(u0_mask: int, k: int) -> Tuple[int, ...]:
    """Color permutation sending the three smallest colors of the mask
    to 1, 2, 3 (ascending) and the remaining two colors to 4, 5."""
    low = list(colors_from_mask(u0_mask))[:3]
    rest = [c for c in range(1, k + 1) if c not in low]
    perm = [0] * k
    for new, old in enumerate(low, start=1):
        perm[old - 1] = new
    for new, old in enumerate(rest, start=4):
        perm[old - 1] = new
    return tuple(perm)


def _apply_perm(inst: Instance, perm: Sequence[int]) -> Instance:
    return Instance(
        inst.graph, inst.k, tuple(_remap_mask(m, perm) for m in inst.lists)
    )


@dataclass(frozen=True)
class CenterContext:
    """Second-neighborhood structure around a center with list {1,2,3}.

    All sets live in the list graph ``gl``: ``ring`` is the center's
    neighborhood, ``second`` the vertices at distance exactly two.
    ``four_side`` / ``five_side`` are ring vertices whose list holds
    color 4 / 5; ``four_outer`` / ``five_outer`` are second-ring
    vertices with a list-graph neighbor on the matching side.
    """

    center: int
    gl: Graph
    ring: Tuple[int, ...]
    second: Tuple[int, ...]
    four_side: Tuple[int, ...]
    five_side: Tuple[int, ...]
    four_outer: Tuple[int, ...]
    five_outer: Tuple[int, ...]


def _context_sets(inst: Instance, gl: Graph, u0: int) -> CenterContext:
    ring = tuple(sorted(gl.adj[u0]))
    second = tuple(sorted(dist_neighborhood(gl, u0, 2)))
    four_side = tuple(v for v in ring if inst.lists[v] & _BIT4)
    five_side = tuple(v for v in ring if inst.lists[v] & _BIT5)
    f4 = frozenset(four_side)
    f5 = frozenset(five_side)
    four_outer = tuple(w for w in second if gl.adj[w] & f4)
    five_outer = tuple(w for w in second if gl.adj[w] & f5)
    return CenterContext(
        u0, gl, ring, second, four_side, five_side, four_outer, five_outer
    )


def center_context(inst: Instance, u0: int) -> CenterContext:
    """Build the second-neighborhood context, validating its hypotheses.

    Requires k = 5, every list size in {0, 2, 3}, the center list equal
    to {1, 2, 3}, and no good P3.
    """
    if inst.k != 5:
        raise InstanceError(f"k={inst.k}, need 5")
    for v, mask in enumerate(inst.lists):
        if mask.bit_count() not in (0, 2, 3):
            raise InstanceError(f"vertex {v} has list size {mask.bit_count()}")
    if inst.lists[u0] != 0b00111:
        raise InstanceError(
            f"center list {colors_from_mask(inst.lists[u0])} is not (1, 2, 3)"
        )
    bad = find_good_p3(inst)
    if bad is not None:
        raise InstanceError(f"good P3 at {bad}")
    return _context_sets(inst, list_graph(inst), u0)


def _complete_or_anticomplete(gl: Graph, w: int, side: Sequence[int]) -> bool:
    others = [v for v in side if v != w]
    if not others:
        return True
    hits = sum(1 for v in others if gl.has_edge(w, v))
    return hits == 0 or hits == len(others)


def check_center_context(ctx: CenterContext, inst: Instance) -> List[str]:
    """Violated structure assertions for the context, empty when sound.

    The assertions: closed second ball has list sizes {2,3}; second ring
    lists are exactly {4,5}; the second ring is covered by the two outer
    sets; each side and each outer set is a list-graph clique; every
    closed-ball vertex is complete or anticomplete to each side; and
    when the second ring has two or more vertices while both outer sets
    have at most one, the outer sets are disjoint singletons, the sides
    are nonempty disjoint with pairwise disjoint lists, and each outer
    vertex is anticomplete (in the input graph) to the opposite side.
    """
    gl = ctx.gl
    out: List[str] = []
    ball = sorted({ctx.center} | set(ctx.ring) | set(ctx.second))
    if any(inst.lists[u].bit_count() not in (2, 3) for u in ball):
        out.append("ball-list-sizes")
    if any(inst.lists[w] != (_BIT4 | _BIT5) for w in ctx.second):
        out.append("second-ring-lists")
    if set(ctx.second) != set(ctx.four_outer) | set(ctx.five_outer):
        out.append("second-ring-cover")
    if not is_clique(gl, ctx.four_side) or not is_clique(gl, ctx.five_side):
        out.append("side-cliques")
    for w in ball:
        if not _complete_or_anticomplete(gl, w, ctx.four_side):
            out.append("side-attachment")
            break
        if not _complete_or_anticomplete(gl, w, ctx.five_side):
            out.append("side-attachment")
            break
    if not is_clique(gl, ctx.four_outer) or not is_clique(gl, ctx.five_outer):
        out.append("outer-cliques")
    if (
        len(ctx.second) >= 2
        and len(ctx.four_outer) <= 1
        and len(ctx.five_outer) <= 1
    ):
        ok = (
            len(ctx.four_outer) == 1
            and len(ctx.five_outer) == 1
            and not (set(ctx.four_outer) & set(ctx.five_outer))
            and ctx.four_side
            and ctx.five_side
            and not (set(ctx.four_side) & set(ctx.five_side))
        )
        if ok:
            g = inst.graph
            if any(
                g.has_edge(w, b)
                for w in ctx.four_outer
                for b in ctx.five_side
            ) or any(
                g.has_edge(w, a)
                for w in ctx.five_outer
                for a in ctx.four_side
            ):
                ok = False
        if ok and any(
            inst.lists[a] & inst.lists[b]
            for a in ctx.four_side
            for b in ctx.five_side
        ):
            ok = False
        if not ok:
            out.append("pinched-ring")
    return out


def center_context_report(inst: Instance, u0: int):
    """('checked', violations) or ('skipped', reason) when hypotheses fail."""
    try:
        ctx = center_context(inst, u0)
    except InstanceError as exc:
        return "skipped", str(exc)
    return "checked", check_center_context(ctx, inst)


def _spanning(inst: Instance, lists, perm, **info) -> Tuple[Instance, LiftStep]:
    inv = invert_perm(perm)
    out = Instance(inst.graph, inst.k, tuple(_remap_mask(m, inv) for m in lists))
    info["perm"] = perm
    return out, LiftStep("spanning", inst, identity_map(inst.graph.n), info)


def reduce_once(inst: Instance, u0: int) -> Tuple[Instance, LiftStep]:
    """One reduction round centered at u0 (list size >= 3).

    Requires k = 5 and no singleton lists; correctness further assumes
    no good P3 (not checked here, the pipeline establishes it).  Colors
    are first renamed so the three smallest colors of L(u0) become
    {1,2,3}; output lists are renamed back.  The returned LiftStep
    carries the fired step number in info['step'].
    """
    if inst.k != 5:
        raise InstanceError(f"k={inst.k}, need 5")
    if any(m.bit_count() == 1 for m in inst.lists):
        v = next(v for v, m in enumerate(inst.lists) if m.bit_count() == 1)
        raise InstanceError(f"vertex {v} has a singleton list")
    if inst.lists[u0].bit_count() < 3:
        raise InstanceError(f"center {u0} has list size below 3")

    g = inst.graph
    n = g.n
    perm = _perm_for(inst.lists[u0], inst.k)
    work = _apply_perm(inst, perm)
    gl = list_graph(work)

    # step 3: a vertex with five list-graph neighbors forces failure
    witness = next((u for u in range(n) if len(gl.adj[u]) >= 5), None)
    if witness is not None:
        return _spanning(inst, (0,) * n, perm, step=3, witness=witness)

    # step 4: a vertex with fewer list-graph neighbors than list colors
    # is always colorable last, so drop it
    witness = next(
        (
            u
            for u in range(n)
            if len(gl.adj[u]) < work.lists[u].bit_count()
        ),
        None,
    )
    if witness is not None:
        keep = [v for v in range(n) if v != witness]
        sub, _ = induced_subgraph(g, keep)
        out = Instance(sub, inst.k, tuple(inst.lists[v] for v in keep))
        step = LiftStep(
            "step4-removal",
            inst,
            tuple(keep),
            {
                "step": 4,
                "vertex": witness,
                "gl_neighbors": tuple(sorted(gl.adj[witness])),
                "perm": perm,
            },
        )
        return out, step

    # step 5: a vertex whose list-graph 2-ball has at most one boundary
    # vertex can be colored locally; record what the boundary may take
    witness = next(
        (u for u in range(n) if len(dist_neighborhood(gl, u, 2)) <= 1), None
    )
    if witness is not None:
        return _step5(inst, work, gl, perm, witness)

    ctx = _context_sets(work, gl, u0)
    a_side, b_side = ctx.four_side, ctx.five_side
    a_outer, b_outer = ctx.four_outer, ctx.five_outer

    # step 6 / 7: two attachments on one side strip {4,5} from that side
    if len(a_outer) >= 2:
        lists = list(work.lists)
        for a in a_side:
            lists[a] &= ~(_BIT4 | _BIT5)
        return _spanning(inst, lists, perm, step=6, center=u0)
    if len(b_outer) >= 2:
        lists = list(work.lists)
        for b in b_side:
            lists[b] &= ~(_BIT4 | _BIT5)
        return _spanning(inst, lists, perm, step=7, center=u0)

    # step 8 / 9: twin two-lists on a side pin the outer attachment
    pair = next(
        (
            (a1, a2)
            for a1, a2 in combinations(a_side, 2)
            if work.lists[a1] == work.lists[a2]
            and work.lists[a1].bit_count() == 2
        ),
        None,
    )
    if pair is not None:
        lists = list(work.lists)
        for w in a_outer:
            lists[w] &= ~_BIT4
        return _spanning(inst, lists, perm, step=8, center=u0, twins=pair)
    pair = next(
        (
            (b1, b2)
            for b1, b2 in combinations(b_side, 2)
            if work.lists[b1] == work.lists[b2]
            and work.lists[b1].bit_count() == 2
        ),
        None,
    )
    if pair is not None:
        lists = list(work.lists)
        for w in b_outer:
            lists[w] &= ~_BIT5
        return _spanning(inst, lists, perm, step=9, center=u0, twins=pair)

    # step 10: four or more ring vertices pin both outer attachments
    if len(ctx.ring) >= 4:
        lists = list(work.lists)
        for w in a_outer:
            lists[w] &= ~_BIT4
        for w in b_outer:
            lists[w] &= ~_BIT5
        return _spanning(inst, lists, perm, step=10, center=u0)

    return _step11(inst, work, gl, perm, u0, ctx)


def _step5(inst, work, gl, perm, u):
    g = inst.graph
    n = g.n
    ball = sorted(dist_neighborhood(gl, u, 2, closed=True))
    boundary = sorted(dist_neighborhood(gl, u, 2))
    sub, remap = induced_subgraph(g, ball)
    local = Instance(sub, inst.k, tuple(work.lists[v] for v in ball))

    realized = 0
    feasible = False
    if boundary:
        cpos = remap[boundary[0]]
        want = work.lists[boundary[0]]
        for phi in frugal_colorings(local):
            feasible = True
            realized |= 1 << (phi[cpos] - 1)
            if realized == want:
                break
    else:
        feasible = next(frugal_colorings(local), None) is not None

    if not feasible:
        # step 5b: the ball itself cannot be frugally colored
        return _spanning(inst, (0,) * n, perm, step=5, witness=u, outcome="5b")

    # step 5c: delete the closed one-ball, restrict the boundary list to
    # the colors the local enumeration realized there
    removed = set(dist_neighborhood(gl, u, 1, closed=True))
    keep = [v for v in range(n) if v not in removed]
    sub2, _ = induced_subgraph(g, keep)
    inv = invert_perm(perm)
    out_lists = []
    for v in keep:
        if boundary and v == boundary[0]:
            out_lists.append(_remap_mask(realized, inv))
        else:
            out_lists.append(inst.lists[v])
    out = Instance(sub2, inst.k, tuple(out_lists))
    step = LiftStep(
        "step5c-removal",
        inst,
        tuple(keep),
        {
            "step": 5,
            "vertex": u,
            "ball": tuple(ball),
            "boundary": tuple(boundary),
            "perm": perm,
            "outcome": "5c",
        },
    )
    return out, step


def _step11(inst, work, gl, perm, u0, ctx):
    a_side, b_side = ctx.four_side, ctx.five_side
    a_outer, b_outer = ctx.four_outer, ctx.five_outer
    if len(a_outer) != 1 or len(b_outer) != 1 or len(ctx.ring) != 3:
        raise InstanceError(
            f"degenerate structure at center {u0}: "
            f"ring={ctx.ring} outer={a_outer}/{b_outer}"
        )
    u0_mask = work.lists[u0]
    i_pool = 0
    for a in a_side:
        i_pool |= work.lists[a]
    i_pool &= u0_mask
    j_pool = 0
    for b in b_side:
        j_pool |= work.lists[b]
    j_pool &= u0_mask
    if not i_pool or not j_pool:
        raise InstanceError(f"center {u0} has no anchor colors")
    i = colors_from_mask(i_pool)[0]
    j = colors_from_mask(j_pool)[0]
    if i == j:
        raise InstanceError(f"anchor colors coincide at {i}")
    a = next(v for v in a_side if (work.lists[v] >> (i - 1)) & 1)
    b = next(v for v in b_side if (work.lists[v] >> (j - 1)) & 1)
    third = [v for v in ctx.ring if v not in (a, b)]
    if len(third) != 1:
        raise InstanceError(f"ring {ctx.ring} minus anchors is {third}")
    c = third[0]

    g = inst.graph
    keep = [v for v in range(g.n) if v != c]
    sub, remap = induced_subgraph(g, keep)
    inv = invert_perm(perm)
    out_lists = []
    for v in keep:
        if v == u0:
            mask = (1 << (i - 1)) | (1 << (j - 1))
        elif v == a:
            mask = (1 << (i - 1)) | _BIT4
        elif v == b:
            mask = (1 << (j - 1)) | _BIT5
        else:
            out_lists.append(inst.lists[v])
            continue
        out_lists.append(_remap_mask(mask, inv))
    out = Instance(sub, inst.k, tuple(out_lists))
    step = LiftStep(
        "step11-contraction",
        inst,
        tuple(keep),
        {
            "step": 11,
            "center": u0,
            "a": a,
            "b": b,
            "c": c,
            "a_outer": a_outer[0],
            "b_outer": b_outer[0],
            "i": i,
            "j": j,
            "perm": perm,
        },
    )
    return out, step


def reduce_to_binary(inst: Instance) -> Tuple[Instance, ReductionTrace]:
    """Alternate reduction rounds and singleton elimination to a fixpoint.

    Requires k = 5 and no singleton lists; correctness assumes no good
    P3.  The result has every list size in {0, 2} and the trace replays
    the rounds in order.
    """
    if inst.k != 5:
        raise InstanceError(f"k={inst.k}, need 5")
    if any(m.bit_count() == 1 for m in inst.lists):
        raise InstanceError("singleton list present")
    trace: ReductionTrace = []
    cur = inst
    while True:
        u0 = next(
            (
                v
                for v in range(cur.graph.n)
                if cur.lists[v].bit_count() >= 3
            ),
            None,
        )
        if u0 is None:
            return cur, trace
        before = p_value(cur)
        nxt, step = reduce_once(cur, u0)
        trace.append(step)
        cur, killed = eliminate_singletons(nxt)
        trace.extend(killed)
        log.debug(
            "round: step %d at center %d, p %d -> %d",
            step.info["step"],
            u0,
            before,
            p_value(cur),
        )
        if p_value(cur) >= before:
            raise RuntimeError(
                f"potential failed to drop: {before} -> {p_value(cur)}"
            )


def lift_step4(step: LiftStep, phi: Coloring) -> Coloring:
    out = embed_coloring(step, phi)
    u = step.info["vertex"]
    taken = {out[w] for w in step.info["gl_neighbors"]}
    free = [
        c
        for c in colors_from_mask(step.parent.lists[u])
        if c not in taken
    ]
    if not free:
        raise RuntimeError(f"no free color when restoring vertex {u}")
    out[u] = free[0]
    return tuple(out)


def lift_step5c(step: LiftStep, phi: Coloring) -> Coloring:
    parent = step.parent
    g = parent.graph
    ball = step.info["ball"]
    boundary = step.info["boundary"]
    out = embed_coloring(step, phi)
    sub, remap = induced_subgraph(g, ball)
    local = Instance(sub, parent.k, tuple(parent.lists[v] for v in ball))
    want = out[boundary[0]] if boundary else None
    chosen = None
    for cand in frugal_colorings(local):
        if want is None or cand[remap[boundary[0]]] == want:
            chosen = cand
            break
    if chosen is None:
        raise RuntimeError(
            f"no local coloring matches the boundary color {want}"
        )
    for v in ball:
        out[v] = chosen[remap[v]]
    return tuple(out)


def _first_color(mask: int) -> int:
    if not mask:
        raise RuntimeError("color pool empty during lift")
    return (mask & -mask).bit_length()


def _smallest_pair(amask: int, bmask: int) -> Tuple[int, int]:
    """Lexicographically smallest (x, y), x from amask, y from bmask, x != y."""
    for x in colors_from_mask(amask):
        for y in colors_from_mask(bmask):
            if x != y:
                return x, y
    raise RuntimeError("no distinct color pair available")


def lift_step11(step: LiftStep, phi: Coloring) -> Coloring:
    parent = step.parent
    info = step.info
    perm = info["perm"]
    inv = invert_perm(perm)
    work = _apply_perm(parent, perm)
    u0, a, b, c = info["center"], info["a"], info["b"], info["c"]
    a2, b2 = info["a_outer"], info["b_outer"]

    hat = embed_coloring(step, phi)
    hat = [perm[col - 1] if col else 0 for col in hat]
    pa, pb = hat[a2], hat[b2]
    if pa not in (4, 5) or pb not in (4, 5):
        raise RuntimeError(f"outer colors {pa}, {pb} escape {{4, 5}}")
    if pa == 4 and pb == 5:
        raise RuntimeError("outer colors 4/5 contradict the contraction")

    la, lb, lc = work.lists[a], work.lists[b], work.lists[c]
    no45 = ~(_BIT4 | _BIT5)
    if pa == 4 and pb == 4:
        hat[b] = 5
        if lc & _BIT4:  # c sits on the four side
            kk, ll = _smallest_pair(la & ~_BIT4, lc & ~_BIT4)
        else:
            kk = _first_color(la & no45)
            ll = _first_color(lc & no45 & ~(1 << (kk - 1)))
        hat[a] = kk
        hat[c] = ll
        hat[u0] = min({1, 2, 3} - {kk, ll})
    elif pa == 5 and pb == 5:
        hat[a] = 4
        if lc & _BIT5:  # c sits on the five side
            kk, ll = _smallest_pair(lb & ~_BIT5, lc & ~_BIT5)
        else:
            kk = _first_color(lb & no45)
            ll = _first_color(lc & no45 & ~(1 << (kk - 1)))
        hat[b] = kk
        hat[c] = ll
        hat[u0] = min({1, 2, 3} - {kk, ll})
    else:  # pa == 5, pb == 4
        hat[a] = 4
        hat[b] = 5
        kk = _first_color(lc & no45)
        hat[c] = kk
        hat[u0] = min({1, 2, 3} - {kk})
    return tuple(inv[col - 1] for col in hat)
