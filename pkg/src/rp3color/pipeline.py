"""Solver orchestration: branch search, certificate lifting, verdicts.

solve() runs the full decision procedure.  An optional packing check
rejects inputs outside the supported graph class, then a depth-first
search over candidate_stream reduces each candidate to a binary-list
instance and hands it to 2-SAT.  The first feasible candidate is lifted
back through its reduction trace and verified against the original
instance, so a colorable verdict is trustworthy no matter what internal
shortcuts the search took.
"""

from __future__ import annotations

import logging
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Dict, Iterator, Optional, Set, Tuple

from .goodp3 import _earliest_good, good_triples, pivot_refinements, eliminate_good_p3
from .graphs import anticomplete_packing
from .instances import Coloring, Instance, InstanceError, coloring_defect
from .profiles import (
    ReductionTrace,
    eliminate_singletons,
    frugal_profile,
    lift_color_permutation,
    lift_identity,
    lift_singleton,
)
from .reducer import lift_step4, lift_step5c, lift_step11, reduce_to_binary
from .twosat import binary_list_color

log = logging.getLogger("rp3color")


@dataclass(frozen=True)
class SolveOptions:
    r: int = 2
    force: bool = False
    jobs: int = 1
    budget: Optional[int] = None
    trace: bool = False

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"r={self.r}, need at least 1")
        if self.jobs < 1:
            raise ValueError(f"jobs={self.jobs}, need at least 1")
        if self.budget is not None and self.budget < 1:
            raise ValueError(f"budget={self.budget}, need at least 1")


@dataclass(frozen=True)
class Verdict:
    """Solver outcome.

    status is one of "colorable", "not-colorable", "not-rp3-free",
    "aborted".  A colorable verdict carries a coloring verified against
    the original instance; not-rp3-free carries the witness packing.
    """

    status: str
    coloring: Optional[Coloring] = None
    witness: Optional[Tuple[Tuple[int, ...], ...]] = None
    stats: Dict[str, int] = field(default_factory=dict)


_LIFTS = {
    "singleton-removal": lift_singleton,
    "spanning": lift_identity,
    "color-permutation": lift_color_permutation,
    "step4-removal": lift_step4,
    "step5c-removal": lift_step5c,
    "step11-contraction": lift_step11,
}


def lift(trace: ReductionTrace, phi: Coloring) -> Coloring:
    """Pull a coloring of the trace's final instance back to its first.

    Steps are replayed newest-first and every intermediate coloring is
    verified against that step's parent; a defect is an internal bug and
    raises RuntimeError.
    """
    for step in reversed(trace):
        phi = _LIFTS[step.kind](step, phi)
        defect = coloring_defect(step.parent, phi)
        if defect is not None:
            raise RuntimeError(f"lift failed after {step.kind}: {defect}")
    return phi


def candidate_stream(
    inst: Instance, r: int
) -> Iterator[Tuple[Instance, ReductionTrace]]:
    """All branch candidates: singleton-free refinements with no good P3.

    For each stable-class profile element and each good-P3 elimination
    leaf under it, yields the singleton-elimination fixpoint together
    with the removal steps.  The input is feasible exactly when some
    candidate is, and a candidate coloring lifts to an input coloring
    through the returned trace.
    """
    for element in frugal_profile(inst, r):
        for leaf in eliminate_good_p3(element, r):
            yield eliminate_singletons(leaf)


class _BudgetExceeded(Exception):
    pass


class _Budget:
    """Search counters with an optional hard cap on visited nodes."""

    __slots__ = ("limit", "elements", "nodes", "leaves", "pruned")

    def __init__(self, limit: Optional[int] = None):
        self.limit = limit
        self.elements = 0
        self.nodes = 0
        self.leaves = 0
        self.pruned = 0

    def node(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise _BudgetExceeded

    def absorb(self, stats: Dict[str, int]):
        self.elements += stats["elements"]
        self.nodes += stats["nodes"]
        self.leaves += stats["leaves"]
        self.pruned += stats["pruned"]

    def as_dict(self) -> Dict[str, int]:
        return {
            "elements": self.elements,
            "nodes": self.nodes,
            "leaves": self.leaves,
            "pruned": self.pruned,
        }


def _pruned_leaves(
    element: Instance, r: int, budget: _Budget, prune: bool = True
) -> Iterator[Tuple[Instance, ReductionTrace]]:
    """Candidates under one profile element, skipping hopeless subtrees.

    Mirrors candidate_stream restricted to the element, but may drop
    instances with an empty list (every further refinement keeps it
    empty) and repeats of an already-explored list tuple (refinement
    subtrees depend only on the instance).  Neither prune can hide a
    feasible candidate.  With prune=False the yields match the public
    composition exactly.
    """
    gammas = good_triples(element.k)
    index = {t: i for i, t in enumerate(gammas)}
    seen: Set[Tuple[int, ...]] = set()
    seen_final: Set[Instance] = set()

    def walk(cur: Instance) -> Iterator[Instance]:
        budget.node()
        if prune:
            if any(m == 0 for m in cur.lists):
                budget.pruned += 1
                return
            if cur.lists in seen:
                budget.pruned += 1
                return
            seen.add(cur.lists)
        best, first = _earliest_good(cur, index)
        if best is None:
            yield cur
            return
        for child in pivot_refinements(cur, gammas[best], first[best]):
            yield from walk(child)

    for leaf in walk(element):
        final, steps = eliminate_singletons(leaf)
        if prune:
            if any(m == 0 for m in final.lists):
                budget.pruned += 1
                continue
            if final in seen_final:
                budget.pruned += 1
                continue
            seen_final.add(final)
        yield final, steps


def _explore_element(
    element: Instance, r: int, budget: _Budget
) -> Tuple[str, Optional[Coloring]]:
    """Search one profile element; "colorable" short-circuits.

    A returned coloring is lifted all the way to the element, whose
    graph and vertex set equal the original instance's.
    """
    for final, steps in _pruned_leaves(element, r, budget):
        budget.leaves += 1
        reduced, rounds = reduce_to_binary(final)
        phi = binary_list_color(reduced)
        if phi is None:
            continue
        lifted = lift(list(steps) + rounds, phi)
        return "colorable", lifted
    return "exhausted", None


def _element_task(payload):
    element, r, limit = payload
    budget = _Budget(limit)
    try:
        status, phi = _explore_element(element, r, budget)
    except _BudgetExceeded:
        return "aborted", None, budget.as_dict()
    return status, phi, budget.as_dict()


def _certify(inst: Instance, phi: Coloring, stats: Dict[str, int]) -> Verdict:
    defect = coloring_defect(inst, phi)
    if defect is not None:
        raise RuntimeError(f"certificate failed verification: {defect}")
    return Verdict("colorable", coloring=tuple(phi), stats=stats)


def solve(inst: Instance, opts: Optional[SolveOptions] = None) -> Verdict:
    """Decide list-5-colorability and certify the answer.

    Unless opts.force is set, the input graph is first checked for a
    packing of opts.r anticomplete induced three-vertex paths; finding
    one returns not-rp3-free with the packing as witness.  The search
    then walks the candidate stream depth-first, identity element first.
    A colorable verdict always carries a verified coloring of the
    original instance.  Not-colorable is only reported after the whole
    stream was exhausted; exceeding opts.budget visited nodes aborts
    instead.  When opts.jobs > 1 the profile elements are explored in
    worker processes: the verdict is unchanged but the certificate may
    come from a different candidate, and the budget is enforced between
    element completions rather than inside them.
    """
    if opts is None:
        opts = SolveOptions()
    if inst.k != 5:
        raise InstanceError(f"k={inst.k}, need 5")
    if not opts.force:
        packing = anticomplete_packing(inst.graph, opts.r, 3)
        if packing is not None:
            if opts.trace:
                log.info("packing found: %s", packing)
            return Verdict("not-rp3-free", witness=packing, stats={})
    if opts.jobs > 1:
        return _solve_parallel(inst, opts)

    budget = _Budget(opts.budget)
    seen: Set[Tuple[int, ...]] = set()
    try:
        for element in frugal_profile(inst, opts.r):
            if element.lists in seen:
                budget.pruned += 1
                continue
            seen.add(element.lists)
            budget.elements += 1
            status, phi = _explore_element(element, opts.r, budget)
            if opts.trace:
                log.info(
                    "element %d: %s (nodes=%d leaves=%d pruned=%d)",
                    budget.elements,
                    status,
                    budget.nodes,
                    budget.leaves,
                    budget.pruned,
                )
            if status == "colorable":
                return _certify(inst, phi, budget.as_dict())
    except _BudgetExceeded:
        if opts.trace:
            log.info("budget of %d nodes exceeded", opts.budget)
        return Verdict("aborted", stats=budget.as_dict())
    return Verdict("not-colorable", stats=budget.as_dict())


def _solve_parallel(inst: Instance, opts: SolveOptions) -> Verdict:
    budget = _Budget(None)
    seen: Set[Tuple[int, ...]] = set()

    def elements() -> Iterator[Instance]:
        for element in frugal_profile(inst, opts.r):
            if element.lists in seen:
                budget.pruned += 1
                continue
            seen.add(element.lists)
            yield element

    window = 2 * opts.jobs
    over = False
    with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
        gen = elements()
        pending = set()
        exhausted = False
        while True:
            while not exhausted and not over and len(pending) < window:
                element = next(gen, None)
                if element is None:
                    exhausted = True
                    break
                budget.elements += 1
                pending.add(
                    pool.submit(_element_task, (element, opts.r, opts.budget))
                )
            if not pending:
                break
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                status, phi, wstats = fut.result()
                wstats["elements"] = 0
                budget.absorb(wstats)
                if status == "colorable":
                    pool.shutdown(wait=False, cancel_futures=True)
                    return _certify(inst, phi, budget.as_dict())
                if status == "aborted":
                    over = True
            if opts.budget is not None and budget.nodes > opts.budget:
                over = True
            if opts.trace:
                log.info(
                    "parallel progress: elements=%d nodes=%d leaves=%d",
                    budget.elements,
                    budget.nodes,
                    budget.leaves,
                )
    if over:
        return Verdict("aborted", stats=budget.as_dict())
    return Verdict("not-colorable", stats=budget.as_dict())
