"""Rewrites that leave the sum over arborescence weights unchanged.

``move_arc`` re-sources a single arc when neither the old nor the new
(source, target) pair is strongly connected; ``combine_arcs`` merges two
parallel arcs into one carrying the summed weight.
"""

from __future__ import annotations

from .errors import (NotParallel, PreconditionNewSourceTarget,
                     PreconditionSourceTarget, SelfLoop)
from .graph import ROOT, Arc, Digraph


def move_arc(g: Digraph, arc_id: int, new_source: int) -> Digraph:
    """Return ``g`` with arc ``arc_id`` re-sourced at ``new_source``.

    The arc keeps its id, target and weight.  Raises when the move is not
    known to preserve the arborescence sum.
    """
    e = g.arc(arc_id)
    g._check_vertex(new_source)
    a, b, c = e.source, e.target, new_source
    if c == b:
        raise SelfLoop(f"moving arc {arc_id} to source {c} would make a self-loop")
    if g.strongly_connected(a, b):
        raise PreconditionSourceTarget(
            f"arc {arc_id}: source {a} and target {b} are strongly connected")
    if c == a:
        return g
    moved = Arc(e.id, c, b, e.weight)
    candidate = g.with_arcs(moved if x.id == arc_id else x for x in g.arcs)
    if candidate.strongly_connected(c, b):
        raise PreconditionNewSourceTarget(
            f"arc {arc_id}: new source {c} and target {b} would be strongly connected")
    return candidate


def can_move(g: Digraph, arc_id: int, new_source: int) -> bool:
    try:
        move_arc(g, arc_id, new_source)
    except (PreconditionSourceTarget, PreconditionNewSourceTarget, SelfLoop):
        return False
    return True


def _merge(g: Digraph, ids: list[int]) -> tuple[Digraph, int]:
    """Replace the arcs ``ids`` (all parallel) by one fresh arc at the first one's position."""
    arcs = [g.arc(i) for i in ids]
    weight = arcs[0].weight
    for x in arcs[1:]:
        weight = weight + x.weight
    new_id = g.next_id
    merged = Arc(new_id, arcs[0].source, arcs[0].target, weight)
    drop = set(ids[1:])
    out = []
    for x in g.arcs:
        if x.id == ids[0]:
            out.append(merged)
        elif x.id not in drop:
            out.append(x)
    return Digraph(g.vertex_count, out, new_id + 1), new_id


def combine_arcs(g: Digraph, arc1: int, arc2: int) -> Digraph:
    return combine_arcs_id(g, arc1, arc2)[0]


def combine_arcs_id(g: Digraph, arc1: int, arc2: int) -> tuple[Digraph, int]:
    """As :func:`combine_arcs`, also returning the id of the merged arc."""
    e1, e2 = g.arc(arc1), g.arc(arc2)
    if arc1 == arc2:
        raise NotParallel(f"arc {arc1} cannot be combined with itself")
    if (e1.source, e1.target) != (e2.source, e2.target):
        raise NotParallel(
            f"arcs {arc1} ({e1.source}->{e1.target}) and {arc2} ({e2.source}->{e2.target}) are not parallel")
    return _merge(g, [arc1, arc2])


def combine_all_parallel(g: Digraph) -> Digraph:
    """Merge every parallel class; classes are visited in order of their first arc."""
    classes: dict[tuple[int, int], list[int]] = {}
    for a in g.arcs:
        classes.setdefault((a.source, a.target), []).append(a.id)
    for ids in classes.values():
        if len(ids) > 1:
            g, _ = _merge(g, ids)
    return g


def move_all_to_root(g: Digraph) -> Digraph:
    """Move every non-root arc to source 0 where that is legal, in arc order.

    Arcs whose move is refused stay where they are.
    """
    for a in list(g.arcs):
        if a.source != ROOT and can_move(g, a.id, ROOT):
            g = move_arc(g, a.id, ROOT)
    return g
