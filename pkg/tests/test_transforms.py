from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import digraphs
from treedet.arborescence import arborescence_sum, count_arborescences
from treedet.errors import (NotParallel, PreconditionNewSourceTarget,
                            PreconditionSourceTarget, SelfLoop, UnknownArc)
from treedet.graph import Digraph
from treedet.symbolic import parse, u
from treedet.transforms import (can_move, combine_all_parallel, combine_arcs,
                                move_all_to_root, move_arc)


def arc_id(g, s, t, k=0):
    return g.arcs_between(s, t)[k].id


def test_move_upper_arc_to_root(upper):
    e = arc_id(upper, 1, 2)
    g = move_arc(upper, e, 0)
    assert [a.weight for a in g.arcs_between(0, 2)] == [u(1, 2), u(2, 2)]
    assert g.arc(e).source == 0 and g.arc(e).weight == u(1, 2)
    assert arborescence_sum(g) == arborescence_sum(upper)


def test_identity_move_returns_same_graph(upper):
    e = arc_id(upper, 1, 2)
    assert move_arc(upper, e, 1) is upper


def test_identity_move_still_checks_source_target(full):
    with pytest.raises(PreconditionSourceTarget):
        move_arc(full, arc_id(full, 2, 1), 2)


def test_move_blocked_on_cycle(full):
    with pytest.raises(PreconditionSourceTarget):
        move_arc(full, arc_id(full, 2, 1), 3)


def test_new_source_condition_checked_on_result():
    # moving 1->2 to 3->2 closes the cycle 2->3->2, which only exists after the move
    g = Digraph.from_arcs(4, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
    e = arc_id(g, 1, 2)
    assert not g.strongly_connected(1, 2)
    assert not g.strongly_connected(3, 2)  # false on the original graph
    with pytest.raises(PreconditionNewSourceTarget):
        move_arc(g, e, 3)


def test_move_errors(upper):
    with pytest.raises(UnknownArc):
        move_arc(upper, 999, 0)
    e = arc_id(upper, 1, 2)
    with pytest.raises(SelfLoop):
        move_arc(upper, e, 2)


def test_combine_root_arcs(upper):
    g = move_arc(upper, arc_id(upper, 1, 2), 0)
    a, b = (x.id for x in g.arcs_between(0, 2))
    h = combine_arcs(g, b, a)
    (merged,) = h.arcs_between(0, 2)
    assert merged.weight == parse("u22 + u12")
    assert merged.id not in (a, b)
    assert arborescence_sum(h) == arborescence_sum(g)


def test_combine_with_zero():
    g = Digraph.from_arcs(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 4.0), (0, 3, 0.0)])
    h = combine_arcs(g, 2, 3)
    assert [a.weight for a in h.arcs_between(0, 3)] == [4.0]
    assert arborescence_sum(h) == arborescence_sum(g) == 4.0


def test_combine_not_parallel(upper):
    with pytest.raises(NotParallel):
        combine_arcs(upper, arc_id(upper, 1, 2), arc_id(upper, 1, 3))
    with pytest.raises(NotParallel):
        combine_arcs(upper, 0, 0)


def test_move_and_merge_upper(upper):
    diag = combine_all_parallel(move_all_to_root(upper))
    assert [(a.source, a.target) for a in diag.arcs] == [(0, 1), (0, 2), (0, 3)]
    assert [a.weight for a in diag.arcs] == [u(1, 1), parse("u12 + u22"), parse("u13 + u23 + u33")]


def test_three_parallel_root_arcs():
    g = Digraph.from_arcs(4, [(0, 1, 1), (0, 2, 1), (0, 3, u(1, 3)), (0, 3, u(2, 3)), (0, 3, u(3, 3))])
    h = combine_all_parallel(g)
    assert [a.weight for a in h.arcs_between(0, 3)] == [parse("u13 + u23 + u33")]


def test_no_parallels_unchanged(full):
    assert combine_all_parallel(full) == full


def test_move_all_to_root_skips_illegal(full):
    # full is strongly connected on {1,2,3}; nothing can move
    assert move_all_to_root(full) == full


def test_oracle_detects_illegal_move():
    # 0->1, 1->2, 2->1: moving 2->1 to come from 0 is refused, and doing it anyway changes the sum
    g = Digraph.from_arcs(3, [(0, 1, Fraction(2)), (1, 2, Fraction(3)), (2, 1, Fraction(5)), (0, 2, Fraction(7))])
    e = arc_id(g, 2, 1)
    assert not can_move(g, e, 0)
    forced = g.with_arcs(type(a)(a.id, 0 if a.id == e else a.source, a.target, a.weight) for a in g.arcs)
    assert arborescence_sum(forced) != arborescence_sum(g)


@st.composite
def legal_moves(draw):
    g = draw(digraphs(max_n=5, root_valid=True))
    assume(g.arcs)
    e = draw(st.sampled_from(g.arcs))
    c = draw(st.integers(0, g.n))
    assume(can_move(g, e.id, c))
    return g, e.id, c


@settings(max_examples=150)
@given(legal_moves())
def test_move_preserves_sum_and_counts(case):
    g, e, c = case
    h = move_arc(g, e, c)
    assert arborescence_sum(h) == arborescence_sum(g)
    assert count_arborescences(h, containing=e) == count_arborescences(g, containing=e)
    assert count_arborescences(h) == count_arborescences(g)


@settings(max_examples=150)
@given(legal_moves())
def test_move_changes_only_one_source(case):
    g, e, c = case
    h = move_arc(g, e, c)
    assert h.vertex_count == g.vertex_count and len(h) == len(g)
    assert Counter(a.target for a in h.arcs) == Counter(a.target for a in g.arcs)
    assert Counter(a.weight for a in h.arcs) == Counter(a.weight for a in g.arcs)
    assert [a for a in h.arcs if a.id != e] == [a for a in g.arcs if a.id != e]


@given(digraphs(max_n=4), st.data())
def test_combine_preserves_sum_every_root(g, data):
    assume(g.arcs)
    e = data.draw(st.sampled_from(g.arcs))
    g, twin = g.add_arc(e.source, e.target, data.draw(st.integers(-5, 9)))
    h = combine_arcs(g, e.id, twin)
    for r in range(g.vertex_count):
        assert arborescence_sum(h, r) == arborescence_sum(g, r)


@given(digraphs(max_n=4))
def test_combine_all_parallel_properties(g):
    h = combine_all_parallel(g)
    assert combine_all_parallel(h) == h
    pairs = [(a.source, a.target) for a in h.arcs]
    assert len(pairs) == len(set(pairs))
    for r in range(g.vertex_count):
        assert arborescence_sum(h, r) == arborescence_sum(g, r)
