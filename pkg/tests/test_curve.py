from fractions import Fraction

import pytest

from tropicount.curve import (COMPLEX, END, REAL, UNCLASSIFIABLE, AmbiguousOrientation,
                              ContractedBoundedEdge, InvalidClass, NoFreeEnd, VertexTag,
                              canonical_encoding, canonical_orientation, classify_vertices,
                              curve_multiplicity, del_pezzo_degree,
                              derive_directions, end_factor, from_edges, group_order, make_degree,
                              relative_degree, type_dimension, unoriented_broccoli_check,
                              unoriented_welschinger_check, vertex_multiplicity)
from tropicount.lattice import GaussRat, LatticeVec, ipow

from shapes import floret_type, line_type


def dirs(degree):
    return sorted(tuple(e.direction) for e in degree.ends)


def test_del_pezzo_degrees():
    assert dirs(del_pezzo_degree("P2", 3)) == sorted([(-1, 0)] * 3 + [(0, -1)] * 3 + [(1, 1)] * 3)
    assert dirs(del_pezzo_degree("P1xP1", 1, 2)) == sorted([(-1, 0)] * 2 + [(1, 0)] * 2 + [(0, -1), (0, 1)])
    assert dirs(del_pezzo_degree("P2_1", 2, 1)) == sorted([(0, -1), (1, 0), (1, 1), (-1, 0), (-1, 0)])


def test_del_pezzo_invalid():
    with pytest.raises(InvalidClass):
        del_pezzo_degree("P2_1", 1, 2)


def test_unbalanced_degree():
    with pytest.raises(InvalidClass):
        make_degree([((1, 0), 1), ((0, 1), 1)])


def test_relative_degree_and_group_order():
    deg = relative_degree((1,), (2,))
    assert group_order(deg) == 72
    assert group_order(del_pezzo_degree("P2", 3)) == 216
    assert group_order(make_degree([((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)])) == 1
    assert [deg.ends[i].direction for i in deg.fixed] == [(-1, 0)]


def test_derive_directions_split():
    deg = make_degree([((-1, 0), 1), ((0, -1), 1), ((1, 0), 1), ((0, 1), 1)], r=0, s=1)
    t = from_edges(deg, {2: (END, 0), 3: (END, 1), 4: (END, 2), 5: (END, 3)},
                   [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    derive_directions(t)
    assert t.direction(0, 1) == LatticeVec(1, 1)


def test_even_bounded_edge():
    deg = make_degree([((0, -1), 2), ((-2, 1), 1), ((2, 1), 1)])
    t = from_edges(deg, {2: (END, 0), 3: (END, 1), 4: (END, 2), 5: (END, 3)},
                   [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    derive_directions(t)
    assert t.direction(1, 0) == LatticeVec(0, -2)


def test_markings_do_not_move_directions():
    t = line_type()
    derive_directions(t)
    assert t.direction(2, 0) == LatticeVec(-1, 0)
    assert t.direction(2, 1) == LatticeVec(1, 1)


def test_contracted_bounded_edge():
    deg = make_degree([((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])
    t = from_edges(deg, {2: (END, 0), 3: (END, 1), 4: (END, 2), 5: (END, 3)},
                   [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    with pytest.raises(ContractedBoundedEdge):
        derive_directions(t)


def test_line_orientation():
    t = line_type()
    canonical_orientation(t)
    # markings point their edges away, the trivalent vertex sends out its end
    assert t.outward[(0, 2)] and t.outward[(1, 2)]
    assert not t.outward[(2, 0)] and t.outward[(2, 7)]


def test_no_free_end():
    deg = make_degree([((-1, 0), 1, True, 0), ((0, -1), 1, True, 0), ((1, 1), 1, True, 0)])
    t = from_edges(deg, {1: (END, 0), 2: (END, 1), 3: (END, 2)}, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(NoFreeEnd):
        canonical_orientation(t)


def test_ambiguous_orientation():
    deg = make_degree([((-1, 0), 1), ((0, -1), 1), ((1, 1), 1)], r=1)
    t = from_edges(deg, {3: (REAL, 0), 4: (END, 0), 5: (END, 1), 6: (END, 2)},
                   [(0, 1), (0, 3), (0, 4), (1, 5), (1, 6)])
    with pytest.raises(AmbiguousOrientation):
        canonical_orientation(t)


def test_floret_classification():
    t = floret_type()
    tags = {tg.node: tg for tg in classify_vertices(t)}
    assert tags[0].tag == "T1"
    assert tags[1].tag == "T3" and tags[1].a == 2
    assert tags[2].tag == "T6a" and tags[2].a == 2
    assert curve_multiplicity(t) == -2
    assert type_dimension(t) == 2 * (1 + 1)


def test_t3_local_directions():
    t = floret_type()
    tg = [x for x in classify_vertices(t) if x.node == 1][0]
    assert sorted(tg.directions) == sorted([LatticeVec(-1, -1), LatticeVec(-1, 1), LatticeVec(2, 0)])


def test_real_marking_on_even_edges():
    deg = make_degree([((-2, 0), 1), ((0, -1), 2), ((1, 1), 2)], r=1, s=0)
    # the real marking sits on the weight-2 edge toward the (-2,0) end
    leaves = {4: (REAL, 0), 5: (END, 0), 6: (END, 1), 7: (END, 3), 8: (END, 2), 9: (END, 4)}
    t = from_edges(deg, leaves, [(0, 1), (1, 2), (1, 3), (0, 4), (0, 5), (2, 6), (2, 7), (3, 8), (3, 9)])
    derive_directions(t)
    t.outward = {(a, b): True for a in t.nodes for b in t.adjacency[a]}
    tag = [x for x in classify_vertices(t) if x.node == 0][0]
    assert tag.tag == UNCLASSIFIABLE


def test_vertex_multiplicities():
    v = lambda name, a: VertexTag(name, a, 0, ())
    assert vertex_multiplicity(v("T1", 0)) == 1
    assert vertex_multiplicity(v("T3", 2)) == GaussRat(0, 2)
    assert vertex_multiplicity(v("T6b", 0), "labeled") == GaussRat(0, -1)
    assert vertex_multiplicity(v("T6b", 0), "unlabeled") == GaussRat(0, Fraction(-1, 2))
    assert vertex_multiplicity(v("T8", 2), "labeled") == -2
    assert vertex_multiplicity(v("T8", 2), "unlabeled") == -1
    assert vertex_multiplicity(v("T5", 3)) == 3 * ipow(2)


def test_line_multiplicity_and_dimension():
    t = line_type()
    assert curve_multiplicity(t) == 1
    assert type_dimension(t) == 4


def test_weight_two_fixed_end_factor():
    deg = make_degree([((-2, 0), 1, True, 0), ((0, -1), 2), ((1, 1), 2)])
    t = from_edges(deg, {1: (END, 0)}, [(0, 1)])
    assert end_factor(t) == GaussRat(0, 1)


def test_unoriented_checks_on_floret():
    t = floret_type()
    derive_directions(t)
    assert unoriented_broccoli_check(t)
    assert not unoriented_welschinger_check(t)


def test_even_component_with_two_stems():
    # an even bounded edge between two unmarked trivalent junctions: two stems
    deg = make_degree([((0, -1), 2), ((-2, 1), 1), ((2, 1), 1)])
    t = from_edges(deg, {2: (END, 0), 3: (END, 1), 4: (END, 2), 5: (END, 3)},
                   [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    derive_directions(t)
    assert not unoriented_broccoli_check(t)


def test_even_end_at_junction_has_two_roots():
    # the even end's component holds the junction and the end itself
    deg = make_degree([((-2, 0), 1), ((1, -1), 1), ((1, 1), 1)], r=2)
    leaves = {3: (REAL, 0), 4: (END, 1), 5: (REAL, 1), 6: (END, 2), 7: (END, 0)}
    t = from_edges(deg, leaves, [(0, 2), (1, 2), (0, 3), (0, 4), (1, 5), (1, 6), (2, 7)])
    derive_directions(t)
    assert not unoriented_broccoli_check(t)
    assert not unoriented_welschinger_check(t)
    assert UNCLASSIFIABLE in {x.tag for x in classify_vertices(t)}


def test_two_free_even_ends_not_welschinger():
    deg = make_degree([((-2, 0), 1), ((2, 0), 1), ((0, -1), 1), ((0, 1), 1)], s=1)
    leaves = {2: (END, 0), 3: (END, 2), 4: (COMPLEX, 0), 5: (END, 1), 6: (END, 3)}
    t = from_edges(deg, leaves, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)])
    derive_directions(t)
    assert not unoriented_welschinger_check(t)


def test_encoding_ignores_labels():
    t = line_type()
    deg = t.degree
    leaves = {3: (REAL, 0), 4: (END, 2), 5: (REAL, 1), 6: (END, 0), 7: (END, 1)}
    swapped = from_edges(deg, leaves, [(0, 2), (1, 2), (0, 3), (0, 4), (1, 5), (1, 6), (2, 7)])
    assert canonical_encoding(t) != canonical_encoding(swapped)
    relabeled = from_edges(deg, {3: (REAL, 1), 4: (END, 2), 5: (REAL, 0), 6: (END, 0), 7: (END, 1)},
                           [(1, 2), (0, 2), (1, 3), (1, 4), (0, 5), (0, 6), (2, 7)])
    assert canonical_encoding(relabeled) == canonical_encoding(t)
