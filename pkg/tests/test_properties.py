"""Structural properties checked on every realizable type of small problems."""
from hypothesis import HealthCheck, given, settings, strategies as st

from tropicount.curve import (BROCCOLI_TAGS, UNCLASSIFIABLE, WELSCHINGER_TAGS, canonical_orientation,
                              classify_vertices, curve_multiplicity_gauss, del_pezzo_degree,
                              make_degree, tag_counts, type_dimension, unoriented_broccoli_check,
                              unoriented_welschinger_check)
from tropicount.enumerate import Problem, count_invariant, generate_types, random_conditions
from tropicount.geometry import PlacedCurve, check_placement, place_curve
from tropicount.lattice import is_even

from shapes import EVEN_END, FOUR, SEVEN

DEGREES = [
    del_pezzo_degree("P2", 1).with_markings(0, 1),
    del_pezzo_degree("P2", 2).with_markings(1, 2),
    del_pezzo_degree("P2", 2).with_markings(3, 1),
    del_pezzo_degree("P1xP1", 1, 1).with_markings(1, 1),
    make_degree(FOUR, 0, 1),
    make_degree(EVEN_END, 0, 2),
    make_degree(EVEN_END, 2, 1),
    make_degree(SEVEN, 0, 3),
    make_degree(SEVEN, 4, 1),
]

slow = settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def realizable(deg, seed):
    cond = random_conditions(deg, seed, 1000)
    prob = Problem(deg, "broccoli", cond)
    for t in generate_types(prob, parity=False):
        pc = place_curve(t, cond)
        if isinstance(pc, PlacedCurve):
            try:
                canonical_orientation(t)
            except ValueError:
                continue
            yield t, pc, cond


@slow
@given(st.sampled_from(DEGREES[:8]), st.integers(0, 10 ** 6))
def test_oriented_and_unoriented_classes_agree(deg, seed):
    for t, pc, cond in realizable(deg, seed):
        tags = classify_vertices(t)
        names = {x.tag for x in tags}
        counts = tag_counts(tags)
        r, s = t.counts()
        assert type_dimension(t) == 2 * (r + s) + len(deg.fixed)
        assert check_placement(pc, cond)
        assert (names <= BROCCOLI_TAGS) == unoriented_broccoli_check(t)
        welsch = names <= WELSCHINGER_TAGS and counts.get("T7", 0) == counts.get("T8", 0)
        assert welsch == unoriented_welschinger_check(t)
        for x in tags:
            if x.tag != UNCLASSIFIABLE:
                odd = sum(not is_even(d) for d in x.directions)
                assert odd != 1
        if UNCLASSIFIABLE not in names:
            assert curve_multiplicity_gauss(t).is_real()


@slow
@given(st.sampled_from(DEGREES), st.sampled_from(["broccoli", "welschinger"]), st.integers(0, 10 ** 6))
def test_counted_curves(deg, mode, seed):
    rep = count_invariant(Problem(deg, mode, random_conditions(deg, seed, 10 ** 4)))
    assert rep.value == sum(c.multiplicity for c in rep.curves)
    for c in rep.curves:
        t = c.placement.type
        r, s = t.counts()
        assert curve_multiplicity_gauss(t).is_real()
        assert type_dimension(t) == 2 * (r + s) + len(deg.fixed)
        if mode == "welschinger":
            assert c.tags.get("T7", 0) == c.tags.get("T8", 0)


@slow
@given(st.sampled_from(DEGREES[:6]), st.integers(0, 10 ** 6))
def test_broccoli_count_is_invariant(deg, seed):
    # broccoli counts never depend on the conditions
    a = count_invariant(Problem(deg, "broccoli", random_conditions(deg, seed, 10 ** 4))).value
    b = count_invariant(Problem(deg, "broccoli", random_conditions(deg, seed + 1, 10 ** 4))).value
    assert a == b
