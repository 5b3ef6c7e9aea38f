import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from hdline import line_model as lm
from hdline import scheduler as sch
from hdline.errors import (InternalInvariantError, InvalidValueError,
                           ResolutionTooCoarseError, UnsupportedCapacityError)
from hdline.ext import INF

REFERENCE = lm.LineNetwork((2, 2, 3, 1))


def test_integerize():
    net, scale = sch.integerize(lm.LineNetwork((Fraction(3, 4), Fraction(3, 4))))
    assert net.links == (3, 3) and scale == Fraction(1, 4)
    with pytest.raises(UnsupportedCapacityError):
        sch.integerize(lm.LineNetwork((1, INF)))


def test_reference_network_pipeline():
    t = sch.trace_schedule(REFERENCE)
    assert t.multiplicities == sch.Multiplicities(6, (3, 3, 2, 6))
    assert t.colors == sch.ColorAssignment(8, ((6, 8), (1, 3), (7, 8), (1, 6)))
    assert t.grouped.boundaries == (9, 7, 6, 4, 1)
    assert [(g.lo, g.hi, g.state, g.weight) for g in t.grouped.groups] == [
        (7, 8, "010", Fraction(2, 8)), (6, 6, "001", Fraction(1, 8)),
        (4, 5, "111", Fraction(2, 8)), (1, 3, "101", Fraction(3, 8))]
    assert t.rate == Fraction(3, 4)


def test_single_relay():
    s = sch.build_simple_schedule(lm.LineNetwork((1, 1)))
    assert s.entries == {"0": Fraction(1, 2), "1": Fraction(1, 2)}


def test_group_colors_rejects_bad_intervals():
    with pytest.raises(InternalInvariantError):
        sch.group_colors(1, 4, ((1, 2), (2, 4)))  # relay 1 would send and receive
    with pytest.raises(InternalInvariantError):
        sch.group_colors(1, 4, ((0, 2), (3, 4)))
    with pytest.raises(InternalInvariantError):
        sch.group_colors(2, 4, ((1, 1), (3, 4)))


def check_schedule(net):
    t = sch.trace_schedule(net)
    s = t.schedule
    n = net.n_relays
    assert s.is_simple() and len(s) <= n + 1
    assert sum(w for _, w in s.items()) == 1
    delta = t.colors.delta
    frac = lm.link_fractions(s, net)
    assert frac == [Fraction(k, delta) for k in t.multiplicities.n]
    cap = lm.closed_form_capacity(net)
    assert t.rate == cap == lm.schedule_rate_fundamental(s, net)
    return s


@settings(max_examples=150, deadline=None)
@given(st.lists(st.fractions(min_value=Fraction(1, 30), max_value=100), min_size=2, max_size=15))
def test_schedule_properties(links):
    check_schedule(lm.LineNetwork(tuple(links)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=2, max_size=7))
def test_schedule_rate_equals_exhaustive_min_cut(links):
    s = check_schedule(lm.LineNetwork(tuple(links)))
    assert oracles.min_cut(s.entries, links) == oracles.harmonic_bound(links)


def test_closed_form_matches_lp():
    pytest.importorskip("scipy")
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 4)
        links = [rng.randint(1, 20) for _ in range(n + 1)]
        cap = lm.closed_form_capacity(lm.LineNetwork(tuple(links)))
        assert oracles.lp_capacity(links) == pytest.approx(float(cap), abs=1e-7)


def test_rationalize_real():
    net, eps = sch.rationalize_real([math.pi, 0.1], 1000)
    # the double nearest 0.1 sits just above it
    assert net.links == (Fraction(3141, 1000), Fraction(1, 10))
    assert eps == Fraction(1, 1000)
    with pytest.raises(ResolutionTooCoarseError):
        sch.rationalize_real([1.0, 0.0001], 1000)
    for bad in ([1.0, -1.0], [1.0, float("inf")]):
        with pytest.raises(InvalidValueError):
            sch.rationalize_real(bad)
    with pytest.raises(InvalidValueError):
        sch.rationalize_real([1.0, 1.0], 0)


@given(st.lists(st.floats(min_value=0.01, max_value=1e3), min_size=2, max_size=8),
       st.sampled_from([10 ** 3, 10 ** 6]))
def test_rationalize_bounds(links, d):
    net, eps = sch.rationalize_real(links, d)
    for q, l in zip(net.links, links):
        assert Fraction(l) - eps < q <= Fraction(l)
        assert (q * d).denominator == 1
