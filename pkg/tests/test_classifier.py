import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibercount import lattice as lc
from fibercount.classifier import (PolytopeCollection, Reason, Verdict, classify, is_independent,
                                   predicted_count, strip_interior_lattice_free)
from fibercount.errors import DegenerateStrip, MalformedCollection, NotCollinear

from builders import permute_collection, random_collection, random_nonempty_collection, rng_for
from oracles import minor_gcd, strip_scan

EXAMPLE = [[(0, 0, 0), (1, 1, 1)], [(0, 0, 0), (1, 0, 0), (2, 1, 1), (3, 2, 2)]]


def coll(*supports):
    return PolytopeCollection.from_supports(supports)


def test_independence_examples():
    seg = [(0, 0, 0), (1, 1, 1)]
    assert is_independent(coll(seg, seg)) == (False, (1, 2))
    assert is_independent(coll(*EXAMPLE)).independent
    r = is_independent(coll([(0, 0)], [(0, 0), (1, 0), (0, 1)]))
    assert r == (False, (1,))


def test_independence_smallest_witness_first():
    # Delta_3 alone is a point: the singleton beats the dependent pair (1, 2)
    c = coll([(0, 0, 0), (1, 0, 0)], [(0, 0, 0), (2, 0, 0)], [(0, 0, 0)])
    assert is_independent(c).witness == (3,)


@pytest.mark.parametrize("u, v, expected", [
    ((1, 0), (0, 1), True),
    ((1, 0), (0, 2), False),
    ((1, 1, 1), (1, 0, 0), True),
    ((1, 2, 3), (0, 1, 1), True),
    ((1, 0, 0), (0, 2, 2), False),
])
def test_strip_examples(u, v, expected):
    assert strip_interior_lattice_free(u, v, len(u)) is expected
    assert strip_scan(u, v) is expected
    assert (minor_gcd(u, v) == 1) is expected


def test_strip_degenerate():
    with pytest.raises(DegenerateStrip):
        strip_interior_lattice_free((1, 1, 1), (2, 2, 2), 3)
    with pytest.raises(ValueError):
        strip_interior_lattice_free((2, 2, 0), (1, 0, 0), 3)


def vec_pair(n):
    vec = st.tuples(*[st.integers(-4, 4)] * n)
    return st.tuples(vec, vec).filter(
        lambda p: any(p[0]) and lc.primitive_vector(p[0]) == p[0] and lc.rank(list(p)) == 2)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 4).flatmap(vec_pair))
def test_strip_matches_oracles(pair):
    u, v = pair
    got = strip_interior_lattice_free(u, v, len(u))
    assert got == (minor_gcd(u, v) == 1)
    assert got == strip_scan(u, v)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(vec_pair), st.integers(-5, 5))
def test_strip_translation_invariance(pair, m):
    u, v = pair
    shifted = tuple(a + m * b for a, b in zip(v, u))
    assert strip_interior_lattice_free(u, v) == strip_interior_lattice_free(u, shifted)


def test_classify_example():
    cl = classify(coll(*EXAMPLE))
    assert cl.verdict == Verdict.NONEMPTY_C1 and cl.reason == Reason.OK
    assert cl.u == (1, 1, 1) and cl.v == (1, 0, 0)
    assert cl.l2_points.points == ((1, 0, 0), (2, 1, 1), (3, 2, 2))
    assert cl.predicted_count == 2


def test_classify_k3():
    c = coll([(0, 0, 0), (1, 0, 0)], [(0, 0, 0), (0, 1, 0)], [(0, 0, 0), (0, 0, 1)])
    assert is_independent(c).independent
    cl = classify(c)
    assert (cl.verdict, cl.reason) == (Verdict.EMPTY_C1, Reason.K_AT_LEAST_3)


@pytest.mark.parametrize("supports, reason", [
    # unit square as Delta_1
    ([[(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 0), (1, 0), (0, 1), (1, 1)]], Reason.DELTA1_NOT_LINE),
    # both on the same line
    ([[(0, 0, 0), (1, 1, 1)], [(0, 0, 0), (2, 2, 2)]], Reason.DEPENDENT),
    # Delta_2 reaches two lines above L1
    ([[(0, 0), (1, 0)], [(0, 0), (0, 2)]], Reason.DELTA2_NOT_IN_STRIP),
    # the only off-line point sits two lattice lines away
    ([[(0, 0), (1, 0)], [(0, 0), (1, 2)]], Reason.STRIP_HAS_INTERIOR_POINT),
    # a single lattice point on L2
    ([[(0, 0), (1, 0)], [(0, 0), (0, 1)]], Reason.COUNT_ZERO),
    # Delta_2 has points on both sides of the diagonal L1
    ([[(0, 0), (1, 1)], [(0, 0), (1, 0), (0, 1)]], Reason.DELTA2_NOT_IN_STRIP),
    ([[(0, 0), (1, 0)], [(0, 0), (0, 1), (1, 1)]], Reason.OK),
])
def test_classify_reasons(supports, reason):
    cl = classify(coll(*supports))
    assert cl.reason == reason
    assert (cl.verdict == Verdict.NONEMPTY_C1) == (reason == Reason.OK)


def test_classify_count_zero_details():
    cl = classify(coll([(0, 0), (1, 0)], [(0, 0), (0, 1)]))
    assert cl.predicted_count == 0 and cl.v == (0, 1)


def test_classify_malformed():
    with pytest.raises(MalformedCollection):
        coll([(0, 0), (1, 0)], [(1, 1), (2, 1)])  # origin missing
    with pytest.raises(MalformedCollection):
        coll([(0, 0), (1, 0)], [(0, 0, 0), (1, 0, 0)])  # mixed ambient dimensions
    with pytest.raises(MalformedCollection):
        classify(coll([(0, 0), (1, 0)], [(0, 0), (0, 1)], [(0, 0), (1, 1)]))  # k > n
    with pytest.raises(MalformedCollection):
        classify(coll([(0, 0), (1, 0)]))  # k = 1


def test_predicted_count():
    assert predicted_count([(1, 0, 0), (2, 1, 1), (3, 2, 2)]) == 2
    assert predicted_count([(1, 0, 0)]) == 0
    assert predicted_count([(0, 1), (0, 2), (0, 3), (0, 4)]) == 3
    with pytest.raises(NotCollinear):
        predicted_count([(0, 0), (1, 0), (0, 1)])


@pytest.mark.parametrize("seed", range(40))
def test_constructed_collections_are_nonempty(seed):
    c, u, v, l2 = random_nonempty_collection(rng_for(seed))
    cl = classify(c)
    assert cl.verdict == Verdict.NONEMPTY_C1
    assert cl.u == u and cl.v == v
    assert cl.l2_points.as_set() == set(l2)
    assert cl.predicted_count == len(l2) - 1


@pytest.mark.parametrize("seed", range(60))
def test_classify_invariants_random(seed):
    rng = rng_for(1000 + seed)
    n = int(rng.integers(2, 5))
    k = int(rng.integers(2, n + 1))
    c = random_collection(rng, n, k)
    cl = classify(c)
    if k >= 3:
        assert cl.verdict == Verdict.EMPTY_C1
    if cl.verdict == Verdict.NONEMPTY_C1:
        assert is_independent(c).independent
        assert c.deltas[0].dim == 1
        assert c.deltas[1].dim in (1, 2)
        assert cl.predicted_count == len(cl.l2_points) - 1 >= 1
    for perm in itertools.islice(itertools.permutations(range(n)), 1, 4):
        other = classify(permute_collection(c, perm))
        assert (other.verdict, other.reason, other.predicted_count) == \
            (cl.verdict, cl.reason, cl.predicted_count)


@pytest.mark.parametrize("seed", range(20))
def test_permutation_invariance_nonempty(seed):
    rng = rng_for(2000 + seed)
    c, *_ = random_nonempty_collection(rng)
    cl = classify(c)
    perm = tuple(int(i) for i in rng.permutation(c.n))
    other = classify(permute_collection(c, perm))
    assert other.verdict == Verdict.NONEMPTY_C1
    assert other.predicted_count == cl.predicted_count
    assert other.u == tuple(cl.u[i] for i in perm)
