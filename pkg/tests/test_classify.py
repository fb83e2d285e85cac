from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import primitive
from twistlab.classify import (
    SQUARE_GENS,
    classify,
    classify_pair_collection,
    classify_three_uniform,
    classify_two,
    express_twist_in_squares,
    h_membership,
)
from twistlab.criteria import TwistCollection
from twistlab.errors import BadPair, InvalidInput, MixedPowers, NotMultipleOfFour, TooManyCurves
from twistlab.euclid import euclid_reduce
from twistlab.homology import IOTA, Curve, curve_from_vector, twist_apply, twist_matrix
from twistlab.words import WordLetter, word_to_matrix

U = TwistCollection.uniform
EXAMPLES = {
    "eg1": ([(1, 0), (1, 0), (1, 0)], "F_1"),
    "eg2": ([(1, 0), (1, 3), (-11, 3)], "F_2"),
    "eg3": ([(1, 0), (4, 3), (1, 6)], "F_3"),
    "eg4": ([(1, 0), (7, 3), (1, 4)], "SL2Z"),
}


def test_classify_two():
    assert str(classify_two((1, 2), 3, (1, 2), 5)) == "F_1"
    assert str(classify_two((1, 0), 1, (0, 1), 1)) == "SL2Z"
    assert str(classify_two((1, 0), 1, (1, 3), 1)) == "F_2"
    assert classify_two((0, 1), 2, (1, 0), 1).kind == "squareRel"
    assert classify_two((1, 0), 3, (0, 1), 1).kind == "cubeRel"
    assert str(classify_two((1, 0), 2, (0, 1), 2)) == "F_2"
    assert str(classify_two((1, 0), 1, (1, 2), 1)) == "F_2"


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_worked_examples(name):
    vs, want = EXAMPLES[name]
    items = [(curve_from_vector(v), 1) for v in vs]
    g = classify_three_uniform(items)
    assert str(g) == want
    assert g.transcript.verify()
    final, _ = euclid_reduce(items)
    if len(final) == 2:
        two = classify_two(final[0].curve, 1, final[1].curve, 1)
        assert str(two) == str(g)


def test_sl2z_witness_has_geo_one():
    g = classify_three_uniform([(curve_from_vector(v), 1) for v in EXAMPLES["eg4"][0]])
    assert g.witness["pair"]["geo"] == 1


def test_free_times_c2():
    g = classify_three_uniform(U([(1, 0), (0, 1), (1, 1)], 2))
    assert g.tag == "FreeTimesC2"
    w = g.witness
    lhs = twist_matrix(w["a"], 2) @ twist_matrix(w["b"], 2)
    assert lhs == IOTA @ twist_matrix(w["c"], 2 * w["e"])
    assert twist_matrix((1, 0), 2) @ twist_matrix((0, 1), 2) == IOTA @ twist_matrix((1, 1), -2)


def test_free_times_c2_after_reduction():
    # conjugated copy of the same configuration
    m = twist_matrix((2, 5), 2)
    vs = [m @ v for v in [(1, 0), (0, 1), (1, 1)]]
    assert classify_three_uniform(U(vs, 2)).tag == "FreeTimesC2"


def test_three_uniform_errors():
    with pytest.raises(TooManyCurves):
        classify_three_uniform(U([(1, 0), (0, 1), (1, 1), (1, 2)], 1))
    with pytest.raises(MixedPowers):
        classify_three_uniform(TwistCollection.from_pairs([((1, 0), 1), ((0, 1), 2)]))


@given(st.lists(primitive(30), min_size=1, max_size=3), st.integers(1, 5))
def test_three_uniform_never_guesses(vs, s):
    g = classify_three_uniform([(curve_from_vector(v), s) for v in vs])
    assert g.tag in {"Free", "FreeTimesC2", "SL2Z", "TwoGenPresentation"}
    if g.tag == "SL2Z":
        assert s == 1
    if g.tag == "FreeTimesC2":
        assert s == 2


def test_h_membership_examples():
    assert h_membership("g2s1", (3, 4))
    assert h_membership("g1s2", (1, 2))
    assert not h_membership("g1s2", (1, 1))
    with pytest.raises(InvalidInput):
        h_membership("nope", (1, 0))


def _box(n):
    return [(a, b) for a in range(-n, n + 1) for b in range(-n, n + 1) if gcd(a, b) == 1]


@pytest.mark.parametrize("config,gens", [
    ("g2s1", [((1, 0), 1), ((1, 2), 1)]),
    ("g1s2", [((1, 0), 2), ((0, 1), 2)]),
])
def test_h_membership_closed(config, gens):
    for v in _box(20):
        inside = h_membership(config, v)
        for x, k in gens:
            for e in (k, -k):
                assert h_membership(config, twist_apply(x, e, v)) == inside


def test_orbit_fills_even_classes():
    gens = [((1, 0), 1), ((1, 0), -1), ((1, 2), 1), ((1, 2), -1)]
    seen = {Curve(1, 0), Curve(1, 2)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for c in frontier:
            for x, k in gens:
                d = curve_from_vector(twist_apply(x, k, c))
                if max(abs(d.a), abs(d.b)) <= 16 and d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    box = {curve_from_vector(v) for v in _box(12)}
    assert seen & box == {c for c in box if c.b % 2 == 0}


def test_pair_collection_examples():
    assert str(classify_pair_collection(U([(1, 0), (1, 2), (3, 2), (5, 4)], 1), (0, 1))) == "F_2"
    assert classify_pair_collection(U([(1, 0), (1, 2), (2, 5)], 1), (0, 1)).tag == "SL2Z"
    assert classify_pair_collection(U([(1, 0), (0, 1), (1, 1)], 2), (0, 1)).tag == "FreeTimesC2"
    assert str(classify_pair_collection(U([(1, 0), (0, 1), (1, 2)], 2), (0, 1))) == "F_2"
    with pytest.raises(BadPair):
        classify_pair_collection(U([(1, 0), (1, 3)], 1), (0, 1))


def test_pair_collection_in_other_coordinates():
    m = twist_matrix((3, 4), 1) @ twist_matrix((1, 1), -2)
    c = U([m @ v for v in [(1, 0), (1, 2), (2, 5)]], 1)
    assert classify_pair_collection(c, (0, 1)).tag == "SL2Z"


def test_express_examples():
    assert express_twist_in_squares((1, 0), 4) == (WordLetter(0, 2),)
    w = express_twist_in_squares((1, 1), 4)
    assert word_to_matrix(SQUARE_GENS, w) == twist_matrix((1, 1), 4)
    # the product (T_x^2 T_y^2)^2 is T_z^-4 under T_x(v) = v + <x,v> x
    xy2 = ((0, 1), (1, 1), (0, 1), (1, 1))
    assert word_to_matrix(SQUARE_GENS, xy2) == twist_matrix((1, 1), -4)
    w = express_twist_in_squares((1, 2), 4)
    assert word_to_matrix(SQUARE_GENS, w) == twist_matrix((1, 2), 4)
    with pytest.raises(NotMultipleOfFour):
        express_twist_in_squares((1, 0), 6)


@given(primitive(10), st.sampled_from([-8, -4, 0, 4, 8, 12]))
def test_express_postcondition(v, e):
    w = express_twist_in_squares(v, e)
    assert word_to_matrix(SQUARE_GENS, w) == twist_matrix(v, e)


def test_dispatch():
    assert str(classify([(curve_from_vector((1, 0)), 2), (curve_from_vector((-1, 0)), 3)])) == "F_1"
    assert classify(U([(1, 0), (0, 1), (1, 2), (5, 3)], 1)).tag == "SL2Z"
    assert str(classify(U([(1, 0), (1, 3), (1, 10), (3, 17)], 1))) == "F_4"
    assert str(classify(U([(1, 0), (1, 2), (3, 2), (5, 4)], 1))) == "F_2"
    assert classify(U([(1, 0), (0, 1), (1, 1), (2, 1), (3, 1)], 4), max_steps=3).tag == "Inconclusive"
    mixed = TwistCollection.from_pairs([((1, 0), 5), ((0, 1), 5), ((1, 1), 6)])
    assert str(classify(mixed)) == "F_3"
