import random
from itertools import combinations, product
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistlab.congruence import (
    NS_CURVES,
    NS_DROPPED,
    farey_quotient,
    farey_vertices,
    n_s_structure,
    relation_search,
    sl2_mod_order,
)
from twistlab.criteria import TwistCollection
from twistlab.errors import BadIndex, BudgetExceeded, InvalidInput
from twistlab.homology import IOTA, Mat2, twist_matrix
from twistlab.pingpong import FreenessCertificate, pingpong_certificate
from twistlab.words import WordLetter, inverse_word, word_to_matrix

U = TwistCollection.uniform


def gens(vs, s):
    return list(U(vs, s))


def W(*pairs):
    return tuple(WordLetter(i, e) for i, e in pairs)


def test_word_to_matrix_identities():
    x2, y2, z2 = gens([(1, 0), (0, 1), (1, 1)], 2)
    assert word_to_matrix([x2, y2, z2], W((0, 1), (1, 1))) == IOTA @ z2.matrix(-1)
    x, y, z, w = gens([(1, 0), (0, 1), (1, 1), (1, -1)], 3)
    assert word_to_matrix([x, y, z, w], W((1, 1), (2, 1), (0, 1))) == w.matrix(-1)
    u, v, w, x, y, z = gens([(1, 2), (2, 1), (1, -1), (1, 0), (0, 1), (1, 1)], 4)
    g = [u, v, w, x, y, z]
    assert word_to_matrix(g, W((5, 1), (1, 1), (3, 1), (2, 1), (4, 1))) == u.matrix(-1)
    assert word_to_matrix(g, ()) == Mat2.identity()
    with pytest.raises(BadIndex):
        word_to_matrix(g, W((6, 1)))


@st.composite
def words(draw, n=3, max_len=10):
    return tuple(WordLetter(draw(st.integers(0, n - 1)), draw(st.sampled_from([-2, -1, 1, 3])))
                 for _ in range(draw(st.integers(0, max_len))))


@given(words(), words())
def test_word_to_matrix_homomorphism(a, b):
    g = gens([(1, 0), (2, 3), (1, 4)], 2)
    assert word_to_matrix(g, a + b) == word_to_matrix(g, a) @ word_to_matrix(g, b)
    assert word_to_matrix(g, inverse_word(a)) == word_to_matrix(g, a).inverse()


def test_relation_search_examples():
    rel = relation_search(gens([(1, 0), (0, 1), (1, 1)], 2), 6)
    assert rel is not None and len(rel) <= 6
    assert word_to_matrix(gens([(1, 0), (0, 1), (1, 1)], 2), rel).is_identity()
    assert relation_search(gens([(1, 0), (0, 1)], 2), 8) is None
    braid = relation_search(gens([(1, 0), (0, 1)], 1), 6)
    assert braid is not None and len(braid) == 6
    assert all(abs(e) == 1 for _, e in braid)


def test_relation_search_matrix_gens_and_budget():
    m = twist_matrix((1, 0), 1) @ twist_matrix((0, 1), 1)  # order 6
    assert len(relation_search([m], 6)) == 6
    with pytest.raises(BudgetExceeded):
        relation_search(gens([(1, 0), (0, 1)], 2), 10, max_nodes=100)
    with pytest.raises(InvalidInput):
        relation_search([m], 0)


def test_certified_collections_have_no_short_relation():
    for c in [U([(1, 0), (0, 1), (1, 1)], 3), U([(1, 0), (1, 3), (2, 3)], 1)]:
        assert isinstance(pingpong_certificate(c), FreenessCertificate)
        assert relation_search(list(c), 6) is None


def test_sl2_mod_order():
    assert [sl2_mod_order(s) for s in (2, 3, 4, 5)] == [6, 24, 48, 120]
    with pytest.raises(BudgetExceeded):
        sl2_mod_order(31)


@pytest.mark.parametrize("s", range(2, 9))
def test_sl2_mod_order_brute_force(s):
    r = np.arange(s)
    a, b, c, d = np.meshgrid(r, r, r, r, indexing="ij")
    assert sl2_mod_order(s) == int(np.count_nonzero((a * d - b * c) % s == 1))


def _faces_brute(s):
    verts = farey_vertices(s)
    unit = {1, s - 1}
    edge = {frozenset((u, w)) for u, w in combinations(verts, 2)
            if (u[0] * w[1] - u[1] * w[0]) % s in unit}
    faces = 0
    for u, v, w in combinations(verts, 3):
        if not all(frozenset(p) in edge for p in ((u, v), (v, w), (u, w))):
            continue
        if any(all((e1 * u[i] + e2 * v[i] + e3 * w[i]) % s == 0 for i in (0, 1))
               for e1, e2, e3 in product((1, -1), repeat=3)):
            faces += 1
    return len(verts), len(edge), faces


def test_farey_polyhedra():
    assert [(f.v, f.e, f.f) for f in map(farey_quotient, (3, 4, 5))] == [
        (4, 6, 4), (6, 12, 8), (12, 30, 20)]
    f7 = farey_quotient(7)
    assert (f7.v, f7.euler, f7.genus) == (24, -4, 3)


@pytest.mark.parametrize("s", range(3, 13))
def test_farey_identities(s):
    f = farey_quotient(s)
    assert (f.v, f.e, f.f) == _faces_brute(s)
    assert 2 * f.e == s * f.v and 3 * f.f == 2 * f.e
    assert f.euler == f.v - f.e + f.f and 6 * f.euler == f.v * (6 - s)
    assert f.euler % 2 == 0 and f.genus == (2 - f.euler) // 2 and f.punctures == f.v


def test_vertex_count_formula():
    for s in range(3, 31):
        primes = {p for p in range(2, s + 1) if s % p == 0 and all(p % q for q in range(2, p))}
        total = s * s
        for p in primes:
            total = total * (p * p - 1) // (p * p)
        assert len(farey_vertices(s)) == total // 2


def test_n_s_structure():
    tags = [str(n_s_structure(s)) for s in range(1, 7)]
    assert tags == ["SL2Z", "FreeTimesC2", "F_3", "F_5", "F_11", "F_inf"]
    assert n_s_structure(3).witness["curves"] == [[1, 0], [0, 1], [1, 1], [-1, 1]]
    assert len(n_s_structure(4).witness["curves"]) == 6
    assert str(n_s_structure(40)) == "F_inf"


@pytest.mark.parametrize("s", [3, 4, 5])
def test_ns_curves_hit_every_vertex(s):
    reps = set()
    for a, b in NS_CURVES[s]:
        a, b = a % s, b % s
        reps.add(min((a, b), ((-a) % s, (-b) % s)))
    assert reps == set(farey_vertices(s))


def test_ns_free_generators():
    # s = 3 is certified by ping pong; for s = 4, 5 only short relations are ruled out
    gens3 = U([v for v in NS_CURVES[3] if v != NS_DROPPED[3]], 3)
    assert isinstance(pingpong_certificate(gens3), FreenessCertificate)
    for s, depth in ((4, 4), (5, 3)):
        g = n_s_structure(s)
        assert len(g.witness["free_generators"]) == g.rank
        assert relation_search(list(U(g.witness["free_generators"], s)), depth) is None


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_powers_lie_in_congruence_subgroup(s):
    rng = random.Random(s)
    for _ in range(200):
        m = Mat2.identity()
        for _ in range(rng.randint(1, 8)):
            a, b = rng.randint(-9, 9), rng.randint(-9, 9)
            if gcd(a, b) != 1:
                continue
            m = m @ twist_matrix((a, b), s * rng.choice([-2, -1, 1, 2]))
        assert m.mod(s) == (1, 0, 0, 1)
