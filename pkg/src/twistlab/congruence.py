"""Brute-force oracles: relation search, SL(2, Z_s) orders, Farey quotients, N_s.

``relation_search`` is the refutation side of freeness: a breadth-first
walk over freely reduced words that reports the first two distinct words
with equal matrices.  The remaining functions are finite enumerations mod s.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import List, Optional, Sequence

import numpy as np

from . import _backend
from .classify import GroupType, free
from .errors import BudgetExceeded, InvalidInput
from .homology import Mat2, TwistPower, curve_from_vector
from .words import WordLetter, Word, concat, expand_letters, inverse_word, word_to_matrix

__all__ = [
    "WordLetter", "word_to_matrix", "relation_search", "relation_search_full",
    "RelationSearchResult",
    "sl2_mod_order", "FareyStats", "farey_quotient", "n_s_structure",
    "NS_CURVES", "NS_DROPPED", "MAX_MODULUS", "DEFAULT_MAX_NODES",
]

MAX_MODULUS = 30
DEFAULT_MAX_NODES = 2_000_000


def _letter_matrices(gens) -> List[tuple]:
    mats = []
    for g in gens:
        m = g.matrix() if isinstance(g, TwistPower) else g
        if not isinstance(m, Mat2):
            raise InvalidInput(f"generator {g!r} is neither a TwistPower nor a Mat2")
        mats.append(m.as_tuple())
        mats.append(m.inverse().as_tuple())
    return mats


def _to_word(letters: Sequence[int]) -> Word:
    return tuple(WordLetter(l >> 1, -1 if l & 1 else 1) for l in letters)


@dataclass
class RelationSearchResult:
    relation: Optional[Word]
    nodes: int
    words: Optional[tuple] = None  # the two colliding words


def relation_search_full(gens, depth: int, max_nodes: int = DEFAULT_MAX_NODES,
                         backend: Optional[str] = None) -> RelationSearchResult:
    if depth < 1:
        raise InvalidInput("depth must be at least 1")
    mats = _letter_matrices(gens)
    status, wa, wb, nodes = _backend.bfs_relation(mats, depth, max_nodes, backend)
    if status == 3:
        raise BudgetExceeded(f"relation search exceeded {max_nodes} nodes at depth {depth}")
    if status == 0:
        return RelationSearchResult(None, nodes)
    a, b = _to_word(wa), _to_word(wb)
    rel = expand_letters(concat(a, inverse_word(b)))
    assert rel and word_to_matrix(gens, rel).is_identity()
    return RelationSearchResult(rel, nodes, (a, b))


def relation_search(gens, depth: int, max_nodes: int = DEFAULT_MAX_NODES,
                    backend: Optional[str] = None) -> Optional[Word]:
    """A nonempty reduced word (letters with exponent +/-1) that evaluates
    to the identity, found among words of length <= depth; else None."""
    return relation_search_full(gens, depth, max_nodes, backend).relation


def _check_modulus(s: int, lo: int) -> None:
    if s < lo:
        raise InvalidInput(f"s must be at least {lo}")
    if s > MAX_MODULUS:
        raise BudgetExceeded(f"s = {s} exceeds the enumeration budget {MAX_MODULUS}")


def sl2_mod_order(s: int) -> int:
    """|SL(2, Z_s)| by counting (a, d) and (b, c) pairs by their product."""
    _check_modulus(s, 2)
    r = np.arange(s)
    prods = np.outer(r, r) % s
    hist = np.bincount(prods.ravel(), minlength=s)
    # ad - bc = 1: pair each value x of ad with bc = x - 1
    return int(sum(int(hist[x]) * int(hist[(x - 1) % s]) for x in range(s)))


@dataclass(frozen=True)
class FareyStats:
    s: int
    v: int
    e: int
    f: int
    euler: int
    genus: int
    punctures: int

    def to_json(self):
        return {"s": self.s, "v": self.v, "e": self.e, "f": self.f,
                "euler": self.euler, "genus": self.genus, "punctures": self.punctures}


def farey_vertices(s: int) -> List[tuple]:
    """Canonical representatives of +/- classes of primitive vectors mod s."""
    out = []
    for a in range(s):
        for b in range(s):
            if gcd(gcd(a, b), s) != 1:
                continue
            na, nb = (-a) % s, (-b) % s
            if (a, b) <= (na, nb):
                out.append((a, b))
    return out


def _canon(vec, s):
    a, b = vec[0] % s, vec[1] % s
    return min((a, b), ((-a) % s, (-b) % s))


def farey_quotient(s: int) -> FareyStats:
    """Vertex, edge and face counts of the Farey complex modulo Gamma_s.

    Edges join classes whose determinant is +/-1 mod s; the faces through an
    edge {u, v} are {u, v, u + v} and {u, v, u - v}.
    """
    _check_modulus(s, 3)
    verts = farey_vertices(s)
    unit = {1 % s, (-1) % s}
    edges = [(u, w) for u, w in combinations(verts, 2)
             if (u[0] * w[1] - u[1] * w[0]) % s in unit]
    faces = set()
    for u, w in edges:
        for sign in (1, -1):
            t = _canon((u[0] + sign * w[0], u[1] + sign * w[1]), s)
            faces.add(frozenset((u, w, t)))
    v, e, f = len(verts), len(edges), len(faces)
    euler = v - e + f
    return FareyStats(s, v, e, f, euler, (2 - euler) // 2, v)


NS_CURVES = {
    3: [(1, 0), (0, 1), (1, 1), (1, -1)],
    4: [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)],
    5: [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (-2, 1),
        (2, 3), (-2, 3), (2, 5), (5, 2)],
}
# the curve left out of the free basis; for s = 3, 4 its twist power is a
# product of the others' (T_y^3 T_z^3 T_x^3 = T_w^-3, T_z^4 T_v^4 T_x^4 T_w^4 T_y^4 = T_u^-4)
NS_DROPPED = {3: (1, -1), 4: (1, 2), 5: (5, 2)}


def n_s_structure(s: int) -> GroupType:
    """Isomorphism type of the subgroup generated by all s-th twist powers."""
    if s < 1:
        raise InvalidInput("s must be positive")
    if s == 1:
        return GroupType("SL2Z", witness={"s": 1, "curves": [[1, 0], [0, 1]]})
    if s == 2:
        return GroupType("FreeTimesC2", witness={
            "s": 2, "curves": [[1, 0], [0, 1], [1, 1]],
            "index": sl2_mod_order(2)})
    if s in NS_CURVES:
        stats = farey_quotient(s)
        curves = [curve_from_vector(c).to_json() for c in NS_CURVES[s]]
        assert len(curves) == stats.v
        return free(stats.v - 1, witness={
            "s": s, "curves": curves, "free_generators": [c for c in curves if c != list(curve_from_vector(NS_DROPPED[s]).vector)],
            "farey": stats.to_json(), "index": sl2_mod_order(s)})
    witness = {"s": s}
    if s <= MAX_MODULUS:
        stats = farey_quotient(s)
        assert stats.genus >= 1
        witness["farey"] = stats.to_json()
    else:
        witness["reason"] = "Euler characteristic v(6-s)/6 < 0 for every s > 6"
    return free("inf", witness=witness)
