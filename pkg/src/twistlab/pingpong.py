"""Freeness certificates from ping pong, and the sliding procedure.

A collection of twist powers ``T_i^{s_i}`` about distinct curves is freely
generated when, for the ping pong sets ``N_i = {c : (c, x_i) < (c, x_j) for
all j != i}``, every nonzero power of ``T_j^{s_j}`` carries ``N_i`` into
``N_j``.  That holds when

* every triple satisfies the proportional inequality, and
* every ordered pair satisfies ``s_j (x_i, x_j) >= 2``.

With three or more curves the second condition follows from the first; for
exactly two curves the triple system is vacuous and the pair condition is
what actually drives the argument, so it is always checked and recorded.

When the inequalities fail there are two ways to change the generating
set, both of which transfer a freeness certificate back to the input:

* a Hurwitz move replaces one generator by its conjugate under another
  generator's power.  This is a Nielsen transformation, so the new list is
  a free basis exactly when the old one is;
* a slide doubles the exponent of the middle curve ``x_j`` of a violating
  triple and appends the conjugates ``T_j^{+/-s_j}(x_l)`` of every other
  curve.  If the expanded collection is free on its listed generators then
  so is the original one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import permutations
from typing import List, Optional, Tuple

import numpy as np

from .criteria import TwistCollection, first_proportional_violation, geo_matrix
from .errors import TwistlabError
from .homology import TwistPower, curve_from_vector, ext_gcd, geometric_intersection, twist_apply
from .words import Word, WordLetter, concat, power_word, word_to_json, word_to_matrix

DEFAULT_MAX_STEPS = 16
DEFAULT_MAX_ITEMS = 4096


class ExponentConflict(TwistlabError):
    """A slide produced a curve already present with a different exponent."""


@dataclass(frozen=True)
class InequalityRecord:
    first: int
    middle: int
    last: int
    lhs: int
    rhs: int

    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_json(self):
        return [self.first, self.middle, self.last, self.lhs, self.rhs]


@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    value: int  # s_j * geo(i, j)

    def holds(self) -> bool:
        return self.value >= 2

    def to_json(self):
        return [self.i, self.j, self.value]


@dataclass(frozen=True)
class SlideMove:
    index: int
    sign: int

    def apply(self, c: "TwistCollection") -> "TwistCollection":
        return slide_expand(c, self.index, self.sign)

    def to_json(self):
        return {"kind": "slide", "index": self.index, "sign": self.sign}


@dataclass(frozen=True)
class HurwitzMove:
    """Replace item ``target`` by its conjugate under T_actor^{sign s_actor}."""

    actor: int
    target: int
    sign: int

    def apply(self, c: "TwistCollection") -> "TwistCollection":
        return hurwitz_move(c, self.actor, self.target, self.sign)

    def to_json(self):
        return {"kind": "hurwitz", "actor": self.actor, "target": self.target, "sign": self.sign}


def derivation_move_from_json(obj):
    if obj.get("kind", "slide") == "slide":
        return SlideMove(int(obj["index"]), int(obj["sign"]))
    return HurwitzMove(int(obj["actor"]), int(obj["target"]), int(obj["sign"]))


def _evaluate_triple(c: TwistCollection, i: int, j: int, k: int) -> InequalityRecord:
    gij, gjk, gki = c.geo(i, j), c.geo(j, k), c.geo(k, i)
    return InequalityRecord(i, j, k, gij + gjk + gki, c[j].power * gij * gjk)


def _evaluate_pair(c: TwistCollection, i: int, j: int) -> PairRecord:
    return PairRecord(i, j, c[j].power * c.geo(i, j))


@dataclass
class FreenessCertificate:
    collection: TwistCollection
    evidence: List[InequalityRecord]
    pair_evidence: List[PairRecord]
    original: Optional[TwistCollection] = None
    derivation: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.original if self.original is not None else self.collection)

    def verify(self) -> bool:
        """Recheck every inequality from scratch and replay the derivation."""
        c = self.collection
        n = len(c)
        seen = set()
        for rec in self.evidence:
            if _evaluate_triple(c, rec.first, rec.middle, rec.last) != rec or not rec.holds():
                return False
            seen.add((rec.first, rec.middle, rec.last))
        if seen != set(permutations(range(n), 3)):
            return False
        pairs = set()
        for rec in self.pair_evidence:
            if _evaluate_pair(c, rec.i, rec.j) != rec or not rec.holds():
                return False
            pairs.add((rec.i, rec.j))
        if pairs != set(permutations(range(n), 2)):
            return False
        if self.derivation:
            cur = self.original
            for mv in self.derivation:
                cur = mv.apply(cur)
            if cur != c:
                return False
        return True

    def to_json(self):
        out = {
            "collection": self.collection.to_json(),
            "rank": self.rank,
            "inequalities": [r.to_json() for r in self.evidence],
            "pair_conditions": [r.to_json() for r in self.pair_evidence],
        }
        if self.original is not None:
            out["original"] = self.original.to_json()
            out["derivation"] = [m.to_json() for m in self.derivation]
        return out


@dataclass
class NotApplicable:
    violations: List[Tuple[int, int, int]]
    pair_violations: List[Tuple[int, int]]

    def to_json(self):
        return {
            "violations": [list(t) for t in self.violations],
            "pair_violations": [list(p) for p in self.pair_violations],
        }


def pair_violations(c: TwistCollection) -> List[Tuple[int, int]]:
    """Ordered pairs (i, j) with s_j * geo(i, j) < 2."""
    n = len(c)
    if n < 2:
        return []
    g = geo_matrix(c)
    s = np.array(c.powers, dtype=g.dtype)
    bad = np.asarray(s[None, :] * g < 2, dtype=bool)
    np.fill_diagonal(bad, False)
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(bad))]


def pingpong_certificate(c: TwistCollection):
    """FreenessCertificate when the ping pong inequalities hold, else NotApplicable."""
    n = len(c)
    triples, pairs, bad_t, bad_p = [], [], [], []
    for i, j, k in permutations(range(n), 3):
        rec = _evaluate_triple(c, i, j, k)
        (triples if rec.holds() else bad_t).append(rec)
    for i, j in permutations(range(n), 2):
        rec = _evaluate_pair(c, i, j)
        (pairs if rec.holds() else bad_p).append(rec)
    if bad_t or bad_p:
        return NotApplicable(
            sorted((r.first, r.middle, r.last) for r in bad_t),
            sorted((r.i, r.j) for r in bad_p),
        )
    return FreenessCertificate(c, triples, pairs)


def _conjugates(c: TwistCollection, j: int, sign: int) -> List[TwistPower]:
    actor = c[j]
    return [
        TwistPower(curve_from_vector(twist_apply(actor.curve, sign * actor.power, it.curve)), it.power)
        for l, it in enumerate(c.items) if l != j
    ]


def slide_collisions(c: TwistCollection, j: int, sign: int) -> List[Tuple[int, int]]:
    """Pairs (l, m): the conjugate of item l lands on the curve of item m."""
    where = {it.curve: m for m, it in enumerate(c.items)}
    others = [l for l in range(len(c)) if l != j]
    return [
        (l, where[z.curve]) for l, z in zip(others, _conjugates(c, j, sign)) if z.curve in where
    ]


def slide_expand(c: TwistCollection, j: int, sign: int = 1) -> TwistCollection:
    """Double item j's exponent and append the conjugates of the others by T_j^{sign s_j}."""
    if not 0 <= j < len(c):
        raise IndexError(f"no item {j} in a collection of {len(c)}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    items = list(c.items)
    items[j] = TwistPower(items[j].curve, 2 * items[j].power)
    present = {it.curve: it.power for it in c.items}
    for z in _conjugates(c, j, sign):
        if z.curve in present:
            if present[z.curve] != z.power:
                raise ExponentConflict(
                    f"conjugate {z.curve} already present with power {present[z.curve]}"
                )
            continue
        items.append(z)
    return TwistCollection(tuple(items))


def _conjugate(c: TwistCollection, j: int, l: int, sign: int) -> TwistPower:
    actor = c[j]
    return TwistPower(
        curve_from_vector(twist_apply(actor.curve, sign * actor.power, c[l].curve)), c[l].power
    )


def hurwitz_move(c: TwistCollection, j: int, l: int, sign: int = 1) -> TwistCollection:
    if j == l:
        raise ValueError("actor and target must differ")
    items = list(c.items)
    items[l] = _conjugate(c, j, l, sign)
    return TwistCollection(tuple(items))


def _hurwitz_delta(c: TwistCollection, j: int, l: int, sign: int) -> Tuple[int, Optional[int]]:
    """Change in the total pairwise intersection, and the item hit if any."""
    z = _conjugate(c, j, l, sign).curve
    delta = 0
    for m, it in enumerate(c.items):
        if m == l:
            continue
        if it.curve == z:
            return 0, m
        delta += geometric_intersection(z, it.curve) - c.geo(l, m)
    return delta, None


@dataclass
class ProcedureOutcome:
    """Result of the sliding procedure.

    ``verdict`` is one of ``FreeCertified``, ``PairFound``, ``RelationFound``
    or ``Inconclusive``.  ``RelationFound`` carries a nontrivial word in the
    original generators that evaluates to the identity.
    """

    verdict: str
    original: TwistCollection
    steps: int
    collection: TwistCollection
    certificate: Optional[FreenessCertificate] = None
    pair: Optional[Tuple[int, int]] = None
    relation: Optional[Word] = None
    reason: Optional[str] = None
    derivation: list = field(default_factory=list)
    words: List[Word] = field(default_factory=list)

    @property
    def rank(self) -> Optional[int]:
        return len(self.original) if self.verdict == "FreeCertified" else None

    def pair_info(self):
        if self.pair is None:
            return None
        i, j = self.pair
        a, b = self.collection[i], self.collection[j]
        geo = self.collection.geo(i, j)
        return {
            "indices": [i, j],
            "curves": [a.curve.to_json(), b.curve.to_json()],
            "powers": [a.power, b.power],
            "geo": geo,
            "power_times_geo": max(a.power, b.power) * geo,
            "at_most_two": max(a.power, b.power) * geo <= 2,
            "words": [word_to_json(self.words[i]), word_to_json(self.words[j])],
        }

    def to_json(self):
        out = {
            "verdict": self.verdict,
            "steps": self.steps,
            "original": self.original.to_json(),
            "derivation": [m.to_json() for m in self.derivation],
            "collection_size": len(self.collection),
        }
        if self.verdict == "FreeCertified":
            out["rank"] = self.rank
            out["certificate"] = self.certificate.to_json()
        elif self.verdict == "PairFound":
            out["pair"] = self.pair_info()
        elif self.verdict == "RelationFound":
            out["relation"] = word_to_json(self.relation)
        if self.reason:
            out["reason"] = self.reason
        return out


def _small_pair(c: TwistCollection) -> Optional[Tuple[int, int]]:
    n = len(c)
    if n < 2:
        return None
    g = geo_matrix(c)
    s = np.array(c.powers, dtype=g.dtype)
    hit = np.asarray(np.maximum.outer(s, s) * g <= 2, dtype=bool)
    hit = np.triu(hit, 1)
    idx = np.flatnonzero(hit)
    if idx.size == 0:
        return None
    return divmod(int(idx[0]), n)


def _first_violation(c: TwistCollection) -> Optional[Tuple[int, ...]]:
    """First violating triple (i, j, k), else first violating pair (i, j)."""
    t = first_proportional_violation(c)
    if t is not None:
        return t
    pv = pair_violations(c)
    if pv:
        return pv[0]
    return None


def _geo_sum(c: TwistCollection) -> int:
    return int(geo_matrix(c).sum()) // 2


def default_max_steps() -> int:
    env = os.environ.get("TWISTLAB_MAX_STEPS")
    return int(env) if env else DEFAULT_MAX_STEPS


def procedure_run(c: TwistCollection, max_steps: Optional[int] = None,
                  max_items: int = DEFAULT_MAX_ITEMS,
                  max_hurwitz: int = 10_000) -> ProcedureOutcome:
    """Alternate ping pong checks with Hurwitz moves and slides.

    Each round takes the first violation (a triple ``(i, j, k)`` with middle
    ``j``, or a pair ``(i, j)``):

    1. a pair with ``max(s_i, s_j) * geo <= 2`` stops with ``PairFound``;
    2. no violation at all gives ``FreeCertified`` for the original
       generators;
    3. conjugating an end of the violation (``i``, then ``k``) by
       ``T_j^{+1}`` or ``T_j^{-1}`` is applied when it strictly lowers the
       total of pairwise intersection numbers; the best such move wins;
    4. otherwise ``j`` is slid.  Both signs are tried and the one with the
       smaller total of pairwise intersection numbers is kept, ``+1`` on
       ties.  Only slides count towards ``max_steps``.

    A move that lands a conjugate on a curve already present exhibits a
    relation in the original generators and ends with ``RelationFound``.
    """
    if max_steps is None:
        max_steps = default_max_steps()
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    original = c
    words: List[Word] = [(WordLetter(i, 1),) for i in range(len(c))]
    derivation: list = []
    step = 0
    hurwitz_count = 0

    def outcome(verdict, **kw):
        return ProcedureOutcome(verdict, original, step, c, derivation=list(derivation),
                                words=list(words), **kw)

    def conjugate_word(j, l, sign):
        return concat(power_word(words[j], sign), words[l], power_word(words[j], -sign))

    def relation_for(j, sign, l, m):
        wz = conjugate_word(j, l, sign)
        p, q = c[l].power, c[m].power
        g = ext_gcd(p, q)[0]
        rel = concat(power_word(wz, q // g), power_word(words[m], -(p // g)))
        assert rel and word_to_matrix(original, rel).is_identity()
        return rel

    while True:
        pair = _small_pair(c)
        if pair is not None:
            return outcome("PairFound", pair=pair)
        viol = _first_violation(c)
        if viol is None:
            cert = pingpong_certificate(c)
            assert isinstance(cert, FreenessCertificate)
            if derivation:
                cert.original = original
                cert.derivation = list(derivation)
            return outcome("FreeCertified", certificate=cert)

        j = viol[1]
        ends = [viol[0]] + ([viol[2]] if len(viol) == 3 else [])
        best = None
        for l in ends:
            for sign in (1, -1):
                delta, hit = _hurwitz_delta(c, j, l, sign)
                if hit is not None:
                    return outcome("RelationFound", relation=relation_for(j, sign, l, hit),
                                   reason=f"conjugating item {l} by item {j}^{sign:+d} gives item {hit}")
                if delta < 0 and (best is None or delta < best[0]):
                    best = (delta, l, sign)
        if best is not None and hurwitz_count < max_hurwitz:
            _, l, sign = best
            words[l] = conjugate_word(j, l, sign)
            c = hurwitz_move(c, j, l, sign)
            derivation.append(HurwitzMove(j, l, sign))
            hurwitz_count += 1
            continue

        if step >= max_steps:
            return outcome("Inconclusive", reason="max_steps")
        if 2 * len(c) - 1 > max_items:
            return outcome("Inconclusive", reason="max_items")
        branches = []
        for sign in (1, -1):
            hits = slide_collisions(c, j, sign)
            if hits:
                l, m = hits[0]
                return outcome("RelationFound", relation=relation_for(j, sign, l, m),
                               reason=f"slide of item {j} (sign {sign:+d}) sent item {l} onto item {m}")
            expanded = slide_expand(c, j, sign)
            branches.append((_geo_sum(expanded), -sign, sign, expanded))
        _, _, sign, expanded = min(branches, key=lambda b: (b[0], b[1]))
        new_words = list(words)
        new_words[j] = power_word(words[j], 2)
        for l in range(len(words)):
            if l != j:
                new_words.append(conjugate_word(j, l, sign))
        words = new_words
        c = expanded
        derivation.append(SlideMove(j, sign))
        step += 1
