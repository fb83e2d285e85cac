"""Isomorphism types of subgroups generated by twist powers on the torus.

Covers two twist powers, up to three twist powers with a common exponent
(after Euclidean reduction), collections containing a pair with
``s * geo == 2``, and the rewriting of ``T_v^e`` (``4 | e``) as a word in
``T_(1,0)^2`` and ``T_(0,1)^2``.  Everything else is routed to the ping pong
procedure, and the answer is ``Inconclusive`` or ``Unsupported`` when no
theorem applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import gcd
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from .criteria import TwistCollection, is_comparable, is_proportional
from .errors import BadPair, InvalidInput, NotMultipleOfFour, TooManyCurves
from .euclid import Transcript, centered_remainder, euclid_reduce
from .homology import (
    IOTA,
    Curve,
    TwistPower,
    curve_from_vector,
    geometric_intersection,
    normalize_pair,
    twist_matrix,
)
from .pingpong import FreenessCertificate, pingpong_certificate, procedure_run
from .words import Word, WordLetter, concat, inverse_word, power_word, word_to_matrix

INF = "inf"
CONFIGS = ("g2s1", "g1s2")


@dataclass
class GroupType:
    """Verdict.  ``tag`` is Free, FreeTimesC2, SL2Z, TwoGenPresentation,
    Inconclusive or Unsupported; ``rank`` is set for Free (an int or "inf")."""

    tag: str
    rank: Union[int, str, None] = None
    kind: Optional[str] = None
    witness: Dict[str, Any] = field(default_factory=dict)
    transcript: Optional[Transcript] = None
    certificate: Optional[FreenessCertificate] = None

    def to_json(self):
        out: Dict[str, Any] = {"tag": self.tag}
        if self.rank is not None:
            out["rank"] = self.rank
        if self.kind is not None:
            out["kind"] = self.kind
        if self.witness:
            out["witness"] = self.witness
        if self.transcript is not None:
            out["transcript"] = self.transcript.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out

    def __str__(self):
        if self.tag == "Free":
            return "F_inf" if self.rank == INF else f"F_{self.rank}"
        if self.tag == "TwoGenPresentation":
            return f"TwoGenPresentation({self.kind})"
        return self.tag


PRESENTATIONS = {
    "squareRel": "abab = baba, (b^2 a)^4 = 1",
    "cubeRel": "aba = bab",
}


def free(rank, **kw) -> GroupType:
    return GroupType("Free", rank, **kw)


def classify_two(x, s: int, y, t: int) -> GroupType:
    """Subgroup generated by T_x^s and T_y^t."""
    x, y = curve_from_vector(x), curve_from_vector(y)
    if s < 1 or t < 1:
        raise InvalidInput("exponents must be positive")
    if s > t:
        x, s, y, t = y, t, x, s
    g = geometric_intersection(x, y)
    pair = {"curves": [x.to_json(), y.to_json()], "powers": [s, t], "geo": g}
    if g == 0:
        return free(1, witness={"generator": {"curve": x.to_json(), "power": gcd(s, t)}, **pair})
    if g == 1 and s == 1:
        if t == 1:
            return GroupType("SL2Z", witness={"pair": pair})
        if t == 2:
            return GroupType("TwoGenPresentation", kind="squareRel",
                             witness={"pair": pair, "relations": PRESENTATIONS["squareRel"]})
        if t == 3:
            return GroupType("TwoGenPresentation", kind="cubeRel",
                             witness={"pair": pair, "relations": PRESENTATIONS["cubeRel"]})
    return free(2, witness={"pair": pair})


def _c2_witness(c: TwistCollection) -> Dict[str, Any]:
    """Find T_a^2 T_b^2 = iota T_c^{2e} among the three curves."""
    for a, b, k in permutations(range(3)):
        lhs = c[a].matrix() @ c[b].matrix()
        for e in (-1, 1):
            if lhs == IOTA @ c[k].matrix(e):
                return {
                    "identity": "T_a^2 T_b^2 = iota T_c^(2e)",
                    "a": c[a].curve.to_json(), "b": c[b].curve.to_json(),
                    "c": c[k].curve.to_json(), "e": e,
                    "lhs": lhs.rows(),
                }
    raise AssertionError("no order-two relation among three pairwise adjacent curves")


def classify_three_uniform(c) -> GroupType:
    """Euclidean reduction, then the two-twist fact or ping pong.

    Repeated curves are allowed; the reduction merges them.
    """
    items = c.items if isinstance(c, TwistCollection) else tuple(
        it if isinstance(it, TwistPower) else TwistPower(*it) for it in c)
    if len(items) > 3:
        raise TooManyCurves(f"{len(items)} curves given; at most 3 supported here")
    if not items:
        return free(0)
    final, tr = euclid_reduce(items)
    s = final.require_uniform()
    n = len(final)
    if n == 1:
        return free(1, transcript=tr, witness={"generator": final[0].to_json()})
    if n == 2:
        out = classify_two(final[0].curve, final[0].power, final[1].curve, final[1].power)
        out.transcript = tr
        return out
    assert is_comparable(final)
    if is_proportional(final):
        cert = pingpong_certificate(final)
        assert isinstance(cert, FreenessCertificate)
        return free(3, transcript=tr, certificate=cert)
    # comparable but not proportional only happens for s = 2 with all geo = 1
    geos = [final.geo(i, j) for i, j in ((0, 1), (0, 2), (1, 2))]
    if s != 2 or geos != [1, 1, 1]:
        raise AssertionError(f"unexpected comparable, non-proportional shape s={s} geo={geos}")
    return GroupType("FreeTimesC2", transcript=tr, witness=_c2_witness(final))


def h_membership(config: str, v) -> bool:
    """Parity test for the curve set of the normalized pair configuration.

    ``g2s1``: x=(1,0), y=(1,2), s=1; members have b even.
    ``g1s2``: x=(1,0), y=(0,1), s=2; members have a + b odd.
    """
    a, b = curve_from_vector(v).vector
    if config == "g2s1":
        return b % 2 == 0
    if config == "g1s2":
        return (a + b) % 2 == 1
    raise InvalidInput(f"unknown configuration {config!r}; use one of {CONFIGS}")


def classify_pair_collection(c: TwistCollection, pair: Tuple[int, int]) -> GroupType:
    s = c.require_uniform()
    i, j = pair
    n = len(c)
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise BadPair(f"pair {pair} is not two distinct indices of a {n}-item collection")
    g = c.geo(i, j)
    if s * g != 2:
        raise BadPair(f"pair {pair} has s*geo = {s * g}, expected 2")
    config = "g2s1" if s == 1 else "g1s2"
    norm = normalize_pair(c[i].curve, c[j].curve)
    tested = []
    for k, it in enumerate(c.items):
        if k in pair:
            continue
        w = norm.apply(it.curve)
        tested.append({"index": k, "normalized": w.to_json(), "member": h_membership(config, w)})
    witness = {"pair": [i, j], "config": config, "transform": norm.transform.rows(),
               "normalized_pair": [norm.x_prime.to_json(), norm.y_prime.to_json()],
               "tested": tested}
    if all(t["member"] for t in tested):
        return free(2, witness=witness)
    return GroupType("SL2Z" if s == 1 else "FreeTimesC2", witness=witness)


SQUARE_GENS = (TwistPower(Curve(1, 0), 2), TwistPower(Curve(0, 1), 2))


def _base_word(u: Curve, e: int) -> Word:
    if u == Curve(1, 0):
        return ((WordLetter(0, e // 2),))
    if u == Curve(0, 1):
        return ((WordLetter(1, e // 2),))
    target = twist_matrix(u, e)
    for w in (((0, 1), (1, 1)), ((1, 1), (0, 1))):
        for sign in (1, -1):
            cand = power_word(w, sign * e // 2)
            if word_to_matrix(SQUARE_GENS, cand) == target:
                return cand
    raise AssertionError(f"no base word for {u}")


def express_twist_in_squares(v, e: int) -> Word:
    """Word over (T_(1,0)^2, T_(0,1)^2) whose product is T_v^e.

    Letters use index 0 for T_(1,0)^2 and 1 for T_(0,1)^2.
    """
    if e % 4:
        raise NotMultipleOfFour(f"exponent {e} is not a multiple of 4")
    v = curve_from_vector(v)
    a, b = v.vector
    moves = []  # applied to v in order
    while abs(a) != abs(b) and a and b:
        if abs(a) > abs(b):
            # X^m: a -> a + 2mb
            r = centered_remainder(a, 2 * b)
            moves.append((0, (r - a) // (2 * b)))
            a = r
        else:
            # Y^m: b -> b - 2ma
            r = centered_remainder(b, 2 * a)
            moves.append((1, (b - r) // (2 * a)))
            b = r
    u = curve_from_vector((a, b))
    # M = g_r ... g_1 sends v to +/-u, so T_v^e = M^-1 T_u^e M
    m_word = tuple(WordLetter(i, k) for i, k in reversed(moves) if k)
    word = concat(inverse_word(m_word), _base_word(u, e), m_word)
    assert word_to_matrix(SQUARE_GENS, word) == twist_matrix(v, e)
    return word


def _merge_equal(items: Sequence[TwistPower]) -> Tuple[TwistPower, ...]:
    merged: Dict[Curve, int] = {}
    for it in items:
        merged[it.curve] = gcd(merged.get(it.curve, 0), it.power)
    return tuple(TwistPower(cv, p) for cv, p in merged.items())


def _small_pair_uniform(c: TwistCollection, s: int) -> Optional[Tuple[int, int]]:
    n = len(c)
    for i in range(n):
        for j in range(i + 1, n):
            if s * c.geo(i, j) == 2:
                return (i, j)
    return None


def classify(items, max_steps: Optional[int] = None) -> GroupType:
    """Dispatch on size and shape; equal curves are merged first."""
    if isinstance(items, TwistCollection):
        items = items.items
    items = tuple(it if isinstance(it, TwistPower) else TwistPower(*it) for it in items)
    c = TwistCollection(_merge_equal(items))
    n = len(c)
    s = c.uniform_power()
    if n <= 1:
        return free(n)
    if n == 2:
        return classify_two(c[0].curve, c[0].power, c[1].curve, c[1].power)
    if n == 3 and s is not None:
        return classify_three_uniform(c)
    if s == 1:
        for i in range(n):
            for j in range(i + 1, n):
                if c.geo(i, j) == 1:
                    return GroupType("SL2Z", witness={"pair": [i, j]})
    if s in (1, 2):
        pair = _small_pair_uniform(c, s)
        if pair is not None:
            return classify_pair_collection(c, pair)
    out = procedure_run(c, max_steps=max_steps)
    if out.verdict == "FreeCertified":
        return free(n, certificate=out.certificate)
    if out.verdict == "PairFound":
        i, j = out.pair
        cur = out.collection
        if cur[i].power == cur[j].power == 1 and cur.geo(i, j) == 1:
            # the moves keep the group, and it contains T_a, T_b with geo 1
            return GroupType("SL2Z", witness={"procedure": out.to_json()})
    if s is None and out.verdict != "RelationFound":
        return GroupType("Unsupported", witness={"reason": "mixed exponents",
                                                 "procedure": out.to_json()})
    return GroupType("Inconclusive", witness={"procedure": out.to_json()})
