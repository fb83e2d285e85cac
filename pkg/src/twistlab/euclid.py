"""Euclidean reduction of at most three uniform twist powers.

Each step either merges two twist powers about the same curve or conjugates
one curve (the target) by a power of another curve's twist power (the
actor), which lowers the target's intersection number with the third curve.
Both moves keep the generated subgroup fixed, so the final collection
generates the same group as the initial one.  Iteration stops when the
curves are distinct and comparable.

Choices that make transcripts reproducible:

* merges first, lowest index pair, the lower index survives;
* otherwise the smallest actor index with a violated inequality; among its
  violating targets, the one meeting the actor fewer times, ties going to
  the larger index;
* the conjugating exponent is a multiple of the actor's power chosen by
  centered division, ties going to the nonnegative remainder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .criteria import TwistCollection
from .errors import InvalidInput, MixedPowers, TooManyCurves
from .homology import (
    TwistPower,
    algebraic_intersection,
    curve_from_vector,
    ext_gcd,
    geometric_intersection,
    twist_apply,
)
from .words import Word, WordLetter, concat, power_word, substitute, word_to_matrix

MAX_CURVES = 3


@dataclass(frozen=True)
class ConjugateByTwistPower:
    actor: int
    exponent: int
    target: int

    def to_json(self):
        return {"kind": "conjugate", "actor": self.actor, "exponent": self.exponent,
                "target": self.target}


@dataclass(frozen=True)
class MergeParallel:
    i: int
    j: int
    power: int

    def to_json(self):
        return {"kind": "merge", "i": self.i, "j": self.j, "power": self.power}


ReductionMove = Union[ConjugateByTwistPower, MergeParallel]


def move_from_json(obj) -> ReductionMove:
    if obj["kind"] == "conjugate":
        return ConjugateByTwistPower(int(obj["actor"]), int(obj["exponent"]), int(obj["target"]))
    if obj["kind"] == "merge":
        return MergeParallel(int(obj["i"]), int(obj["j"]), int(obj["power"]))
    raise InvalidInput(f"unknown move kind {obj['kind']!r}")


def _items(c) -> Tuple[TwistPower, ...]:
    if isinstance(c, TwistCollection):
        return c.items
    return tuple(it if isinstance(it, TwistPower) else TwistPower(*it) for it in c)


def apply_move(items: Sequence[TwistPower], move: ReductionMove) -> Tuple[TwistPower, ...]:
    items = list(items)
    if isinstance(move, MergeParallel):
        a, b = items[move.i], items[move.j]
        if a.curve != b.curve:
            raise InvalidInput(f"cannot merge distinct curves {a.curve} and {b.curve}")
        if move.power != ext_gcd(a.power, b.power)[0]:
            raise InvalidInput("merged power must be the gcd of the two powers")
        items[move.i] = TwistPower(a.curve, move.power)
        del items[move.j]
        return tuple(items)
    actor, target = items[move.actor], items[move.target]
    if move.exponent == 0 or move.exponent % actor.power:
        raise InvalidInput("conjugating exponent must be a nonzero multiple of the actor power")
    new = curve_from_vector(twist_apply(actor.curve, move.exponent, target.curve))
    items[move.target] = TwistPower(new, target.power)
    return tuple(items)


def _check_shape(items: Sequence[TwistPower]) -> int:
    if len(items) > MAX_CURVES:
        raise TooManyCurves(
            f"{len(items)} curves given; the reduction handles at most {MAX_CURVES}"
        )
    powers = {it.power for it in items}
    if len(powers) > 1:
        raise MixedPowers(f"exponents {sorted(powers)} are not uniform")
    return powers.pop() if powers else 1


def centered_remainder(a: int, d: int) -> int:
    """Representative of a mod |d| in (-|d|/2, |d|/2]."""
    d = abs(d)
    r = a % d
    if 2 * r > d:
        r -= d
    return r


def reduce_step(c) -> Optional[Tuple[Tuple[TwistPower, ...], ReductionMove]]:
    """One Euclidean move, or ``None`` when the collection is stable."""
    items = _items(c)
    _check_shape(items)
    n = len(items)
    for i in range(n):
        for j in range(i + 1, n):
            if items[i].curve == items[j].curve:
                g = ext_gcd(items[i].power, items[j].power)[0]
                move = MergeParallel(i, j, g)
                return apply_move(items, move), move
    if n < 3:
        return None
    curves = [it.curve for it in items]
    for k in range(n):
        s = items[k].power
        candidates = []
        for t in range(n):
            if t == k:
                continue
            o = 3 - k - t
            g_tk = geometric_intersection(curves[t], curves[k])
            g_ko = geometric_intersection(curves[k], curves[o])
            if 2 * geometric_intersection(curves[t], curves[o]) > s * g_tk * g_ko:
                candidates.append((g_tk, -t, t, o))
        if not candidates:
            continue
        _, _, t, o = min(candidates)
        # <T_k^m x_t, x_o> = <x_t, x_o> + m <x_k, x_t> <x_k, x_o>, m = s q
        a = algebraic_intersection(curves[t], curves[o])
        d = s * algebraic_intersection(curves[k], curves[t]) * algebraic_intersection(curves[k], curves[o])
        r = centered_remainder(a, d)
        q = (r - a) // d
        assert q != 0, "violated comparability must admit a reducing power"
        move = ConjugateByTwistPower(k, s * q, t)
        return apply_move(items, move), move
    return None


@dataclass
class Transcript:
    initial: Tuple[TwistPower, ...]
    moves: List[ReductionMove] = field(default_factory=list)
    final: Tuple[TwistPower, ...] = ()

    def replay(self) -> Tuple[TwistPower, ...]:
        items = tuple(self.initial)
        for mv in self.moves:
            items = apply_move(items, mv)
        return items

    def words(self) -> Tuple[List[Word], List[Word]]:
        """Words witnessing that the initial and final groups coincide.

        Returns ``(forward, backward)``: ``forward[i]`` spells final item i in
        the initial generators, ``backward[g]`` spells initial generator g in
        the final items.
        """
        items = list(self.initial)
        forward: List[Word] = [(WordLetter(i, 1),) for i in range(len(items))]
        backward: List[Word] = [(WordLetter(i, 1),) for i in range(len(items))]
        for mv in self.moves:
            if isinstance(mv, ConjugateByTwistPower):
                q = mv.exponent // items[mv.actor].power
                k, t = mv.actor, mv.target
                forward[t] = concat(power_word(forward[k], q), forward[t], power_word(forward[k], -q))
                images = [(WordLetter(i, 1),) for i in range(len(items))]
                images[t] = ((k, -q), (t, 1), (k, q))
                backward = [substitute(w, images) for w in backward]
            else:
                a, b = items[mv.i].power, items[mv.j].power
                _, u, v = ext_gcd(a, b)
                forward[mv.i] = concat(power_word(forward[mv.i], u), power_word(forward[mv.j], v))
                del forward[mv.j]
                images = []
                for idx in range(len(items)):
                    if idx == mv.i:
                        images.append(((mv.i, a // mv.power),))
                    elif idx == mv.j:
                        images.append(((mv.i, b // mv.power),))
                    else:
                        images.append(((idx - (idx > mv.j), 1),))
                backward = [substitute(w, images) for w in backward]
            items = list(apply_move(items, mv))
        return forward, backward

    def verify(self) -> bool:
        """Replay the moves and check subgroup equality by matrix identities."""
        if self.replay() != tuple(self.final):
            return False
        forward, backward = self.words()
        for item, w in zip(self.final, forward):
            if word_to_matrix(self.initial, w) != item.matrix():
                return False
        for item, w in zip(self.initial, backward):
            if word_to_matrix(self.final, w) != item.matrix():
                return False
        return True

    def to_json(self):
        return {
            "initial": [it.to_json() for it in self.initial],
            "moves": [mv.to_json() for mv in self.moves],
            "final": [it.to_json() for it in self.final],
        }

    @classmethod
    def from_json(cls, obj) -> "Transcript":
        return cls(
            tuple(TwistPower.from_json(o) for o in obj["initial"]),
            [move_from_json(m) for m in obj["moves"]],
            tuple(TwistPower.from_json(o) for o in obj["final"]),
        )


def step_bound(items: Sequence[TwistPower]) -> int:
    n = len(items)
    total = sum(
        geometric_intersection(items[i].curve, items[j].curve)
        for i in range(n) for j in range(i + 1, n)
    )
    return total + MAX_CURVES


def euclid_reduce(c) -> Tuple[TwistCollection, Transcript]:
    items = _items(c)
    _check_shape(items)
    transcript = Transcript(items)
    bound = step_bound(items)
    while True:
        step = reduce_step(items)
        if step is None:
            break
        items, move = step
        transcript.moves.append(move)
        if len(transcript.moves) > bound:
            raise AssertionError("Euclidean reduction exceeded its termination bound")
    transcript.final = items
    return TwistCollection(items), transcript
