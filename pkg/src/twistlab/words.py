"""Group words over a list of twist-power generators.

A word is a tuple of ``(generator index, exponent)`` syllables with nonzero
integer exponents; a letter in the strict sense is a syllable with exponent
+1 or -1.  Words are evaluated left to right as matrix products.
"""

from __future__ import annotations

from typing import Iterable, List, NamedTuple, Sequence, Tuple

from .errors import BadIndex
from .homology import Mat2, TwistPower


class WordLetter(NamedTuple):
    index: int
    exponent: int = 1


Word = Tuple[WordLetter, ...]


def reduce_word(w: Iterable) -> Word:
    """Free reduction: merge neighbouring syllables on the same generator."""
    out: List[List[int]] = []
    for idx, e in w:
        if e == 0:
            continue
        if out and out[-1][0] == idx:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([idx, e])
    return tuple(WordLetter(i, e) for i, e in out)


def inverse_word(w: Iterable) -> Word:
    return tuple(WordLetter(i, -e) for i, e in reversed(list(w)))


def power_word(w: Sequence, q: int) -> Word:
    base = tuple(w) if q >= 0 else inverse_word(w)
    return reduce_word(base * abs(q))


def concat(*words) -> Word:
    return reduce_word(x for w in words for x in w)


def word_length(w: Iterable) -> int:
    return sum(abs(e) for _, e in w)


def expand_letters(w: Iterable) -> Word:
    """Spell every syllable out as exponent +/-1 letters."""
    out = []
    for i, e in w:
        sign = 1 if e > 0 else -1
        out.extend([WordLetter(i, sign)] * abs(e))
    return tuple(out)


def word_to_matrix(gens: Sequence, w: Iterable) -> Mat2:
    """Evaluate ``w`` on generators given as TwistPowers or Mat2s."""
    mats = [g.matrix() if isinstance(g, TwistPower) else g for g in gens]
    m = Mat2.identity()
    for idx, e in w:
        if not 0 <= idx < len(mats):
            raise BadIndex(f"letter index {idx} outside 0..{len(mats) - 1}")
        m = m @ (mats[idx] ** e)
    return m


def substitute(w: Iterable, images: Sequence[Sequence]) -> Word:
    """Replace generator ``i`` by the word ``images[i]``."""
    return concat(*(power_word(images[i], e) for i, e in w))


def format_word(w: Iterable, names: Sequence[str] = None) -> str:
    parts = []
    for i, e in w:
        name = names[i] if names else f"g{i}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts) if parts else "1"


def word_to_json(w: Iterable):
    return [[int(i), int(e)] for i, e in w]


def word_from_json(obj) -> Word:
    return tuple(WordLetter(int(i), int(e)) for i, e in obj)
