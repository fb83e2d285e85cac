"""The comparable and proportional inequality systems on twist collections.

For curves ``x_i`` with exponents ``s_i`` and ``g(i, j)`` the geometric
intersection number:

* comparable:   2 g(i, j) <= s_k g(i, k) g(k, j)                 (middle k)
* proportional: g(i, j) + g(j, k) + g(k, i) <= s_j g(i, j) g(j, k)  (middle j)

for every ordered triple of distinct indices.  Violations are reported as
index triples ``(first, middle, last)`` in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DuplicateCurve, InvalidInput, MixedPowers
from .homology import Curve, TwistPower, curve_from_vector, geometric_intersection

Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class TwistCollection:
    items: Tuple[TwistPower, ...]

    def __post_init__(self):
        items = tuple(
            it if isinstance(it, TwistPower) else TwistPower(*it) for it in self.items
        )
        object.__setattr__(self, "items", items)
        seen = set()
        for it in items:
            if it.curve in seen:
                raise DuplicateCurve(f"{it.curve} appears twice; merge equal curves first")
            seen.add(it.curve)

    @classmethod
    def uniform(cls, curves: Iterable, s: int = 1) -> "TwistCollection":
        return cls(tuple(TwistPower(curve_from_vector(c), s) for c in curves))

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "TwistCollection":
        return cls(tuple(TwistPower(curve_from_vector(c), p) for c, p in pairs))

    @classmethod
    def from_json(cls, obj) -> "TwistCollection":
        if isinstance(obj, dict):
            obj = obj.get("powers", obj.get("items"))
        if not isinstance(obj, list):
            raise InvalidInput("expected a list of {'curve': [a, b], 'power': s}")
        return cls(tuple(TwistPower.from_json(o) for o in obj))

    def to_json(self):
        return [it.to_json() for it in self.items]

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    @property
    def curves(self) -> List[Curve]:
        return [it.curve for it in self.items]

    @property
    def powers(self) -> List[int]:
        return [it.power for it in self.items]

    def uniform_power(self) -> Optional[int]:
        ps = set(self.powers)
        return ps.pop() if len(ps) == 1 else None

    def require_uniform(self) -> int:
        s = self.uniform_power()
        if s is None:
            raise MixedPowers(f"exponents {self.powers} are not uniform")
        return s

    def geo(self, i: int, j: int) -> int:
        return geometric_intersection(self.items[i].curve, self.items[j].curve)

    def matrices(self):
        return [it.matrix() for it in self.items]


def ob1_exception(a: int, b: int, s: int) -> bool:
    """True iff (a, b, s) is one of the cases where s*a*b >= 2(a + b) fails."""
    if min(a, b, s) < 1:
        raise ValueError("a, b, s must be positive")
    lo, hi = min(a, b), max(a, b)
    if s == 1:
        return lo < 3 or (lo == 3 and hi <= 5)
    if s == 2:
        return lo == 1
    if s == 3:
        return hi == 1
    return False


def geo_matrix(c: TwistCollection) -> np.ndarray:
    """Pairwise geometric intersection numbers.

    int64 when every product the inequality checks form fits, object dtype
    (Python ints) otherwise.
    """
    n = len(c)
    coords = [it.curve.vector for it in c.items]
    bound = max((max(abs(a), abs(b)) for a, b in coords), default=0)
    smax = max(c.powers, default=1)
    # |det| <= 2 bound^2; the proportional rhs multiplies two of them by s
    small = (2 * bound * bound) ** 2 * smax < 2**62
    if small:
        xy = np.array(coords, dtype=np.int64).reshape(n, 2)
        g = np.abs(np.outer(xy[:, 0], xy[:, 1]) - np.outer(xy[:, 1], xy[:, 0]))
        return g
    g = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            g[i, j] = geometric_intersection(coords[i], coords[j])
    return g


def _powers(c: TwistCollection, dtype) -> np.ndarray:
    return np.array(c.powers, dtype=dtype)


def comparable_violations(c: TwistCollection) -> List[Triple]:
    """All (i, k, j) with 2 g(i, j) > s_k g(i, k) g(k, j)."""
    n = len(c)
    if n < 3:
        return []
    g = geo_matrix(c)
    s = _powers(c, g.dtype)
    out = []
    for i in range(n):
        # bad[k, j]: middle k, last j
        bad = 2 * g[i][None, :] > (s * g[i])[:, None] * g
        bad = np.asarray(bad, dtype=bool)
        bad[i, :] = False
        bad[:, i] = False
        np.fill_diagonal(bad, False)
        for k, j in zip(*np.nonzero(bad)):
            out.append((i, int(k), int(j)))
    return out


def _proportional_bad(g: np.ndarray, s: np.ndarray, i: int) -> np.ndarray:
    # bad[j, k]: first i, middle j, last k
    lhs = g[i][:, None] + g + g[i][None, :]
    rhs = (s * g[i])[:, None] * g
    bad = np.asarray(lhs > rhs, dtype=bool)
    bad[i, :] = False
    bad[:, i] = False
    np.fill_diagonal(bad, False)
    return bad


def proportional_violations(c: TwistCollection) -> List[Triple]:
    """All (i, j, k) with g(i,j) + g(j,k) + g(k,i) > s_j g(i,j) g(j,k)."""
    n = len(c)
    if n < 3:
        return []
    g = geo_matrix(c)
    s = _powers(c, g.dtype)
    out = []
    for i in range(n):
        for j, k in zip(*np.nonzero(_proportional_bad(g, s, i))):
            out.append((i, int(j), int(k)))
    return out


def first_proportional_violation(c: TwistCollection) -> Optional[Triple]:
    """Lexicographically smallest proportional violation, without listing all."""
    n = len(c)
    if n < 3:
        return None
    g = geo_matrix(c)
    s = _powers(c, g.dtype)
    for i in range(n):
        bad = _proportional_bad(g, s, i)
        hits = np.flatnonzero(bad)
        if hits.size:
            j, k = divmod(int(hits[0]), n)
            return (i, j, k)
    return None


def is_comparable(c: TwistCollection) -> bool:
    return not comparable_violations(c)


def is_proportional(c: TwistCollection) -> bool:
    return first_proportional_violation(c) is None


def comparable_violations_naive(c: TwistCollection) -> List[Triple]:
    """Loop-based reference for comparable_violations."""
    out = []
    for i, k, j in permutations(range(len(c)), 3):
        if 2 * c.geo(i, j) > c[k].power * c.geo(i, k) * c.geo(k, j):
            out.append((i, k, j))
    return sorted(out)


def proportional_violations_naive(c: TwistCollection) -> List[Triple]:
    """Loop-based reference for proportional_violations."""
    out = []
    for i, j, k in permutations(range(len(c)), 3):
        lhs = c.geo(i, j) + c.geo(j, k) + c.geo(k, i)
        if lhs > c[j].power * c.geo(i, j) * c.geo(j, k):
            out.append((i, j, k))
    return sorted(out)


def uniform(curves: Sequence, s: int) -> TwistCollection:
    return TwistCollection.uniform(curves, s)
