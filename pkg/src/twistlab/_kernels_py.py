"""Pure-Python breadth-first relation search (fallback for the compiled kernel).

Letters are integers ``0..L-1``; letter ``l ^ 1`` is the inverse of ``l``.
Words are visited layer by layer, letters in increasing order, never
following a letter by its inverse.  Each new matrix is looked up in a table
of matrices already reached; a hit means two distinct reduced words (the
new one and the stored one) have the same product.
"""

NONE, FOUND, OVERFLOW, BUDGET = 0, 1, 2, 3


def _mul(m, n):
    a, b, c, d = m
    p, q, r, s = n
    return (a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)


def bfs_relation(mats, depth, max_nodes):
    """Return ``(status, word_a, word_b, nodes)``.

    On FOUND, ``word_a`` and ``word_b`` are distinct reduced letter lists
    with equal products (``word_b`` may be empty, meaning the identity).
    """
    mats = [tuple(int(x) for x in m) for m in mats]
    L = len(mats)
    ent = [(1, 0, 0, 1)]
    parent = [0]
    letter = [0]
    seen = {ent[0]: 0}

    def path(node):
        out = []
        while node:
            out.append(letter[node])
            node = parent[node]
        return out[::-1]

    start, end = 0, 1
    for _ in range(depth):
        for u in range(start, end):
            mu = ent[u]
            back = letter[u] ^ 1 if u else -1
            for l in range(L):
                if l == back:
                    continue
                m = _mul(mu, mats[l])
                v = seen.get(m)
                if v is not None:
                    return FOUND, path(u) + [l], path(v), len(ent)
                if len(ent) >= max_nodes:
                    return BUDGET, None, None, len(ent)
                seen[m] = len(ent)
                ent.append(m)
                parent.append(u)
                letter.append(l)
        start, end = end, len(ent)
    return NONE, None, None, len(ent)
