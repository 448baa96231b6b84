"""Reference (pure Python) implementations of the hot kernels.

Both functions work in index space: vertices are ``0..n-1``, adjacency is
given as sorted neighbour lists plus one integer bitmask per vertex.
``alive``/``allowed`` arguments are bitmasks over indices.
"""

BACKEND = "python"


def find_pattern(n, nbrs, bits, deg, order, anchor, req, pdeg, allowed, limit):
    """Anchored backtracking for induced copies of a small connected pattern.

    ``order`` lists pattern vertices in search order; position ``j > 0`` is
    drawn from the neighbours of the image of position ``anchor[j]``.
    ``req[j]`` is a bitmask over positions ``< j`` that must be adjacent to
    position ``j`` (all other earlier positions must be non-adjacent).
    Returns up to ``limit`` embeddings as tuples indexed by pattern vertex.
    Embeddings are produced in lexicographic order of the image sequence.
    """
    p = len(order)
    image = [0] * p
    out = []

    def rec(j, used):
        if j == p:
            emb = [0] * p
            for pos in range(p):
                emb[order[pos]] = image[pos]
            out.append(tuple(emb))
            return len(out) >= limit
        want = 0
        rj = req[j]
        for i in range(j):
            if (rj >> i) & 1:
                want |= 1 << image[i]
        cands = range(n) if j == 0 else nbrs[image[anchor[j]]]
        need = pdeg[j]
        for c in cands:
            cb = 1 << c
            if used & cb or not allowed & cb or deg[c] < need:
                continue
            if bits[c] & used != want:
                continue
            image[j] = c
            if rec(j + 1, used | cb):
                return True
        return False

    rec(0, 0)
    return out


def _mcs_violation(nbrs, bits, alive):
    """Maximum cardinality search on ``alive``.

    Returns ``None`` when the induced graph is chordal, otherwise a triple
    ``(v, a, b)`` with ``a, b`` non-adjacent neighbours of ``v``.
    """
    verts = [v for v in range(len(nbrs)) if (alive >> v) & 1]
    if len(verts) < 4:
        return None
    weight = {v: 0 for v in verts}
    buckets = [dict.fromkeys(verts)]
    visited_at = {}
    top = 0
    step = 0
    while step < len(verts):
        while not buckets[top]:
            top -= 1
        # smallest index among maximum weight
        v = min(buckets[top])
        del buckets[top][v]
        visited_at[v] = step
        step += 1
        for w in nbrs[v]:
            if w in weight and w not in visited_at:
                wt = weight[w]
                del buckets[wt][w]
                wt += 1
                weight[w] = wt
                if wt == len(buckets):
                    buckets.append({})
                buckets[wt][w] = None
                if wt > top:
                    top = wt
    # reverse visiting order is a perfect elimination ordering iff chordal
    for v in verts:
        t = visited_at[v]
        earlier = [w for w in nbrs[v] if (alive >> w) & 1 and visited_at[w] < t]
        if len(earlier) < 2:
            continue
        parent = max(earlier, key=visited_at.__getitem__)
        pb = bits[parent]
        for w in earlier:
            if w != parent and not (pb >> w) & 1:
                return (v, parent, w)
    return None


def _hole_at(v, nbrs, bits, alive):
    """A hole through ``v`` inside ``alive``, or None."""
    nv = bits[v] & alive
    rest = alive & ~nv & ~(1 << v)
    # components of alive - N[v], each labelled
    comp = {}
    label = 0
    for s in range(len(nbrs)):
        if not (rest >> s) & 1 or s in comp:
            continue
        comp[s] = label
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if (rest >> y) & 1 and y not in comp:
                    comp[y] = label
                    stack.append(y)
        label += 1
    if not label:
        return None
    touch = [[] for _ in range(label)]
    for a in nbrs[v]:
        if not (alive >> a) & 1:
            continue
        seen = set()
        for y in nbrs[a]:
            c = comp.get(y)
            if c is not None and c not in seen:
                seen.add(c)
                touch[c].append(a)
    for c in range(label):
        cand = touch[c]
        for i, a in enumerate(cand):
            ab = bits[a]
            for b in cand[i + 1:]:
                if (ab >> b) & 1:
                    continue
                path = _shortest_path(a, b, nbrs, rest | (1 << a) | (1 << b), comp, c)
                return [v, *path]
    return None


def _shortest_path(a, b, nbrs, region, comp, c):
    parent = {a: None}
    frontier = [a]
    while frontier:
        nxt = []
        for x in frontier:
            for y in nbrs[x]:
                if y in parent or not (region >> y) & 1:
                    continue
                if y != b and comp.get(y) != c:
                    continue
                parent[y] = x
                if y == b:
                    path = [b]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(y)
        frontier = nxt
    raise AssertionError("touching vertices must be connected through the component")


def find_hole(n, nbrs, bits, alive):
    """An induced cycle of length >= 4 inside ``alive`` or None.

    Chordality is decided by maximum cardinality search; when it fails the
    violating vertex is tried first, then every vertex in increasing order.
    """
    bad = _mcs_violation(nbrs, bits, alive)
    if bad is None:
        return None
    tried = set()
    for v in [bad[0], *range(n)]:
        if v in tried or not (alive >> v) & 1:
            continue
        tried.add(v)
        hole = _hole_at(v, nbrs, bits, alive)
        if hole is not None:
            return hole
    raise AssertionError("non-chordal graph without a hole")


def is_chordal(n, nbrs, bits, alive):
    return _mcs_violation(nbrs, bits, alive) is None
