# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the pattern-search and hole-finding kernels.

Same algorithms and the same deterministic output as ``_pykernels``; the
graph arrives as CSR arrays plus a dense 0/1 adjacency matrix and vertex
subsets as 0/1 masks.
"""
import numpy as np

BACKEND = "cython"


def find_pattern(int n, const int[::1] indptr, const int[::1] indices,
                 const unsigned char[:, ::1] adj, const int[::1] deg,
                 const int[::1] order, const int[::1] anchor,
                 const unsigned char[:, ::1] reqm, const int[::1] pdeg,
                 const unsigned char[::1] allowed, long limit):
    cdef int p = order.shape[0]
    cdef int image[16]
    cdef Py_ssize_t ptr[16]
    cdef Py_ssize_t end[16]
    cdef unsigned char[::1] used = np.zeros(max(n, 1), dtype=np.uint8)
    cdef int j = 0, i, c = 0, a
    cdef bint found, ok
    out = []
    if p == 0 or p > 16 or n == 0:
        return out
    ptr[0] = 0
    end[0] = n
    while j >= 0:
        found = False
        while ptr[j] < end[j]:
            if j == 0:
                c = <int>ptr[0]
            else:
                c = indices[ptr[j]]
            ptr[j] += 1
            if used[c] or not allowed[c] or deg[c] < pdeg[j]:
                continue
            ok = True
            for i in range(j):
                if adj[image[i], c] != reqm[j, i]:
                    ok = False
                    break
            if ok:
                found = True
                break
        if not found:
            j -= 1
            if j >= 0:
                used[image[j]] = 0
            continue
        image[j] = c
        used[c] = 1
        if j == p - 1:
            emb = [0] * p
            for i in range(p):
                emb[order[i]] = image[i]
            out.append(tuple(emb))
            if len(out) >= limit:
                return out
            used[c] = 0
        else:
            j += 1
            a = image[anchor[j]]
            ptr[j] = indptr[a]
            end[j] = indptr[a + 1]
    return out


cdef object _mcs_violation(int n, const int[::1] indptr, const int[::1] indices,
                           const unsigned char[:, ::1] adj, const unsigned char[::1] alive):
    cdef int[::1] weight = np.zeros(max(n, 1), dtype=np.int32)
    cdef int[::1] visited = np.full(max(n, 1), -1, dtype=np.int32)
    cdef int count = 0, step, v, w, best, bw, parent, pt
    cdef Py_ssize_t e
    for v in range(n):
        if alive[v]:
            count += 1
    if count < 4:
        return None
    for step in range(count):
        best = -1
        bw = -1
        for v in range(n):
            if alive[v] and visited[v] < 0 and weight[v] > bw:
                bw = weight[v]
                best = v
        visited[best] = step
        for e in range(indptr[best], indptr[best + 1]):
            w = indices[e]
            if alive[w] and visited[w] < 0:
                weight[w] += 1
    for v in range(n):
        if not alive[v]:
            continue
        parent = -1
        pt = -1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if alive[w] and visited[w] < visited[v] and visited[w] > pt:
                pt = visited[w]
                parent = w
        if parent < 0:
            continue
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if w != parent and alive[w] and visited[w] < visited[v] and not adj[parent, w]:
                return (v, parent, w)
    return None


cdef object _hole_at(int v, int n, const int[::1] indptr, const int[::1] indices,
                     const unsigned char[:, ::1] adj, const unsigned char[::1] alive):
    cdef int[::1] comp = np.full(max(n, 1), -1, dtype=np.int32)
    cdef int[::1] stack = np.zeros(max(n, 1), dtype=np.int32)
    cdef int[::1] parent = np.full(max(n, 1), -2, dtype=np.int32)
    cdef int s, x, y, top, label = 0, a, b, c, head, tail
    cdef Py_ssize_t e
    for s in range(n):
        if not alive[s] or s == v or adj[v, s] or comp[s] >= 0:
            continue
        comp[s] = label
        top = 0
        stack[0] = s
        while top >= 0:
            x = stack[top]
            top -= 1
            for e in range(indptr[x], indptr[x + 1]):
                y = indices[e]
                if alive[y] and y != v and not adj[v, y] and comp[y] < 0:
                    comp[y] = label
                    top += 1
                    stack[top] = y
        label += 1
    if label == 0:
        return None
    touch = [[] for _ in range(label)]
    for e in range(indptr[v], indptr[v + 1]):
        a = indices[e]
        if not alive[a]:
            continue
        seen = set()
        for e2 in range(indptr[a], indptr[a + 1]):
            c = comp[indices[e2]]
            if c >= 0 and c not in seen:
                seen.add(c)
                touch[c].append(a)
    for c in range(label):
        cand = touch[c]
        for i in range(len(cand)):
            a = cand[i]
            for jj in range(i + 1, len(cand)):
                b = cand[jj]
                if adj[a, b]:
                    continue
                # BFS from a to b through component c
                parent[a] = -1
                stack[0] = a
                head = 0
                tail = 1
                while head < tail:
                    x = stack[head]
                    head += 1
                    for e in range(indptr[x], indptr[x + 1]):
                        y = indices[e]
                        if parent[y] != -2:
                            continue
                        if y == b:
                            parent[y] = x
                            path = [b]
                            x = b
                            while parent[x] != -1:
                                x = parent[x]
                                path.append(x)
                            path.reverse()
                            return [v] + path
                        if comp[y] != c:
                            continue
                        parent[y] = x
                        stack[tail] = y
                        tail += 1
                raise AssertionError("touching vertices must be connected through the component")
    return None


def find_hole(int n, const int[::1] indptr, const int[::1] indices,
              const unsigned char[:, ::1] adj, const unsigned char[::1] alive):
    bad = _mcs_violation(n, indptr, indices, adj, alive)
    if bad is None:
        return None
    tried = set()
    for v in [bad[0], *range(n)]:
        if v in tried or not alive[v]:
            continue
        tried.add(v)
        hole = _hole_at(v, n, indptr, indices, adj, alive)
        if hole is not None:
            return hole
    raise AssertionError("non-chordal graph without a hole")


def is_chordal(int n, const int[::1] indptr, const int[::1] indices,
               const unsigned char[:, ::1] adj, const unsigned char[::1] alive):
    return _mcs_violation(n, indptr, indices, adj, alive) is None
