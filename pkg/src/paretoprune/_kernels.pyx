# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_kernels_py`` exactly; see that module for semantics.

All matrices are C-contiguous int64 arrays, so callers must check that
scaled distances fit (see ``paretoprune.kernels``).
"""

from libc.stdlib cimport malloc, free, calloc

import numpy as np
cimport numpy as cnp

ctypedef long long i64

cdef i64 INF_ = 9223372036854775807
INF = INF_
COVER = 0
DISPERSION = 1
BACKEND = "cython"


# ---------------------------------------------------------------- brute force

cdef struct Brute:
    const i64* D
    int n
    int k
    int mode
    i64* rows      # (k + 1) x n running minima for cover mode
    i64* mins      # k + 1 running pairwise minima for dispersion mode
    int* chosen
    i64 best
    int has_best
    long long leaves


cdef void _brute_rec(Brute* b, int depth, int start, list optimal):
    cdef int s, a, t
    cdef i64 value, m, dv
    cdef i64* prev
    cdef i64* cur
    cdef int n = b.n
    if depth == b.k:
        b.leaves += 1
        if b.mode == 0:
            cur = b.rows + depth * n
            value = 0
            for a in range(n):
                if cur[a] > value:
                    value = cur[a]
            if not b.has_best or value < b.best:
                b.best = value
                b.has_best = 1
                del optimal[:]
        else:
            value = b.mins[depth]
            if not b.has_best or value > b.best:
                b.best = value
                b.has_best = 1
                del optimal[:]
        if value == b.best:
            optimal.append(tuple([b.chosen[t] for t in range(b.k)]))
        return
    for s in range(start, n - (b.k - depth) + 1):
        b.chosen[depth] = s
        if b.mode == 0:
            prev = b.rows + depth * n
            cur = b.rows + (depth + 1) * n
            for a in range(n):
                dv = b.D[a * n + s]
                cur[a] = dv if dv < prev[a] else prev[a]
        else:
            m = b.mins[depth]
            for t in range(depth):
                dv = b.D[b.chosen[t] * n + s]
                if dv < m:
                    m = dv
            b.mins[depth + 1] = m
        _brute_rec(b, depth + 1, s + 1, optimal)


def brute_force(const i64[:, ::1] D, int k, int mode):
    cdef Brute b
    cdef int n = D.shape[0]
    cdef int a
    cdef list optimal = []
    b.D = &D[0, 0]
    b.n = n
    b.k = k
    b.mode = mode
    b.rows = <i64*> malloc((k + 1) * n * sizeof(i64))
    b.mins = <i64*> malloc((k + 1) * sizeof(i64))
    b.chosen = <int*> malloc((k + 1) * sizeof(int))
    b.best = 0
    b.has_best = 0
    b.leaves = 0
    try:
        for a in range(n):
            b.rows[a] = INF_
        b.mins[0] = INF_
        _brute_rec(&b, 0, 0, optimal)
    finally:
        free(b.rows)
        free(b.mins)
        free(b.chosen)
    return (b.best if b.has_best else None), optimal, b.leaves


# ---------------------------------------------------------------- set cover

cdef struct Cover:
    int n
    char* adj          # adj[a * n + s] = 1 iff s is a candidate covering a
    int* covers        # covers[s * n + i], the uncovered points s covers
    int* ncovers
    int* need          # list of points that must be covered
    int nneed
    int* count         # how many chosen centers cover each point
    char* excluded
    char* cand         # cand[s] = 1 iff s may be chosen
    int* hist          # scratch, n + 1 score histogram
    int* chosen
    int nchosen
    int* open_pts      # scratch, per depth: (r_max + 1) * n
    int* nopt          # scratch, per depth
    int* branch        # scratch, per depth
    int* score         # scratch
    char* used         # scratch
    long long nodes
    long long budget


cdef int _cover_rec(Cover* c, int r, int depth):
    cdef int n = c.n
    cdef int i, j, a, s, u, m, nopen, nb, bound, best_i, tmp, status, ok
    cdef int* open_pts = c.open_pts + depth * n
    cdef int* nopt = c.nopt + depth * n
    cdef int* branch = c.branch + depth * n
    c.nodes += 1
    if c.nodes > c.budget:
        return -1
    nopen = 0
    for i in range(c.nneed):
        a = c.need[i]
        if c.count[a] == 0:
            open_pts[nopen] = a
            nopen += 1
    if nopen == 0:
        return 1
    if r == 0:
        return 0
    for i in range(nopen):
        a = open_pts[i]
        m = 0
        for s in range(n):
            if c.adj[a * n + s] and not c.excluded[s]:
                m += 1
        nopt[i] = m
    # insertion sort open points by (option count, index)
    for i in range(1, nopen):
        a = open_pts[i]
        m = nopt[i]
        j = i - 1
        while j >= 0 and (nopt[j] > m or (nopt[j] == m and open_pts[j] > a)):
            open_pts[j + 1] = open_pts[j]
            nopt[j + 1] = nopt[j]
            j -= 1
        open_pts[j + 1] = a
        nopt[j + 1] = m
    if nopt[0] == 0:
        return 0
    for s in range(n):
        c.used[s] = 0
    bound = 0
    for i in range(nopen):
        a = open_pts[i]
        ok = 1
        for s in range(n):
            if c.adj[a * n + s] and not c.excluded[s] and c.used[s]:
                ok = 0
                break
        if ok:
            bound += 1
            if bound > r:
                return 0
            for s in range(n):
                if c.adj[a * n + s] and not c.excluded[s]:
                    c.used[s] = 1
    # r centers cover at most the r largest open-point counts
    for i in range(nopen + 1):
        c.hist[i] = 0
    for s in range(n):
        if c.cand[s] and not c.excluded[s]:
            m = 0
            for i in range(c.ncovers[s]):
                if c.count[c.covers[s * n + i]] == 0:
                    m += 1
            c.score[s] = m
            c.hist[m] += 1
    bound = 0
    j = r
    i = nopen
    while i > 0 and j > 0:
        m = c.hist[i] if c.hist[i] < j else j
        bound += m * i
        j -= m
        i -= 1
    if bound < nopen:
        return 0
    u = open_pts[0]
    nb = 0
    for s in range(n):
        if c.adj[u * n + s] and not c.excluded[s]:
            branch[nb] = s
            nb += 1
    # sort branch by (-score, index)
    for i in range(1, nb):
        s = branch[i]
        j = i - 1
        while j >= 0 and (c.score[branch[j]] < c.score[s] or (c.score[branch[j]] == c.score[s] and branch[j] > s)):
            branch[j + 1] = branch[j]
            j -= 1
        branch[j + 1] = s
    status = 0
    tmp = 0
    for i in range(nb):
        s = branch[i]
        c.chosen[c.nchosen] = s
        c.nchosen += 1
        for j in range(c.ncovers[s]):
            c.count[c.covers[s * n + j]] += 1
        status = _cover_rec(c, r - 1, depth + 1)
        for j in range(c.ncovers[s]):
            c.count[c.covers[s * n + j]] -= 1
        if status != 0:
            break
        c.nchosen -= 1
        c.excluded[s] = 1
        tmp = i + 1
    for i in range(tmp):
        c.excluded[branch[i]] = 0
    return status


def cover_decide(const i64[:, ::1] D, i64 tau, uncovered, cand, int r, long long budget):
    cdef int n = D.shape[0]
    cdef int a, s, depth_cap
    cdef Cover c
    cdef list chosen
    cdef const unsigned char[::1] unc = np.ascontiguousarray(uncovered, dtype=np.uint8)
    cdef const unsigned char[::1] cnd = np.ascontiguousarray(cand, dtype=np.uint8)
    depth_cap = (r if r < n else n) + 2
    c.n = n
    c.adj = <char*> calloc(n * n, sizeof(char))
    c.covers = <int*> malloc(n * n * sizeof(int))
    c.ncovers = <int*> calloc(n, sizeof(int))
    c.need = <int*> malloc(n * sizeof(int))
    c.count = <int*> calloc(n, sizeof(int))
    c.excluded = <char*> calloc(n, sizeof(char))
    c.cand = <char*> calloc(n, sizeof(char))
    c.hist = <int*> malloc((n + 1) * sizeof(int))
    c.chosen = <int*> malloc((n + 1) * sizeof(int))
    c.open_pts = <int*> malloc(depth_cap * n * sizeof(int))
    c.nopt = <int*> malloc(depth_cap * n * sizeof(int))
    c.branch = <int*> malloc(depth_cap * n * sizeof(int))
    c.score = <int*> malloc(n * sizeof(int))
    c.used = <char*> malloc(n * sizeof(char))
    c.nchosen = 0
    c.nneed = 0
    c.nodes = 0
    c.budget = budget
    try:
        for a in range(n):
            c.cand[a] = cnd[a]
            if unc[a]:
                c.need[c.nneed] = a
                c.nneed += 1
        for a in range(n):
            for s in range(n):
                if D[a, s] <= tau:
                    if cnd[s]:
                        c.adj[a * n + s] = 1
                    if unc[a]:
                        c.covers[s * n + c.ncovers[s]] = a
                        c.ncovers[s] += 1
        status = _cover_rec(&c, r, 0)
        chosen = sorted([c.chosen[a] for a in range(c.nchosen)]) if status == 1 else []
        return status, chosen, c.nodes
    finally:
        free(c.adj)
        free(c.covers)
        free(c.ncovers)
        free(c.need)
        free(c.count)
        free(c.excluded)
        free(c.cand)
        free(c.hist)
        free(c.chosen)
        free(c.open_pts)
        free(c.nopt)
        free(c.branch)
        free(c.score)
        free(c.used)


# ---------------------------------------------------------------- independent set

cdef struct Indep:
    int n
    char* conflict
    int* chosen
    int nchosen
    int* pool          # per depth candidate lists, n * (n + 1)
    int* members       # clique member lists scratch (n * n)
    int* qsize
    long long nodes
    long long budget


cdef int _clique_bound(Indep* g, int* cands, int m, int limit):
    cdef int n = g.n
    cdef int i, q, w, v, nq, fits, placed
    nq = 0
    for i in range(m):
        v = cands[i]
        placed = 0
        for q in range(nq):
            fits = 1
            for w in range(g.qsize[q]):
                if not g.conflict[v * n + g.members[q * n + w]]:
                    fits = 0
                    break
            if fits:
                g.members[q * n + g.qsize[q]] = v
                g.qsize[q] += 1
                placed = 1
                break
        if not placed:
            g.members[nq * n] = v
            g.qsize[nq] = 1
            nq += 1
            if nq >= limit:
                return nq
    return nq


cdef int _indep_rec(Indep* g, int* cands, int m, int r, int level):
    cdef int n = g.n
    cdef int i, v, w, m2, status
    cdef int* nxt
    g.nodes += 1
    if g.nodes > g.budget:
        return -1
    if r == 0:
        return 1
    if m < r:
        return 0
    if _clique_bound(g, cands, m, r) < r:
        return 0
    v = cands[0]
    nxt = g.pool + (level + 1) * n
    m2 = 0
    for i in range(1, m):
        w = cands[i]
        if not g.conflict[v * n + w]:
            nxt[m2] = w
            m2 += 1
    g.chosen[g.nchosen] = v
    g.nchosen += 1
    status = _indep_rec(g, nxt, m2, r - 1, level + 1)
    if status != 0:
        return status
    g.nchosen -= 1
    # exclude v: the tail of the current list is still intact
    return _indep_rec(g, cands + 1, m - 1, r, level)


def indep_decide(const i64[:, ::1] D, i64 tau, cand, int r, long long budget):
    cdef int n = D.shape[0]
    cdef int i, j, m
    cdef Indep g
    cdef const unsigned char[::1] cnd = np.ascontiguousarray(cand, dtype=np.uint8)
    g.n = n
    g.conflict = <char*> calloc(n * n, sizeof(char))
    g.chosen = <int*> malloc((n + 1) * sizeof(int))
    g.pool = <int*> malloc((n + 2) * n * sizeof(int))
    g.members = <int*> malloc(n * n * sizeof(int))
    g.qsize = <int*> malloc(n * sizeof(int))
    g.nchosen = 0
    g.nodes = 0
    g.budget = budget
    try:
        for i in range(n):
            for j in range(i + 1, n):
                if D[i, j] < tau:
                    g.conflict[i * n + j] = 1
                    g.conflict[j * n + i] = 1
        m = 0
        for i in range(n):
            if cnd[i]:
                g.pool[m] = i
                m += 1
        status = _indep_rec(&g, g.pool, m, r, 0)
        chosen = [g.chosen[i] for i in range(g.nchosen)] if status == 1 else []
        return status, chosen, g.nodes
    finally:
        free(g.conflict)
        free(g.chosen)
        free(g.pool)
        free(g.members)
        free(g.qsize)


# ---------------------------------------------------------------- 2-D dynamic programs

cdef inline i64 _pos(i64 v):
    return v if v > 0 else 0


def dp_directed(const i64[::1] xs, const i64[::1] ys, int k):
    cdef int n = xs.shape[0]
    cdef int i, j, t, l
    cdef i64 g, c1, c2, c, v, best
    cdef i64* gap = <i64*> calloc(n * n, sizeof(i64))
    cdef i64* T = <i64*> malloc(n * (k + 1) * sizeof(i64))
    try:
        for j in range(n):
            for i in range(j + 2, n):
                g = 0
                for t in range(j + 1, i):
                    c1 = _pos(xs[t] - xs[i]) + _pos(ys[t] - ys[i])
                    c2 = _pos(xs[t] - xs[j]) + _pos(ys[t] - ys[j])
                    c = c1 if c1 < c2 else c2
                    if c > g:
                        g = c
                gap[j * n + i] = g
        for i in range(n * (k + 1)):
            T[i] = INF_
        for i in range(n):
            T[i * (k + 1) + 1] = _pos(xs[0] - xs[i]) + _pos(ys[0] - ys[i])
        for l in range(2, k + 1):
            for i in range(l - 1, n):
                best = INF_
                for j in range(l - 2, i):
                    v = T[j * (k + 1) + l - 1]
                    if v == INF_:
                        continue
                    if gap[j * n + i] > v:
                        v = gap[j * n + i]
                    if v < best:
                        best = v
                T[i * (k + 1) + l] = best
        best = INF_
        for i in range(n):
            v = T[i * (k + 1) + k]
            if v == INF_:
                continue
            if xs[n - 1] - xs[i] > v:
                v = xs[n - 1] - xs[i]
            if v < best:
                best = v
        return best
    finally:
        free(gap)
        free(T)


def dp_line_cover(const i64[::1] phi, int k):
    cdef int n = phi.shape[0]
    cdef int i, j, c, l
    cdef i64 best, v, a, b, prev
    cdef i64* cost = <i64*> malloc(n * n * sizeof(i64))
    cdef i64* F = <i64*> malloc(n * (k + 1) * sizeof(i64))
    try:
        for i in range(n):
            c = i
            for j in range(i, n):
                # best center for [i, j] moves right monotonically
                while c < j:
                    a = phi[c] - phi[i]
                    b = phi[j] - phi[c]
                    v = a if a > b else b
                    a = phi[c + 1] - phi[i]
                    b = phi[j] - phi[c + 1]
                    if (a if a > b else b) <= v:
                        c += 1
                    else:
                        break
                a = phi[c] - phi[i]
                b = phi[j] - phi[c]
                cost[i * n + j] = a if a > b else b
        for i in range(n * (k + 1)):
            F[i] = INF_
        for j in range(n):
            F[j * (k + 1) + 1] = cost[j]
        for l in range(2, k + 1):
            for j in range(l - 1, n):
                best = INF_
                for i in range(l - 1, j + 1):
                    prev = F[(i - 1) * (k + 1) + l - 1]
                    if prev == INF_:
                        continue
                    v = cost[i * n + j]
                    if prev > v:
                        v = prev
                    if v < best:
                        best = v
                F[j * (k + 1) + l] = best
        return F[(n - 1) * (k + 1) + k]
    finally:
        free(cost)
        free(F)


def dp_line_dispersion(const i64[::1] phi, int k):
    cdef int n = phi.shape[0]
    cdef int i, j, l
    cdef i64 best, v
    cdef i64* G = <i64*> malloc(n * (k + 1) * sizeof(i64))
    try:
        for i in range(n * (k + 1)):
            G[i] = -1
        for j in range(n):
            G[j * (k + 1) + 1] = INF_
        for l in range(2, k + 1):
            for j in range(l - 1, n):
                best = -1
                for i in range(l - 2, j):
                    v = G[i * (k + 1) + l - 1]
                    if v < 0:
                        continue
                    if phi[j] - phi[i] < v:
                        v = phi[j] - phi[i]
                    if v > best:
                        best = v
                G[j * (k + 1) + l] = best
        best = -1
        for j in range(n):
            if G[j * (k + 1) + k] > best:
                best = G[j * (k + 1) + k]
        return best
    finally:
        free(G)
