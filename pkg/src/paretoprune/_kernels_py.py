"""Pure-Python kernels. Same signatures and results as the compiled ``_kernels``.

Matrices are square lists of Python ints (scaled so that every distance is
integral). ``D[a][s]`` is the cost of serving alternative ``a`` by slate
member ``s``; for dispersion only ``D[i][j]`` with ``i < j`` is read.

Searches return ``(status, slate, nodes)`` where status is 1 (found),
0 (proved infeasible) or -1 (node budget exhausted).
"""

INF = 2**63 - 1

COVER = 0
DISPERSION = 1

BACKEND = "python"


def brute_force(D, k, mode):
    """Enumerate every k-subset in lexicographic order.

    Returns ``(best_value, optimal_slates, leaves)`` with the optimal slates
    listed in lexicographic order.
    """
    n = len(D)
    best = None
    optimal = []
    chosen = []
    leaves = 0

    if mode == COVER:
        def rec(start, cur):
            nonlocal best, leaves
            if len(chosen) == k:
                leaves += 1
                value = max(cur)
                if best is None or value < best:
                    best = value
                    optimal.clear()
                if value == best:
                    optimal.append(tuple(chosen))
                return
            for s in range(start, n - (k - len(chosen)) + 1):
                chosen.append(s)
                rec(s + 1, [c if c <= D[a][s] else D[a][s] for a, c in enumerate(cur)])
                chosen.pop()

        rec(0, [INF] * n)
    else:
        def rec(start, cur):
            nonlocal best, leaves
            if len(chosen) == k:
                leaves += 1
                if best is None or cur > best:
                    best = cur
                    optimal.clear()
                if cur == best:
                    optimal.append(tuple(chosen))
                return
            for s in range(start, n - (k - len(chosen)) + 1):
                m = cur
                for t in chosen:
                    if D[t][s] < m:
                        m = D[t][s]
                chosen.append(s)
                rec(s + 1, m)
                chosen.pop()

        rec(0, INF)
    return best, optimal, leaves


def cover_decide(D, tau, uncovered, cand, r, budget):
    """Is there a set of at most ``r`` candidates covering every uncovered point?

    ``uncovered`` and ``cand`` are 0/1 sequences of length n. Point ``a`` is
    covered by ``s`` when ``D[a][s] <= tau``. Branches on the uncovered point
    with the fewest remaining candidates; prunes with a disjoint-candidate
    packing bound and a largest-coverage counting bound; a failed sibling's
    center is excluded from later siblings.
    """
    n = len(D)
    covby = [[s for s in range(n) if cand[s] and D[a][s] <= tau] for a in range(n)]
    covers = [[a for a in range(n) if uncovered[a] and D[a][s] <= tau] for s in range(n)]
    need = [a for a in range(n) if uncovered[a]]
    count = [0] * n
    excluded = [False] * n
    chosen = []
    nodes = 0

    def rec(r):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return -1
        open_points = [a for a in need if count[a] == 0]
        if not open_points:
            return 1
        if r == 0:
            return 0
        options = {a: [s for s in covby[a] if not excluded[s]] for a in open_points}
        order = sorted(open_points, key=lambda a: (len(options[a]), a))
        if not options[order[0]]:
            return 0
        # disjoint candidate sets each need their own center
        used = set()
        bound = 0
        for a in order:
            if used.isdisjoint(options[a]):
                bound += 1
                if bound > r:
                    return 0
                used.update(options[a])
        # r centers cover at most the r largest open-point counts
        score = {s: sum(1 for a in covers[s] if count[a] == 0) for s in range(n) if cand[s] and not excluded[s]}
        if sum(sorted(score.values(), reverse=True)[:r]) < len(open_points):
            return 0
        u = order[0]
        branch = sorted(options[u], key=lambda s: (-score[s], s))
        tried = []
        status = 0
        for s in branch:
            chosen.append(s)
            for a in covers[s]:
                count[a] += 1
            status = rec(r - 1)
            for a in covers[s]:
                count[a] -= 1
            if status != 0:
                break
            chosen.pop()
            excluded[s] = True
            tried.append(s)
        for s in tried:
            excluded[s] = False
        return status

    status = rec(r)
    return status, (sorted(chosen) if status == 1 else []), nodes


def indep_decide(D, tau, cand, r, budget):
    """Lexicographically smallest r-subset of candidates with pairwise D >= tau.

    Include-smallest-first depth-first search, so the first solution found
    is the lexicographically smallest. Pruned with a greedy clique-partition
    bound on the conflict graph (pairs closer than ``tau``).
    """
    n = len(D)

    def conflict(i, j):
        return (D[i][j] if i < j else D[j][i]) < tau

    chosen = []
    nodes = 0

    def clique_bound(cands, limit):
        cliques = []
        for v in cands:
            for q in cliques:
                if all(conflict(v, w) for w in q):
                    q.append(v)
                    break
            else:
                cliques.append([v])
                if len(cliques) >= limit:
                    return len(cliques)
        return len(cliques)

    def rec(cands, r):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return -1
        if r == 0:
            return 1
        if len(cands) < r:
            return 0
        if clique_bound(cands, r) < r:
            return 0
        v = cands[0]
        chosen.append(v)
        status = rec([w for w in cands[1:] if not conflict(v, w)], r - 1)
        if status != 0:
            return status
        chosen.pop()
        return rec(cands[1:], r)

    status = rec([i for i in range(n) if cand[i]], r)
    return status, (list(chosen) if status == 1 else []), nodes


def dp_directed(xs, ys, k):
    """Optimal directed coverage for a 2-D front sorted by ascending ``xs``.

    ``T[i][l]`` is the best value for the first ``i + 1`` points using ``l``
    members with point ``i`` selected; ``gap[j][i]`` is the cost of the points
    strictly between two consecutive members ``j < i``.
    """
    n = len(xs)

    def dist(t, s):
        return max(xs[t] - xs[s], 0) + max(ys[t] - ys[s], 0)

    gap = [[0] * n for _ in range(n)]
    for j in range(n):
        for i in range(j + 2, n):
            g = 0
            for t in range(j + 1, i):
                c = min(dist(t, i), dist(t, j))
                if c > g:
                    g = c
            gap[j][i] = g
    T = [[INF] * (k + 1) for _ in range(n)]
    for i in range(n):
        T[i][1] = dist(0, i)
    for l in range(2, k + 1):
        for i in range(l - 1, n):
            best = INF
            for j in range(l - 2, i):
                if T[j][l - 1] == INF:
                    continue
                v = max(T[j][l - 1], gap[j][i])
                if v < best:
                    best = v
            T[i][l] = best
    best = INF
    for i in range(n):
        if T[i][k] == INF:
            continue
        v = max(T[i][k], xs[n - 1] - xs[i])
        if v < best:
            best = v
    return best


def dp_line_cover(phi, k):
    """Discrete k-center on sorted line positions ``phi``."""
    n = len(phi)
    cost = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            cost[i][j] = min(max(phi[c] - phi[i], phi[j] - phi[c]) for c in range(i, j + 1))
    F = [[INF] * (k + 1) for _ in range(n)]
    for j in range(n):
        F[j][1] = cost[0][j]
    for l in range(2, k + 1):
        for j in range(l - 1, n):
            best = INF
            for i in range(l - 1, j + 1):
                prev = F[i - 1][l - 1]
                if prev == INF:
                    continue
                v = max(prev, cost[i][j])
                if v < best:
                    best = v
            F[j][l] = best
    return F[n - 1][k]


def dp_line_dispersion(phi, k):
    """Discrete p-dispersion (max-min spacing) on sorted line positions ``phi``."""
    n = len(phi)
    G = [[-1] * (k + 1) for _ in range(n)]
    for j in range(n):
        G[j][1] = INF
    for l in range(2, k + 1):
        for j in range(l - 1, n):
            best = -1
            for i in range(l - 2, j):
                if G[i][l - 1] < 0:
                    continue
                v = min(G[i][l - 1], phi[j] - phi[i])
                if v > best:
                    best = v
            G[j][l] = best
    return max(G[j][k] for j in range(n))
