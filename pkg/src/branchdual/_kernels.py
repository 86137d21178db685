"""numba kernels over bitmask-indexed edge subsets."""

import numpy as np
from numba import njit

UNREACHABLE = np.int64(1) << 40


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def rank_table(us, vs, nv):
    m = us.shape[0]
    out = np.zeros(1 << m, dtype=np.int64)
    parent = np.empty(max(nv, 1), dtype=np.int64)
    for mask in range(1, 1 << m):
        for i in range(nv):
            parent[i] = i
        r = 0
        for i in range(m):
            if (mask >> i) & 1:
                a = _find(parent, us[i])
                b = _find(parent, vs[i])
                if a != b:
                    parent[a] = b
                    r += 1
        out[mask] = r
    return out


@njit(cache=True)
def connected_table(us, vs, nv):
    m = us.shape[0]
    out = np.zeros(1 << m, dtype=np.bool_)
    out[0] = True
    parent = np.empty(max(nv, 1), dtype=np.int64)
    touched = np.zeros(max(nv, 1), dtype=np.bool_)
    for mask in range(1, 1 << m):
        for i in range(nv):
            parent[i] = i
            touched[i] = False
        comps = 0
        for i in range(m):
            if (mask >> i) & 1:
                for x in (us[i], vs[i]):
                    if not touched[x]:
                        touched[x] = True
                        comps += 1
                a = _find(parent, us[i])
                b = _find(parent, vs[i])
                if a != b:
                    parent[a] = b
                    comps -= 1
        out[mask] = comps == 1
    return out


@njit(cache=True)
def branchwidth_dp(f, valid, m):
    """Subset DP for branchwidth.

    opt[F] is the best width of a rooted subtree over F whose root edge is
    counted (so opt[F] >= f[F]).  Splits put the lowest element of F in the
    first part and are scanned in increasing mask order, so the recorded
    choice is the smallest optimal first part.  Returns (value, root_choice,
    opt, choice, explored).
    """
    n = 1 << m
    opt = np.full(n, UNREACHABLE, dtype=np.int64)
    choice = np.zeros(n, dtype=np.int64)
    explored = 0
    for F in range(1, n):
        if not valid[F]:
            continue
        explored += 1
        if F & (F - 1) == 0:
            opt[F] = f[F]
            continue
        low = F & -F
        rest = F ^ low
        fF = f[F]
        best = UNREACHABLE
        bestc = 0
        s = 0
        while s != rest:
            F1 = low | s
            F2 = F ^ F1
            a = opt[F1]
            b = opt[F2]
            v = a if a > b else b
            if v < best:
                best = v
                bestc = F1
                if best <= fF:
                    break
            s = (s - rest) & rest
        if best < UNREACHABLE:
            opt[F] = fF if fF > best else best
            choice[F] = bestc
    full = n - 1
    if m <= 1:
        return 0, 0, opt, choice, explored
    low = full & -full
    rest = full ^ low
    best = UNREACHABLE
    bestc = 0
    s = 0
    while s != rest:
        F1 = low | s
        F2 = full ^ F1
        a = opt[F1]
        b = opt[F2]
        v = a if a > b else b
        if v < best:
            best = v
            bestc = F1
        s = (s - rest) & rest
    return best, bestc, opt, choice, explored
