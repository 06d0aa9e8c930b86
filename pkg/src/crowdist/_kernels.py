"""Compiled inner loops for the two generation-update schemes.

Everything here mirrors the public operators exactly (same draw order on the
same random stream, same stable tie-breaks), restated as scalar loops so
numba can compile them. The pure-Python composition of the public operators
is kept under test as a reference for these kernels.

The steady-state kernel maintains non-domination levels incrementally:
inserting one child can only push solutions downward one level at a time (a
cascade starting at the child's own level), and removing a member of the
last level never changes any other level. That turns the per-step cost from
a full O(N^2 M) re-sort into a few dominance scans plus one crowding update.
"""

from __future__ import annotations

import numpy as np
from numba import njit

PROB_LINEFRONT = 0
PROB_DTLZ1 = 1
PROB_DTLZ2 = 2

REMOVAL_WORST_CD = 0
REMOVAL_BEST_CONTRIBUTION = 1

INF = np.inf


@njit(cache=True)
def _evaluate_into(problem_id, x, f):
    n = x.shape[0]
    m = f.shape[0]
    if problem_id == PROB_LINEFRONT:
        f[0] = x[0]
        f[1] = 1.0 - x[0]
        return
    if problem_id == PROB_DTLZ1:
        g = 0.0
        for v in range(m - 1, n):
            d = x[v] - 0.5
            g += d * d - np.cos(20.0 * np.pi * d)
        g = 100.0 * ((n - m + 1) + g)
        for i in range(m):
            val = 0.5 * (1.0 + g)
            for j in range(m - 1 - i):
                val *= x[j]
            if i > 0:
                val *= 1.0 - x[m - 1 - i]
            f[i] = val
        return
    g = 0.0
    for v in range(m - 1, n):
        d = x[v] - 0.5
        g += d * d
    for i in range(m):
        val = 1.0 + g
        for j in range(m - 1 - i):
            val *= np.cos(x[j] * 0.5 * np.pi)
        if i > 0:
            val *= np.sin(x[m - 1 - i] * 0.5 * np.pi)
        f[i] = val


@njit(cache=True)
def _dominates(F, i, j):
    le = True
    lt = False
    for k in range(F.shape[1]):
        if F[i, k] > F[j, k]:
            le = False
            break
        if F[i, k] < F[j, k]:
            lt = True
    return le and lt


@njit(cache=True)
def _rank_all(F, n_live, rank):
    """Full non-dominated sort of rows 0..n_live-1, writing 0-based levels."""
    count = np.zeros(n_live, dtype=np.int64)
    dominated = np.empty((n_live, n_live), dtype=np.int32)
    dom_len = np.zeros(n_live, dtype=np.int64)
    for p in range(n_live):
        for q in range(p + 1, n_live):
            if _dominates(F, p, q):
                dominated[p, dom_len[p]] = q
                dom_len[p] += 1
                count[q] += 1
            elif _dominates(F, q, p):
                dominated[q, dom_len[q]] = p
                dom_len[q] += 1
                count[p] += 1
    current = np.empty(n_live, dtype=np.int64)
    nxt = np.empty(n_live, dtype=np.int64)
    c_len = 0
    for i in range(n_live):
        if count[i] == 0:
            current[c_len] = i
            c_len += 1
    level = 0
    while c_len > 0:
        n_len = 0
        for t in range(c_len):
            i = current[t]
            rank[i] = level
            for s in range(dom_len[i]):
                q = dominated[i, s]
                count[q] -= 1
                if count[q] == 0:
                    nxt[n_len] = q
                    n_len += 1
        tmp = current
        current = nxt
        nxt = tmp
        c_len = n_len
        level += 1


@njit(cache=True)
def _crowding_local(F, members, normalized, out):
    """Crowding of one front, written per member position.

    Members must be listed in ascending row order; the stable per-axis sorts
    then break value ties by that order.
    """
    s = members.shape[0]
    m = F.shape[1]
    if s <= 2:
        for t in range(s):
            out[t] = INF
        return
    for t in range(s):
        out[t] = 0.0
    vals = np.empty(s)
    for k in range(m):
        for t in range(s):
            vals[t] = F[members[t], k]
        order = np.argsort(vals, kind="mergesort")
        axis_range = vals[order[s - 1]] - vals[order[0]]
        if axis_range <= 0.0:
            # Degenerate axis: contributes neither boundaries nor spans.
            continue
        out[order[0]] = INF
        out[order[s - 1]] = INF
        for j in range(1, s - 1):
            p = order[j]
            if out[p] != INF:
                span = vals[order[j + 1]] - vals[order[j - 1]]
                if normalized:
                    span = span / axis_range
                out[p] += span


@njit(cache=True)
def _refresh_crowding(F, rank, n_live, lo_level, normalized, cd):
    """Recompute crowding for every front with level >= lo_level."""
    rmax = 0
    for i in range(n_live):
        if rank[i] > rmax:
            rmax = rank[i]
    members = np.empty(n_live, dtype=np.int64)
    local = np.empty(n_live)
    for level in range(lo_level, rmax + 1):
        s = 0
        for i in range(n_live):
            if rank[i] == level:
                members[s] = i
                s += 1
        if s > 0:
            _crowding_local(F, members[:s], normalized, local[:s])
            for t in range(s):
                cd[members[t]] = local[t]


@njit(cache=True)
def _tournament(rank, cd, mu, rng):
    i = rng.integers(0, mu)
    j = rng.integers(0, mu)
    if rank[j] < rank[i]:
        return j
    if rank[i] == rank[j] and cd[j] > cd[i]:
        return j
    return i


@njit(cache=True)
def _sbx_var(x1, x2, sbx_eta, rng):
    u = rng.random()
    if u <= 0.5:
        beta = (2.0 * u) ** (1.0 / (sbx_eta + 1.0))
    else:
        beta = (2.0 * (1.0 - u)) ** (-1.0 / (sbx_eta + 1.0))
    mean = 0.5 * (x1 + x2)
    diff = 0.5 * (x2 - x1)
    return mean - beta * diff, mean + beta * diff


@njit(cache=True)
def _clip_row(X, row):
    for v in range(X.shape[1]):
        if X[row, v] < 0.0:
            X[row, v] = 0.0
        elif X[row, v] > 1.0:
            X[row, v] = 1.0


@njit(cache=True)
def _sbx_pair_into(X, p1, p2, c1_row, c2_row, sbx_eta, sbx_prob, rng):
    for v in range(X.shape[1]):
        X[c1_row, v] = X[p1, v]
        X[c2_row, v] = X[p2, v]
    if rng.random() < sbx_prob:
        for v in range(X.shape[1]):
            if rng.random() <= 0.5:
                a, b = _sbx_var(X[p1, v], X[p2, v], sbx_eta, rng)
                X[c1_row, v] = a
                X[c2_row, v] = b
    _clip_row(X, c1_row)
    _clip_row(X, c2_row)


@njit(cache=True)
def _sbx_pair_keep_first(X, p1, p2, keep_row, sbx_eta, sbx_prob, rng):
    """SBX keeping only the first child, with the full pair's draw pattern."""
    for v in range(X.shape[1]):
        X[keep_row, v] = X[p1, v]
    if rng.random() < sbx_prob:
        for v in range(X.shape[1]):
            if rng.random() <= 0.5:
                a, _ = _sbx_var(X[p1, v], X[p2, v], sbx_eta, rng)
                X[keep_row, v] = a
    _clip_row(X, keep_row)


@njit(cache=True)
def _mutate_row(X, row, mut_eta, mut_prob, rng):
    for v in range(X.shape[1]):
        if rng.random() < mut_prob:
            u = rng.random()
            x01 = X[row, v]
            if u < 0.5:
                val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - x01) ** (mut_eta + 1.0)
                delta = val ** (1.0 / (mut_eta + 1.0)) - 1.0
            else:
                val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * x01 ** (mut_eta + 1.0)
                delta = 1.0 - val ** (1.0 / (mut_eta + 1.0))
            x01 = x01 + delta
            if x01 < 0.0:
                x01 = 0.0
            elif x01 > 1.0:
                x01 = 1.0
            X[row, v] = x01


@njit(cache=True)
def _consume_mutation_draws(n_var, mut_prob, rng):
    """Draw pattern of one mutation call, with the result discarded."""
    for _ in range(n_var):
        if rng.random() < mut_prob:
            rng.random()


@njit(cache=True)
def _insertion_level(F, rank, mu, child_row):
    level = 0
    while True:
        found = False
        for i in range(mu):
            if rank[i] == level and _dominates(F, i, child_row):
                found = True
                break
        if not found:
            return level
        level += 1


@njit(cache=True)
def _cascade_moves(F, rank, mu, child_row, level, movers, nxt):
    """Push down solutions displaced by the child; levels stay consistent."""
    m_len = 0
    for i in range(mu):
        if rank[i] == level and _dominates(F, child_row, i):
            movers[m_len] = i
            m_len += 1
    lvl = level
    while m_len > 0:
        lvl += 1
        n_len = 0
        for i in range(mu):
            if rank[i] == lvl:
                for t in range(m_len):
                    if _dominates(F, movers[t], i):
                        nxt[n_len] = i
                        n_len += 1
                        break
        for t in range(m_len):
            rank[movers[t]] = lvl
        tmp = movers
        movers = nxt
        nxt = tmp
        m_len = n_len


@njit(cache=True)
def _critical_members(rank, n_live, members):
    rmax = 0
    for i in range(n_live):
        if rank[i] > rmax:
            rmax = rank[i]
    s = 0
    for i in range(n_live):
        if rank[i] == rmax:
            members[s] = i
            s += 1
    return s


@njit(cache=True)
def _min_finite(arr, s):
    best = INF
    for t in range(s):
        v = arr[t]
        if v != INF and v < best:
            best = v
    return best


@njit(cache=True)
def _pick_removal(F, members, s, removal_id, normalized, local):
    """Position (within members) of the solution to remove from one front.

    Worst-cd: minimum crowding distance computed once on the whole front,
    ties to the first position. Best-contribution: recompute the front
    without each candidate and keep the removal maximizing the remaining
    minimum finite distance.
    """
    if removal_id == REMOVAL_WORST_CD:
        _crowding_local(F, members[:s], normalized, local[:s])
        best = 0
        for t in range(1, s):
            if local[t] < local[best]:
                best = t
        return best
    rest = np.empty(s - 1, dtype=np.int64)
    cd_rest = np.empty(s - 1)
    best_pos = 0
    best_val = -INF
    for j in range(s):
        r = 0
        for t in range(s):
            if t != j:
                rest[r] = members[t]
                r += 1
        _crowding_local(F, rest, normalized, cd_rest)
        val = _min_finite(cd_rest, s - 1)
        if val > best_val:
            best_val = val
            best_pos = j
    return best_pos


@njit(cache=True)
def steady_state_chunk(X, F, rank, cd, n_steps, problem_id, sbx_eta, sbx_prob,
                       mut_eta, mut_prob, removal_id, normalized, rng):
    """Run n_steps of the (mu + 1) scheme in place.

    X and F have mu + 1 rows; rows 0..mu-1 are the live population (with
    valid rank and cd) and row mu is scratch for the child. On return the
    live rows again hold a consistent population of size mu.
    """
    mu = X.shape[0] - 1
    movers = np.empty(mu + 1, dtype=np.int64)
    nxt = np.empty(mu + 1, dtype=np.int64)
    members = np.empty(mu + 1, dtype=np.int64)
    local = np.empty(mu + 1)
    for _ in range(n_steps):
        p1 = _tournament(rank, cd, mu, rng)
        p2 = _tournament(rank, cd, mu, rng)
        _sbx_pair_keep_first(X, p1, p2, mu, sbx_eta, sbx_prob, rng)
        _mutate_row(X, mu, mut_eta, mut_prob, rng)
        _evaluate_into(problem_id, X[mu], F[mu])

        level = _insertion_level(F, rank, mu, mu)
        _cascade_moves(F, rank, mu, mu, level, movers, nxt)
        rank[mu] = level

        s = _critical_members(rank, mu + 1, members)
        pos = _pick_removal(F, members, s, removal_id, normalized, local)
        removed = members[pos]
        if removed != mu:
            for v in range(X.shape[1]):
                X[removed, v] = X[mu, v]
            for k in range(F.shape[1]):
                F[removed, k] = F[mu, k]
            rank[removed] = rank[mu]
        _refresh_crowding(F, rank, mu, level, normalized, cd)
    return n_steps


@njit(cache=True)
def generational_chunk(X, F, rank, cd, n_gens, problem_id, sbx_eta, sbx_prob,
                       mut_eta, mut_prob, normalized, rng):
    """Run n_gens of the (mu + mu) scheme in place.

    X and F have 2 * mu rows; rows 0..mu-1 are the live population and rows
    mu..2mu-1 are offspring scratch. Survivor selection fills whole fronts,
    then truncates the critical front by descending crowding distance
    computed once (ties keep the lower merged index).
    """
    two_mu = X.shape[0]
    mu = two_mu // 2
    n = X.shape[1]
    m = F.shape[1]
    keep = np.empty(mu, dtype=np.int64)
    order_buf = np.empty(two_mu, dtype=np.int64)
    Xs = np.empty((mu, n))
    Fs = np.empty((mu, m))
    merged_rank = np.empty(two_mu, dtype=np.int64)
    merged_cd = np.empty(two_mu)
    members = np.empty(two_mu, dtype=np.int64)
    for _ in range(n_gens):
        made = 0
        while made < mu:
            p1 = _tournament(rank, cd, mu, rng)
            p2 = _tournament(rank, cd, mu, rng)
            c1 = mu + made
            if made + 1 < mu:
                _sbx_pair_into(X, p1, p2, c1, c1 + 1, sbx_eta, sbx_prob, rng)
                _mutate_row(X, c1, mut_eta, mut_prob, rng)
                _mutate_row(X, c1 + 1, mut_eta, mut_prob, rng)
                made += 2
            else:
                # Odd mu: the pair's second child is generated (consuming
                # the same draws) and discarded.
                _sbx_pair_keep_first(X, p1, p2, c1, sbx_eta, sbx_prob, rng)
                _mutate_row(X, c1, mut_eta, mut_prob, rng)
                _consume_mutation_draws(n, mut_prob, rng)
                made += 1
        for row in range(mu, two_mu):
            _evaluate_into(problem_id, X[row], F[row])

        _rank_all(F, two_mu, merged_rank)
        n_keep = 0
        level = 0
        while n_keep < mu:
            s = 0
            for i in range(two_mu):
                if merged_rank[i] == level:
                    members[s] = i
                    s += 1
            if n_keep + s <= mu:
                for t in range(s):
                    keep[n_keep] = members[t]
                    n_keep += 1
                level += 1
                continue
            # Critical front: order by descending crowding distance computed
            # once; stable, so equal distances keep ascending merged index.
            _crowding_local(F, members[:s], normalized, merged_cd[:s])
            for t in range(s):
                order_buf[t] = t
            _stable_sort_desc(merged_cd, order_buf, s)
            need = mu - n_keep
            chosen = np.empty(need, dtype=np.int64)
            for t in range(need):
                chosen[t] = members[order_buf[t]]
            chosen.sort()
            for t in range(need):
                keep[n_keep] = chosen[t]
                n_keep += 1
        for t in range(mu):
            src = keep[t]
            for v in range(n):
                Xs[t, v] = X[src, v]
            for k in range(m):
                Fs[t, k] = F[src, k]
        for t in range(mu):
            for v in range(n):
                X[t, v] = Xs[t, v]
            for k in range(m):
                F[t, k] = Fs[t, k]
        _rank_all(F, mu, rank)
        _refresh_crowding(F, rank, mu, 0, normalized, cd)
    return n_gens


@njit(cache=True)
def _stable_sort_desc(values, idx, s):
    """Insertion sort of idx[0..s-1] by descending values[idx], stable."""
    for a in range(1, s):
        cur = idx[a]
        cur_val = values[cur]
        b = a - 1
        while b >= 0 and values[idx[b]] < cur_val:
            idx[b + 1] = idx[b]
            b -= 1
        idx[b + 1] = cur
