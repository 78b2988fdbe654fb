"""Hot Monte Carlo kernels.

Every function here is written against the numba-supported numpy subset
and compiled when the numba backend is active (see `backend`).  Under
CSRALOHA_BACKEND=numpy the very same functions run uncompiled, with the
inner products still vectorised, so both paths share one source of truth.

Convention: sensing matrices are passed transposed (`At`, shape (n, r))
so that user signatures are contiguous rows.
"""

import numpy as np

from .backend import jit


def greedy_ls(At, y, s_max, tol):
    """Residual-driven greedy support search with least-squares re-fit.

    Picks the column most correlated with the residual (ties -> lowest
    index), orthogonalises via modified Gram-Schmidt, and stops when the
    residual 2-norm drops to `tol` or `s_max` columns are used.

    Returns (support, coefficients, residual_norm, exact_flag); support
    is in selection order, coefficients solve the LS problem on it.
    """
    n, r = At.shape
    res = y.copy()
    q_basis = np.empty((s_max, r))
    r_fact = np.zeros((s_max, s_max))
    sup = np.empty(s_max, np.int64)
    k = 0
    resid = np.sqrt(res @ res)
    while k < s_max and resid > tol:
        corr = np.abs(At @ res)
        for m in range(k):
            corr[sup[m]] = -1.0
        j = int(np.argmax(corr))
        if corr[j] <= 0.0:
            break
        w = At[j].copy()
        col_norm = np.sqrt(w @ w)
        for i in range(k):
            rij = q_basis[i] @ w
            w = w - rij * q_basis[i]
            r_fact[i, k] = rij
        nw = np.sqrt(w @ w)
        if nw <= 1e-10 * col_norm:
            break  # linearly dependent column: support cannot grow
        r_fact[k, k] = nw
        q_basis[k] = w / nw
        proj = q_basis[k] @ res
        res = res - proj * q_basis[k]
        sup[k] = j
        k += 1
        resid = np.sqrt(res @ res)
    coef = np.zeros(k)
    qty = np.empty(k)
    for i in range(k):
        qty[i] = q_basis[i] @ y
    for i in range(k - 1, -1, -1):
        acc = qty[i]
        for m in range(i + 1, k):
            acc -= r_fact[i, m] * coef[m]
        coef[i] = acc / r_fact[i, i]
    return sup[:k].copy(), coef, resid, resid <= tol


def ls_on_support(At, y, sup):
    """Least squares of y on the given columns (QR via MGS).

    Returns (coefficients, residual_norm, full_rank_flag).
    """
    k = sup.shape[0]
    r = At.shape[1]
    q_basis = np.empty((k, r))
    r_fact = np.zeros((k, k))
    for idx in range(k):
        w = At[sup[idx]].copy()
        col_norm = np.sqrt(w @ w)
        for i in range(idx):
            rij = q_basis[i] @ w
            w = w - rij * q_basis[i]
            r_fact[i, idx] = rij
        nw = np.sqrt(w @ w)
        if nw <= 1e-10 * col_norm:
            return np.zeros(k), -1.0, False
        r_fact[idx, idx] = nw
        q_basis[idx] = w / nw
    coef = np.zeros(k)
    qty = np.empty(k)
    res = y.copy()
    for i in range(k):
        qty[i] = q_basis[i] @ y
        res = res - qty[i] * q_basis[i]
    for i in range(k - 1, -1, -1):
        acc = qty[i]
        for m in range(i + 1, k):
            acc -= r_fact[i, m] * coef[m]
        coef[i] = acc / r_fact[i, i]
    return coef, np.sqrt(res @ res), True


def maxcorr_support(At, y, s):
    """Indices of the s columns maximising |a_j . y|, ties -> lowest index.

    Result is sorted ascending.
    """
    corr = np.abs(At @ y)
    sup = np.empty(s, np.int64)
    for m in range(s):
        j = int(np.argmax(corr))
        sup[m] = j
        corr[j] = -np.inf
    return np.sort(sup)


def analog_batch(gains, At, zeta, use_greedy, s_pick, s_max, rel_tol, abs_floor, ideal):
    """One analog reservation round per row of `gains`.

    Returns (rates, event_a, event_b).  A frame earns a nonzero rate only
    when contention is non-empty and the decoder reproduces the true
    support exactly; the rate is then log2(1 + max contender gain).
    """
    frames, n = gains.shape
    rates = np.zeros(frames)
    event_a = np.zeros(frames, np.uint8)
    event_b = np.zeros(frames, np.uint8)
    r = At.shape[1]
    for f in range(frames):
        h = gains[f]
        true_sup = np.empty(n, np.int64)
        kk = 0
        hmax = 0.0
        for i in range(n):
            if h[i] >= zeta:
                true_sup[kk] = i
                kk += 1
                if h[i] > hmax:
                    hmax = h[i]
        if kk > 0:
            event_b[f] = 1
        if ideal:
            event_a[f] = 1
            if kk > 0:
                rates[f] = np.log2(1.0 + hmax)
            continue
        y = np.zeros(r)
        for m in range(kk):
            y = y + h[true_sup[m]] * At[true_sup[m]]
        ynorm = np.sqrt(y @ y)
        tol = rel_tol * ynorm
        if tol < abs_floor:
            tol = abs_floor
        if use_greedy:
            sup, coef, _, _ = greedy_ls(At, y, s_max, tol)
        else:
            sup = maxcorr_support(At, y, s_pick)
            coef, _, ok = ls_on_support(At, y, sup)
            if not ok:
                continue
        # prune numerically-zero coefficients (weak-user columns)
        cmax = 0.0
        for m in range(coef.shape[0]):
            if abs(coef[m]) > cmax:
                cmax = abs(coef[m])
        prune = 1e-8 * cmax
        nkeep = 0
        for m in range(coef.shape[0]):
            if abs(coef[m]) > prune:
                nkeep += 1
        if nkeep != kk:
            continue
        ok_set = True
        for m in range(coef.shape[0]):
            if abs(coef[m]) <= prune:
                continue
            found = False
            for t in range(kk):
                if true_sup[t] == sup[m]:
                    found = True
                    break
            if not found:
                ok_set = False
                break
        if ok_set:
            event_a[f] = 1
            if kk > 0:
                rates[f] = np.log2(1.0 + hmax)
    return rates, event_a, event_b


def digital_batch(gains, At, levels, s_max, rel_tol, abs_floor, u_sel, ideal):
    """One digital reservation round per row of `gains`.

    `levels` are the ascending thresholds; the top interval is
    [levels[-1], inf).  Returns (rates, event_a, event_b, chosen) where
    chosen is the picked interval index or -1.  The rate is credited only
    when the randomly selected detected user truly lies in the chosen
    interval (event A).
    """
    frames, n = gains.shape
    k = levels.shape[0]
    r = At.shape[1]
    rates = np.zeros(frames)
    event_a = np.zeros(frames, np.uint8)
    event_b = np.zeros(frames, np.uint8)
    chosen = np.full(frames, -1, np.int64)
    occ = np.empty(n, np.int64)
    for f in range(frames):
        h = gains[f]
        for i in range(n):
            if h[i] >= levels[0]:
                event_b[f] = 1
                break
        for j in range(k - 1, -1, -1):
            lo = levels[j]
            hi = levels[j + 1] if j < k - 1 else np.inf
            nocc = 0
            for i in range(n):
                if lo <= h[i] < hi:
                    occ[nocc] = i
                    nocc += 1
            if nocc == 0:
                continue  # unoccupied: y = 0, never detected
            if ideal:
                det = occ[:nocc].copy()
            else:
                y = np.zeros(r)
                for m in range(nocc):
                    y = y + At[occ[m]]
                ynorm = np.sqrt(y @ y)
                tol = rel_tol * ynorm
                if tol < abs_floor:
                    tol = abs_floor
                sup, coef, _, _ = greedy_ls(At, y, s_max, tol)
                cmax = 0.0
                for m in range(coef.shape[0]):
                    if abs(coef[m]) > cmax:
                        cmax = abs(coef[m])
                ndet = 0
                for m in range(coef.shape[0]):
                    if abs(coef[m]) > 1e-8 * cmax:
                        ndet += 1
                det = np.empty(ndet, np.int64)
                ndet = 0
                for m in range(coef.shape[0]):
                    if abs(coef[m]) > 1e-8 * cmax:
                        det[ndet] = sup[m]
                        ndet += 1
                if ndet == 0:
                    continue  # interval missed entirely
            pick = int(u_sel[f] * det.shape[0])
            if pick >= det.shape[0]:
                pick = det.shape[0] - 1
            sel = det[pick]
            chosen[f] = j
            if lo <= h[sel] < hi:
                event_a[f] = 1
                rates[f] = np.log2(1.0 + lo)
            break
    return rates, event_a, event_b, chosen


def splitting_batch(gains, budget):
    """Qin-Berry style interval splitting, one trial per row of `gains`.

    Policy: start with (lo, inf), lo = -log(1/n); on collision split at
    the CCDF midpoint keeping the upper half and reserving the lower; on
    idle with a reserved half pending, split that half directly (it is
    known to hold all colliders, so transmitting it whole would collide
    for sure); on idle with nothing pending widen lo to double the
    contention probability.  Feedback is error-free; a trial resolves
    when exactly one user transmits.

    Returns (beta, resolved, selected).
    """
    frames, n = gains.shape
    beta = np.zeros(frames, np.int64)
    resolved = np.zeros(frames, np.uint8)
    selected = np.full(frames, -1, np.int64)
    for f in range(frames):
        h = gains[f]
        lo = np.log(n)
        hi = np.inf
        pend_lo = 0.0
        pend_hi = 0.0
        have_pending = False
        for slot in range(1, budget + 1):
            cnt = 0
            who = -1
            for i in range(n):
                if h[i] > lo and h[i] <= hi:
                    cnt += 1
                    who = i
            if cnt == 1:
                beta[f] = slot
                resolved[f] = 1
                selected[f] = who
                break
            if cnt >= 2:
                ccdf_hi = 0.0 if hi == np.inf else np.exp(-hi)
                mid = -np.log(0.5 * (np.exp(-lo) + ccdf_hi))
                pend_lo = lo
                pend_hi = mid
                have_pending = True
                lo = mid
            else:
                if have_pending:
                    mid = -np.log(0.5 * (np.exp(-pend_lo) + np.exp(-pend_hi)))
                    lo = mid
                    hi = pend_hi
                    pend_hi = mid  # lower quarter stays reserved
                else:
                    u = 2.0 * np.exp(-lo)
                    lo = 0.0 if u >= 1.0 else -np.log(u)
        if resolved[f] == 0:
            beta[f] = budget
    return beta, resolved, selected


greedy_ls = jit(greedy_ls)
ls_on_support = jit(ls_on_support)
maxcorr_support = jit(maxcorr_support)
analog_batch = jit(analog_batch)
digital_batch = jit(digital_batch)
splitting_batch = jit(splitting_batch)
