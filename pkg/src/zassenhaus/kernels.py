"""Hot integer kernels: group-table scans and lattice-point search.

Every function here is compiled by numba unless ``ZASSENHAUS_NUMBA=0``.  They
take and return only numpy int64/bool arrays and scalars.

Constraint rows used by the search kernels are integer-scaled: row ``r`` reads
``sum(A[r] * x) + c[r]`` and ``kind[r]`` selects the relation

* ``0``: equal to zero,
* ``1``: at least zero,
* ``2``: divisible by ``mod[r]``.

Unbounded interval ends are stored as ``+-INF``.
"""
from __future__ import annotations

import numpy as np

from ._accel import kernel

INF = 1 << 50
EQ, GE, INT = 0, 1, 2


# --------------------------------------------------------------------------
# group tables

@kernel
def element_orders(mul):
    n = mul.shape[0]
    out = np.empty(n, np.int64)
    for g in range(n):
        x = g
        k = 1
        while x != 0:
            x = mul[x, g]
            k += 1
            if k > n + 1:
                return out[:0]
        out[g] = k
    return out


@kernel
def conjugacy_labels(mul, inv):
    """Label every element by the least index of its conjugacy class."""
    n = mul.shape[0]
    label = np.full(n, -1, np.int64)
    for g in range(n):
        if label[g] >= 0:
            continue
        for x in range(n):
            label[mul[mul[x, g], inv[x]]] = g
    return label


@kernel
def closure_mask(mul, seeds):
    """Membership mask of the subgroup generated by the indices in ``seeds``."""
    n = mul.shape[0]
    mask = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int64)
    mask[0] = True
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        a = queue[head]
        head += 1
        for s in seeds:
            b = mul[a, s]
            if not mask[b]:
                mask[b] = True
                queue[tail] = b
                tail += 1
    return mask


@kernel
def first_nonassociative(mul):
    """Return a violating triple ``(a, b, c)`` or ``(-1, -1, -1)``."""
    n = mul.shape[0]
    for a in range(n):
        for b in range(n):
            ab = mul[a, b]
            for c in range(n):
                if mul[ab, c] != mul[a, mul[b, c]]:
                    return a, b, c
    return -1, -1, -1


# --------------------------------------------------------------------------
# bounds propagation and enumeration

@kernel
def propagate(A, c, kind, lo, hi, max_rounds):
    """Tighten ``lo``/``hi`` in place; return False when the box is empty."""
    nr = A.shape[0]
    nv = A.shape[1]
    for i in range(nv):
        if lo[i] > hi[i]:
            return False
    for _ in range(max_rounds):
        changed = False
        for r in range(nr):
            if kind[r] == INT:
                continue
            for side in range(2):
                if side == 1 and kind[r] == GE:
                    continue
                sgn = 1 if side == 0 else -1
                maxsum = 0
                ninf = 0
                infvar = -1
                for i in range(nv):
                    a = sgn * A[r, i]
                    if a > 0:
                        if hi[i] >= INF:
                            ninf += 1
                            infvar = i
                        else:
                            maxsum += a * hi[i]
                    elif a < 0:
                        if lo[i] <= -INF:
                            ninf += 1
                            infvar = i
                        else:
                            maxsum += a * lo[i]
                cc = sgn * c[r]
                if ninf == 0 and maxsum + cc < 0:
                    return False
                if ninf >= 2:
                    continue
                for i in range(nv):
                    a = sgn * A[r, i]
                    if a == 0:
                        continue
                    if ninf == 1:
                        if i != infvar:
                            continue
                        rest = maxsum
                    elif a > 0:
                        rest = maxsum - a * hi[i]
                    else:
                        rest = maxsum - a * lo[i]
                    bound = -cc - rest
                    if a > 0:
                        nb = -((-bound) // a)
                        if nb > lo[i] and nb < INF:
                            lo[i] = nb
                            changed = True
                    else:
                        nb = bound // a
                        if nb < hi[i] and nb > -INF:
                            hi[i] = nb
                            changed = True
                    if lo[i] > hi[i]:
                        return False
        if not changed:
            break
    return True


@kernel
def point_ok(A, c, kind, mod, x):
    nr = A.shape[0]
    nv = A.shape[1]
    for r in range(nr):
        v = c[r]
        for i in range(nv):
            v += A[r, i] * x[i]
        k = kind[r]
        if k == EQ:
            if v != 0:
                return False
        elif k == GE:
            if v < 0:
                return False
        elif v % mod[r] != 0:
            return False
    return True


@kernel
def enumerate_bnb(A, c, kind, mod, lo0, hi0, max_nodes, rounds, out):
    """Depth-first search in variable order with propagation at every node.

    Returns ``(count, nodes, status)``; status 1 means the node budget ran out.
    Solutions beyond ``out.shape[0]`` are counted but not stored.
    """
    nv = lo0.shape[0]
    count = 0
    nodes = 0
    LO = np.empty((nv + 1, nv), np.int64)
    HI = np.empty((nv + 1, nv), np.int64)
    LO[0, :] = lo0
    HI[0, :] = hi0
    if not propagate(A, c, kind, LO[0], HI[0], rounds):
        return 0, nodes, 0
    if nv == 0:
        if point_ok(A, c, kind, mod, LO[0]):
            return 1, 1, 0
        return 0, 1, 0
    nxt = np.empty(nv, np.int64)
    depth = 0
    nxt[0] = LO[0, 0]
    while depth >= 0:
        if nxt[depth] > HI[depth, depth]:
            depth -= 1
            if depth >= 0:
                nxt[depth] += 1
            continue
        nodes += 1
        if nodes > max_nodes:
            return count, nodes, 1
        LO[depth + 1, :] = LO[depth, :]
        HI[depth + 1, :] = HI[depth, :]
        LO[depth + 1, depth] = nxt[depth]
        HI[depth + 1, depth] = nxt[depth]
        ok = propagate(A, c, kind, LO[depth + 1], HI[depth + 1], rounds)
        if ok and depth + 1 == nv:
            if point_ok(A, c, kind, mod, LO[nv]):
                if count < out.shape[0]:
                    out[count, :] = LO[nv]
                count += 1
            nxt[depth] += 1
        elif ok:
            depth += 1
            nxt[depth] = LO[depth, depth]
        else:
            nxt[depth] += 1
    return count, nodes, 0


@kernel
def enumerate_naive(A, c, kind, mod, lo, hi, out):
    """Scan every lattice point of the box; returns ``(count, points)``."""
    nv = lo.shape[0]
    count = 0
    points = 0
    for i in range(nv):
        if lo[i] > hi[i]:
            return 0, 0
    x = lo.copy()
    while True:
        points += 1
        if point_ok(A, c, kind, mod, x):
            if count < out.shape[0]:
                out[count, :] = x
            count += 1
        i = nv - 1
        while i >= 0:
            if x[i] < hi[i]:
                x[i] += 1
                break
            x[i] = lo[i]
            i -= 1
        if i < 0:
            break
    return count, points
