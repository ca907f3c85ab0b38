"""Compiled inner loops over CSR adjacency (``indptr``, ``indices``)."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _sift_down(heap, size, i):
    while True:
        left = 2 * i + 1
        if left >= size:
            return
        child = left
        if left + 1 < size and heap[left + 1] < heap[left]:
            child = left + 1
        if heap[child] < heap[i]:
            heap[child], heap[i] = heap[i], heap[child]
            i = child
        else:
            return


@njit(cache=True, nogil=True)
def _sift_up(heap, i):
    while i > 0:
        parent = (i - 1) // 2
        if heap[i] < heap[parent]:
            heap[i], heap[parent] = heap[parent], heap[i]
            i = parent
        else:
            return


@njit(cache=True, nogil=True)
def mcs(n, indptr, indices, rank):
    """Maximum cardinality search; ties go to the smallest ``rank``.

    Heap keys pack ``(n - 1 - weight, rank)`` into one int64 with lazy
    deletion of stale entries.
    """
    inv = np.empty(n, np.int64)
    for v in range(n):
        inv[rank[v]] = v
    weight = np.zeros(n, np.int64)
    visited = np.zeros(n, np.bool_)
    heap = np.empty(n + indices.shape[0] + 1, np.int64)
    size = 0
    for v in range(n):
        heap[size] = (n - 1) * n + rank[v]
        size += 1
    for i in range(size // 2 - 1, -1, -1):
        _sift_down(heap, size, i)
    order = np.empty(n, np.int64)
    c = np.empty(n, np.int64)
    k = 0
    while size > 0:
        key = heap[0]
        size -= 1
        heap[0] = heap[size]
        _sift_down(heap, size, 0)
        v = inv[key % n]
        w = n - 1 - key // n
        if visited[v] or w != weight[v]:
            continue
        visited[v] = True
        order[k] = v
        c[k] = w
        k += 1
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if not visited[u]:
                weight[u] += 1
                heap[size] = (n - 1 - weight[u]) * n + rank[u]
                size += 1
                _sift_up(heap, size - 1)
    return order, c


@njit(cache=True, nogil=True)
def peo_violation(n, indptr, indices, order):
    """Zero-fill-in test; returns ``(v, x, f)`` for the earliest failing ``v`` or -1s."""
    pos = np.empty(n, np.int64)
    for i in range(n):
        pos[order[i]] = i
    m2 = indices.shape[0]
    head = np.full(n, -1, np.int64)
    nxt = np.empty(m2 + 1, np.int64)
    ex = np.empty(m2 + 1, np.int64)
    ev = np.empty(m2 + 1, np.int64)
    cnt = 0
    for i in range(n):
        v = order[i]
        f = -1
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if pos[u] < i and (f == -1 or pos[u] > pos[f]):
                f = u
        if f == -1:
            continue
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if pos[u] < i and u != f:
                ex[cnt] = u
                ev[cnt] = v
                nxt[cnt] = head[f]
                head[f] = cnt
                cnt += 1
    mark = np.full(n, -1, np.int64)
    bv, bx, bf = -1, -1, -1
    for i in range(n):
        f = order[i]
        if head[f] == -1:
            continue
        for e in range(indptr[f], indptr[f + 1]):
            u = indices[e]
            if pos[u] < i:
                mark[u] = f
        j = head[f]
        while j != -1:
            if mark[ex[j]] != f and (bv == -1 or pos[ev[j]] < pos[bv]):
                bv, bx, bf = ev[j], ex[j], f
            j = nxt[j]
    return bv, bx, bf
