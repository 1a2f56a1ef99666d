r"""
Compiled versions of the hot loops: canonical keys, exhaustive enumeration,
lattice index, block systems and the H(2) parameter builders.

Everything here mirrors a pure-Python function elsewhere in the package and
is tested against it; arrays are 0-based ``int64`` images.
"""
from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.typed import Dict


@njit(cache=True)
def canon(r, u, best):
    """Write the least BFS relabelling (sigma then tau) into ``best``; False if disconnected."""
    return canon_bases(r, u, np.arange(r.shape[0]), best)


@njit(cache=True)
def canon_bases(r, u, bases, best):
    r"""
    Least BFS relabelling over the given bases only. Any relabelling-invariant
    base set (e.g. the squares with a singular bottom-left corner) still gives
    a complete invariant, just not the same key as :func:`canon`.
    """
    n = r.shape[0]
    label = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    cand = np.empty(2 * n, np.int64)
    have = False
    for base in bases:
        for i in range(n):
            label[i] = -1
        label[base] = 0
        order[0] = base
        size = 1
        less = not have
        greater = False
        for j in range(n):
            if j >= size:
                return False
            x = order[j]
            y = r[x]
            if label[y] < 0:
                label[y] = size
                order[size] = y
                size += 1
            y = u[x]
            if label[y] < 0:
                label[y] = size
                order[size] = y
                size += 1
            v = label[r[x]]
            cand[j] = v
            if not less:
                if v < best[j]:
                    less = True
                elif v > best[j]:
                    greater = True
                    break
        if greater:
            continue
        for j in range(n):
            v = label[u[order[j]]]
            cand[n + j] = v
            if not less:
                if v < best[n + j]:
                    less = True
                elif v > best[n + j]:
                    greater = True
                    break
        if greater or not less:
            continue
        for j in range(2 * n):
            best[j] = cand[j]
        have = True
    return True


@njit(cache=True)
def connected(r, u):
    n = r.shape[0]
    seen = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    seen[0] = True
    stack[0] = 0
    top = 1
    count = 1
    while top:
        top -= 1
        x = stack[top]
        for y in (r[x], u[x]):
            if not seen[y]:
                seen[y] = True
                count += 1
                stack[top] = y
                top += 1
    return count == n


@njit(cache=True)
def _next_permutation(a):
    n = a.shape[0]
    i = n - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1 :] = a[i + 1 :][::-1].copy()
    return True


@njit(cache=True)
def _pack(best, n):
    hi = 0
    lo = 0
    for j in range(n):
        hi = hi * 16 + best[j]
        lo = lo * 16 + best[n + j]
    return hi, lo


@njit(cache=True)
def _census_partition(r, seen):
    n = r.shape[0]
    u = np.arange(n)
    best = np.empty(2 * n, np.int64)
    while True:
        if connected(r, u):
            canon(r, u, best)
            seen[_pack(best, n)] = np.int8(1)
        if not _next_permutation(u):
            break


def census_keys_numba(n: int) -> set:
    r"""
    Canonical keys (0-based, ``2n`` entries) of all connected ``n``-square
    origamis, same contract as the pure-Python shards merged together.
    """
    from .census import cycle_type_representative, partitions

    if n > 15:
        raise ValueError("packed keys support n <= 15")
    seen = Dict.empty(key_type=types.UniTuple(types.int64, 2), value_type=types.int8)
    for part in partitions(n):
        r = np.array(cycle_type_representative(part), dtype=np.int64)
        _census_partition(r, seen)
    out = set()
    for hi, lo in seen.keys():
        out.add(_unpack(hi, n) + _unpack(lo, n))
    return out


def _unpack(x: int, n: int) -> tuple[int, ...]:
    digits = []
    for _ in range(n):
        digits.append(x % 16)
        x //= 16
    return tuple(reversed(digits))


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def commutator(r, u):
    n = r.shape[0]
    ri = np.empty(n, np.int64)
    ui = np.empty(n, np.int64)
    for i in range(n):
        ri[r[i]] = i
        ui[u[i]] = i
    c = np.empty(n, np.int64)
    for i in range(n):
        c[i] = r[u[ri[ui[i]]]]
    return c


@njit(cache=True)
def lattice_index(r, u):
    """Index of the period lattice (absolute cycles plus cone-point displacements)."""
    n = r.shape[0]
    px = np.zeros(n, np.int64)
    py = np.zeros(n, np.int64)
    seen = np.zeros(n, np.bool_)
    tree_r = np.zeros(n, np.bool_)
    tree_u = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    seen[0] = True
    stack[0] = 0
    top = 1
    while top:
        top -= 1
        x = stack[top]
        y = r[x]
        if not seen[y]:
            seen[y] = True
            px[y] = px[x] + 1
            py[y] = py[x]
            tree_r[x] = True
            stack[top] = y
            top += 1
        y = u[x]
        if not seen[y]:
            seen[y] = True
            px[y] = px[x]
            py[y] = py[x] + 1
            tree_u[x] = True
            stack[top] = y
            top += 1
    a = 0
    b = 0
    d = 0
    c = commutator(r, u)
    first = -1
    for step in range(3 * n):
        kind = step // n
        x = step % n
        if kind == 0:
            if tree_r[x]:
                continue
            vx = px[x] + 1 - px[r[x]]
            vy = py[x] - py[r[x]]
        elif kind == 1:
            if tree_u[x]:
                continue
            vx = px[x] - px[u[x]]
            vy = py[x] + 1 - py[u[x]]
        else:
            if c[x] == x:
                continue
            if first < 0:
                first = x
                continue
            vx = px[x] - px[first]
            vy = py[x] - py[first]
        while vx != 0:
            if a == 0:
                a = vx
                b = vy
                vx = 0
                vy = 0
                break
            q = a // vx
            a, b, vx, vy = vx, vy, a - q * vx, b - q * vy
        d = _gcd(d, vy)
    return abs(a) * d


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def has_block_system(r, u):
    n = r.shape[0]
    parent = np.empty(n, np.int64)
    pa = np.empty(2 * n * n, np.int64)
    pb = np.empty(2 * n * n, np.int64)
    for j in range(1, n):
        for i in range(n):
            parent[i] = i
        parent[j] = 0
        pa[0] = 0
        pb[0] = j
        top = 1
        size = 2
        while top and size < n:
            top -= 1
            a = pa[top]
            b = pb[top]
            for g in range(2):
                ga = r[a] if g == 0 else u[a]
                gb = r[b] if g == 0 else u[b]
                ra = _find(parent, ga)
                rb = _find(parent, gb)
                if ra != rb:
                    parent[rb] = ra
                    size += 1
                    pa[top] = ga
                    pb[top] = gb
                    top += 1
        if size < n:
            return True
    return False


@njit(cache=True)
def _key_counts(keys, n):
    reduced = 0
    primitive = 0
    r = np.empty(n, np.int64)
    u = np.empty(n, np.int64)
    for row in range(keys.shape[0]):
        for i in range(n):
            r[i] = keys[row, i]
            u[i] = keys[row, n + i]
        if n == 1 or lattice_index(r, u) == 1:
            reduced += 1
            if n == 1 or not has_block_system(r, u):
                primitive += 1
    return reduced, primitive


def reduced_primitive_counts(keys, n: int) -> tuple[int, int]:
    """``(#reduced, #primitive)`` over 0-based ``2n``-entry keys."""
    arr = np.asarray(sorted(keys), dtype=np.int64).reshape(-1, 2 * n)
    r, p = _key_counts(arr, n)
    return int(r), int(p)


# H(2) parameter families ----------------------------------------------------


@njit(cache=True)
def build_h2_one(k, l, m, p, alpha, r, u):
    """Same square numbering as the pure-Python cylinder builder."""
    w = k + l + m
    for row in range(p):
        for col in range(w):
            sq = row * w + col
            r[sq] = row * w + (col + 1) % w
            if row + 1 < p:
                u[sq] = sq + w
            else:
                t = (col - alpha) % w
                if t < m:
                    u[sq] = k + l + t
                elif t < m + l:
                    u[sq] = k + (t - m)
                else:
                    u[sq] = t - m - l


@njit(cache=True)
def build_h2_two(p, q, k, l, alpha, beta, r, u):
    base = p * k
    for row in range(p):
        for col in range(k):
            sq = row * k + col
            r[sq] = row * k + (col + 1) % k
            if row + 1 < p:
                u[sq] = sq + k
            else:
                t = (col - alpha) % k
                u[sq] = base + t if t < l else t - l
    for row in range(q):
        for col in range(l):
            sq = base + row * l + col
            r[sq] = base + row * l + (col + 1) % l
            if row + 1 < q:
                u[sq] = sq + l
            else:
                t = (col - beta) % l
                u[sq] = (k - l) + t


@njit(cache=True)
def has_horizontal_unit(r, u):
    n = r.shape[0]
    c = commutator(r, u)
    for i in range(n):
        if c[i] != i and c[r[i]] != r[i]:
            return True
    return False


@njit(cache=True)
def has_unit(r, u):
    n = r.shape[0]
    if has_horizontal_unit(r, u):
        return True
    ui = np.empty(n, np.int64)
    for i in range(n):
        ui[u[i]] = i
    return has_horizontal_unit(ui, r)


@njit(cache=True)
def _singular_key(r, u, best):
    c = commutator(r, u)
    bases = np.nonzero(c != np.arange(r.shape[0]))[0]
    canon_bases(r, u, bases, best)


@njit(cache=True)
def _h2_keys(n, params_one, params_two):
    m1 = params_one.shape[0]
    m2 = params_two.shape[0]
    out = np.empty((m1 + m2, 2 * n), np.int64)
    r = np.empty(n, np.int64)
    u = np.empty(n, np.int64)
    best = np.empty(2 * n, np.int64)
    for i in range(m1):
        a = params_one[i]
        build_h2_one(a[0], a[1], a[2], a[3], a[4], r, u)
        _singular_key(r, u, best)
        out[i, :] = best
    for i in range(m2):
        a = params_two[i]
        build_h2_two(a[0], a[1], a[2], a[3], a[4], a[5], r, u)
        _singular_key(r, u, best)
        out[m1 + i, :] = best
    return out


@njit(cache=True)
def _flags(keys, n):
    m = keys.shape[0]
    reduced = np.zeros(m, np.bool_)
    unit = np.zeros(m, np.bool_)
    r = np.empty(n, np.int64)
    u = np.empty(n, np.int64)
    for row in range(m):
        for i in range(n):
            r[i] = keys[row, i]
            u[i] = keys[row, n + i]
        reduced[row] = lattice_index(r, u) == 1
        unit[row] = has_unit(r, u)
    return reduced, unit


def _unique_rows(keys: np.ndarray) -> np.ndarray:
    small = np.ascontiguousarray(keys.astype(np.uint16))
    view = small.view(np.dtype((np.void, small.dtype.itemsize * small.shape[1])))
    _, idx = np.unique(view, return_index=True)
    return keys[np.sort(idx)]


def h2_key_array(n: int) -> np.ndarray:
    r"""
    One row (0-based ``sigma`` then ``tau``) per ``n``-square H(2) surface.
    Rows are BFS relabellings from the cone-point squares, a complete
    invariant but not the package-wide canonical key.
    """
    from .constructions import h2_one_cylinder_params, h2_two_cylinder_params

    one = np.array(
        [(x.k, x.l, x.m, x.p, x.alpha) for x in h2_one_cylinder_params(n)], dtype=np.int64
    ).reshape(-1, 5)
    two = np.array(
        [(x.p, x.q, x.k, x.l, x.alpha, x.beta) for x in h2_two_cylinder_params(n)],
        dtype=np.int64,
    ).reshape(-1, 6)
    return _unique_rows(_h2_keys(n, one, two))


def h2_flags(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(keys, reduced, unit_saddle)`` for every ``n``-square H(2) surface."""
    keys = h2_key_array(n)
    reduced, unit = _flags(keys, n)
    return keys, reduced, unit
