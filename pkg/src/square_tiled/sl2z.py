r"""
The SL(2,Z) action on origamis, orbits and Veech-group index.

The generators act on ``(sigma, tau)`` as::

    T = [[1, 1], [0, 1]]:   (sigma, tau) -> (sigma, tau sigma^-1)
    S = [[0, -1], [1, 0]]:  (sigma, tau) -> (tau^-1, sigma)

Shearing by ``T`` keeps horizontal neighbours; the new square ``i`` sits on
the bottom edge of old square ``i`` and the square above it is above the old
left neighbour. ``S`` is the counterclockwise quarter turn: the old
down-neighbour becomes the right one and the old right-neighbour the up one.
With these, a saddle connection of holonomy ``v`` on ``o`` has holonomy
``M v`` on ``M . o``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import (
    CanonicalKey,
    Origami,
    _canonical0,
    _compose0,
    _inverse0,
    _power0,
    canonical_key,
    origami_from_key,
)
from .topology import is_normal, is_reduced

ORBIT_CAP = 10**7

T_MATRIX = ((1, 1), (0, 1))
S_MATRIX = ((0, -1), (1, 0))


class OrbitTooLarge(RuntimeError):
    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


class NotReduced(ValueError):
    pass


def _act_T0(r, u, k=1):
    return r, _compose0(u, _power0(r, -k))


def _act_S0(r, u):
    return _inverse0(u), r


def _act_S_inv0(r, u):
    return u, _inverse0(r)


def act_T(o: Origami, k: int = 1) -> Origami:
    """Image under ``T^k`` (horizontal shear)."""
    return Origami.from_zero_based(*_act_T0(o._r, o._u, k))


def act_S(o: Origami) -> Origami:
    """Image under the quarter turn ``S``."""
    return Origami.from_zero_based(*_act_S0(o._r, o._u))


def act_S_inv(o: Origami) -> Origami:
    return Origami.from_zero_based(*_act_S_inv0(o._r, o._u))


def matmul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def word_matrix(word: str):
    r"""
    Matrix of a word over ``T``, ``t`` (= T^-1), ``S``, ``s`` (= S^-1), read as
    a left-to-right product.

    >>> word_matrix("TS")
    ((1, -1), (1, 0))
    """
    gens = {
        "T": T_MATRIX,
        "t": ((1, -1), (0, 1)),
        "S": S_MATRIX,
        "s": ((0, 1), (-1, 0)),
    }
    m = ((1, 0), (0, 1))
    for ch in word:
        m = matmul(m, gens[ch])
    return m


def _apply_word0(r, u, word):
    for ch in reversed(word):
        if ch == "T":
            r, u = _act_T0(r, u, 1)
        elif ch == "t":
            r, u = _act_T0(r, u, -1)
        elif ch == "S":
            r, u = _act_S0(r, u)
        elif ch == "s":
            r, u = _act_S_inv0(r, u)
        else:
            raise ValueError(f"unknown generator {ch!r}")
    return r, u


def apply_word(o: Origami, word: str) -> Origami:
    """``M . o`` for ``M = word_matrix(word)``; the rightmost letter acts first."""
    return Origami.from_zero_based(*_apply_word0(o._r, o._u, word))


def horizontal_reduction(a: int, b: int):
    r"""
    Euclid on the vector ``(a, b)`` with ``T`` powers and ``S``.

    Returns ``(steps, g)`` where applying ``steps`` in order (each either
    ``("T", k)`` or ``("S", 1)``) maps ``(a, b)`` to ``(g, 0)`` or ``(-g, 0)``
    with ``g = gcd(a, b)``.
    """
    if a == 0 and b == 0:
        raise ValueError("zero vector")
    steps = []
    while b != 0:
        if a != 0:
            k = -(a // b)
            if k:
                steps.append(("T", k))
                a += k * b
        # S: (a, b) -> (-b, a)
        steps.append(("S", 1))
        a, b = -b, a
    return steps, abs(a)


def _apply_steps0(r, u, steps):
    for op, k in steps:
        if op == "T":
            r, u = _act_T0(r, u, k)
        else:
            r, u = _act_S0(r, u)
    return r, u


@dataclass(frozen=True)
class OrbitSummary:
    size: int
    representatives: frozenset

    @property
    def veech_index(self) -> int:
        return self.size


def _neighbours0(key):
    n = key[0]
    r = tuple(x - 1 for x in key[1 : n + 1])
    u = tuple(x - 1 for x in key[n + 1 :])
    for r2, u2 in (_act_T0(r, u, 1), _act_S0(r, u)):
        yield (n,) + tuple(x + 1 for x in _canonical0(r2, u2))


def orbit_keys(o: Origami, cap: int = ORBIT_CAP):
    """Breadth-first iterator over the canonical keys of the SL(2,Z)-orbit."""
    start = canonical_key(o)
    seen = {start}
    queue = deque([start])
    yield start
    while queue:
        key = queue.popleft()
        for nb in _neighbours0(key):
            if nb not in seen:
                if len(seen) >= cap:
                    raise OrbitTooLarge(f"orbit exceeds {cap} surfaces", frozenset(seen))
                seen.add(nb)
                queue.append(nb)
                yield nb


def orbit(o: Origami, cap: int = ORBIT_CAP) -> OrbitSummary:
    r"""
    Closure of ``{canonical_key(o)}`` under ``T`` and ``S``.

    The orbit is finite, so closing under the two generators alone already
    closes under their inverses.
    """
    keys = frozenset(orbit_keys(o, cap))
    return OrbitSummary(len(keys), keys)


def veech_index(o: Origami, cap: int = ORBIT_CAP) -> int:
    if not is_reduced(o):
        raise NotReduced("Veech index is only computed for reduced origamis")
    return orbit(o, cap).size


def is_symmetry_torus(o: Origami) -> bool:
    r"""Reduced and fixed (up to relabelling) by both ``T`` and ``S``."""
    if not is_reduced(o):
        return False
    key = canonical_key(o)
    return all(nb == key for nb in _neighbours0(key))


def _nielsen_fixed0(r, u) -> bool:
    key = _canonical0(r, u)
    moves = ((u, r), (_inverse0(r), u), (_compose0(r, u), u))
    return all(_canonical0(a, b) == key for a, b in moves)


def is_characteristic(o: Origami, cross_check: bool = True) -> bool:
    r"""
    Normal symmetry torus.

    With ``cross_check`` the answer is recomputed as "reduced, normal and
    invariant under the Nielsen moves ``(s, t) -> (t, s)``, ``(s^-1, t)``,
    ``(s t, t)``" (which generate Aut(F2)) and the two must agree. Reducedness
    is part of both routes: genus-one covers such as the Klein-four one give
    characteristic subgroups but are never symmetry tori.
    """
    normal = is_normal(o)
    primary = normal and is_symmetry_torus(o)
    if cross_check:
        other = normal and is_reduced(o) and _nielsen_fixed0(o._r, o._u)
        if other != primary:
            raise AssertionError(f"characteristic tests disagree on {o}")
    return primary


def orbit_partition(keys) -> dict[CanonicalKey, int]:
    r"""
    Label every key of an SL(2,Z)-closed collection with an orbit id.

    ``keys`` must be closed under the action (a full census of one ``n`` is).
    Ids are assigned in sorted key order so the result is deterministic.
    """
    keys = sorted(keys)
    index = {k: i for i, k in enumerate(keys)}
    parent = list(range(len(keys)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, key in enumerate(keys):
        for nb in _neighbours0(key):
            j = index.get(nb)
            if j is None:
                raise ValueError("key collection is not closed under SL(2,Z)")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {k: find(i) for i, k in enumerate(keys)}


__all__ = [
    "OrbitSummary",
    "OrbitTooLarge",
    "NotReduced",
    "act_T",
    "act_S",
    "act_S_inv",
    "apply_word",
    "word_matrix",
    "horizontal_reduction",
    "orbit",
    "orbit_keys",
    "orbit_partition",
    "veech_index",
    "is_symmetry_torus",
    "is_characteristic",
    "origami_from_key",
]
