r"""
Explicit surfaces: one-cylinder surfaces in any stratum, the split-square
non-visibility surface, and the cylinder parametrizations of H(2) and H(1,1).

Cylinder diagrams are turned into permutation pairs by filling each cylinder
row by row, left to right:

* cylinder ``c`` of width ``w`` and height ``h`` owns squares
  ``(c, row, col)`` for ``0 <= row < h``, ``0 <= col < w``, numbered in that
  (cylinder, row, column) order starting from 1;
* ``sigma`` moves one column right, cyclically inside the row;
* ``tau`` moves one row up; from the top row, the square at column ``col``
  sits under position ``(col - twist) mod w`` of the cylinder's top boundary,
  which lies on some saddle connection ``L`` at offset ``d``; it is glued to
  row 0 of the cylinder whose bottom boundary carries ``L``, at the column
  where ``L`` starts plus ``d``.

Boundaries are read left to right; every saddle connection label appears once
on a top and once on a bottom boundary.

The parameter families over-count (cyclic relabelling of saddle connections,
equivalent twists), so sweeps are meant to go through canonical-key dedup.
"""
from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from .core import Origami, canonical_key
from .topology import Stratum, stratum


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class Cylinder:
    bottom: tuple[str, ...]
    top: tuple[str, ...]
    height: int
    twist: int = 0


def build_cylinders(cylinders: Sequence[Cylinder], lengths: dict[str, int]) -> Origami:
    """Origami of a cylinder diagram with integer saddle-connection lengths."""
    widths = []
    for cyl in cylinders:
        wb = sum(lengths[x] for x in cyl.bottom)
        wt = sum(lengths[x] for x in cyl.top)
        if wb != wt:
            raise InvalidParameters(f"cylinder top/bottom widths differ: {wb} != {wt}")
        if wb < 1 or cyl.height < 1:
            raise InvalidParameters("cylinders need positive width and height")
        widths.append(wb)
    base = []
    total = 0
    for w, cyl in zip(widths, cylinders):
        base.append(total)
        total += w * cyl.height
    # where each label starts on the bottom boundary that carries it
    bottom_at = {}
    for c, cyl in enumerate(cylinders):
        x = 0
        for lab in cyl.bottom:
            if lab in bottom_at:
                raise InvalidParameters(f"label {lab!r} on two bottoms")
            bottom_at[lab] = (c, x)
            x += lengths[lab]
    r = [0] * total
    u = [0] * total
    for c, (w, cyl) in enumerate(zip(widths, cylinders)):
        top_pos = []  # position along the top boundary -> (label, offset)
        for lab in cyl.top:
            top_pos.extend((lab, d) for d in range(lengths[lab]))
        for row in range(cyl.height):
            for col in range(w):
                sq = base[c] + row * w + col
                r[sq] = base[c] + row * w + (col + 1) % w
                if row + 1 < cyl.height:
                    u[sq] = sq + w
                else:
                    lab, d = top_pos[(col - cyl.twist) % w]
                    c2, x2 = bottom_at[lab]
                    u[sq] = base[c2] + x2 + d
    return Origami.from_zero_based(r, u)


# one-cylinder surfaces -------------------------------------------------------


def _one_cylinder_blocks(alpha: Stratum) -> list[list[tuple[int, ...]]]:
    r"""
    Vertical gluing blocks, 1-based within each block. Every block opens with
    a fixed square, which keeps neighbouring blocks from merging their cone
    points along the single cylinder.

    Even zero ``2k``: ``2k + 1`` squares, ``(1)(2,3)...(2k,2k+1)``.
    Odd pair ``(2p-1, 2q-1)``: ``2p + 2q`` squares, ``(1)`` then
    ``(2,3)...(2p-2,2p-1)`` then the bridge ``(2p,2p+2)(2p+1)`` then
    ``(2p+3,2p+4)...(2p+2q-1,2p+2q)``.
    """
    evens = [a for a in alpha.alpha if a % 2 == 0]
    odds = [a for a in alpha.alpha if a % 2]
    blocks = []
    for a in evens:
        k = a // 2
        blocks.append([(1,)] + [(2 * i, 2 * i + 1) for i in range(1, k + 1)])
    for a, b in zip(odds[::2], odds[1::2]):
        p, q = (a + 1) // 2, (b + 1) // 2
        cyc = [(1,)] + [(2 * i, 2 * i + 1) for i in range(1, p)]
        cyc += [(2 * p, 2 * p + 2), (2 * p + 1,)]
        cyc += [(2 * p + 2 * i + 1, 2 * p + 2 * i + 2) for i in range(1, q)]
        blocks.append(cyc)
    return blocks


def one_cylinder(alpha: Stratum | Sequence[int], n: int) -> Origami:
    r"""
    A one-cylinder ``n``-square surface in the stratum: ``sigma`` is the
    ``n``-cycle, ``tau`` the even blocks, then the odd-pair blocks, then
    fixed spacer squares up to ``n``.

    >>> one_cylinder((2, 1, 1), 8).tau.cycle_string()
    '(2,3)(5,7)'
    """
    alpha = alpha if isinstance(alpha, Stratum) else Stratum(tuple(alpha))
    if alpha.genus < 2:
        raise InvalidParameters("one_cylinder needs genus at least 2")
    if n < alpha.min_squares:
        raise InvalidParameters(f"{alpha} needs at least {alpha.min_squares} squares, got n={n}")
    tau = list(range(1, n + 1))
    offset = 0
    for block in _one_cylinder_blocks(alpha):
        for cyc in block:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                tau[offset + a - 1] = offset + b
        offset += max(x for cyc in block for x in cyc)
    sigma = [i % n + 1 for i in range(1, n + 1)]
    o = Origami.from_images(sigma, tau)
    if stratum(o) != alpha:
        raise AssertionError(f"one_cylinder({alpha}, {n}) landed in {stratum(o)}")
    return o


def split_square_nonvisibility(alpha: Stratum | Sequence[int]) -> Origami:
    r"""
    Reduced non-visibility surface with ``4g - 4 + 2s`` squares.

    Start from the spacer-free one-cylinder surface (``2g - 2 + s`` squares)
    and replace a square whose top is glued to its own bottom by a row of
    ``2g - 1 + s`` such squares. The result lacks ``(2g - 2 + s, 1)`` in its
    holonomy.
    """
    alpha = alpha if isinstance(alpha, Stratum) else Stratum(tuple(alpha))
    base = one_cylinder(alpha, alpha.min_squares)
    m = base.n
    tau0 = base.tau.images
    split = next(i for i in range(1, m + 1) if tau0[i - 1] == i)
    extra = alpha.min_squares  # 2g-1+s squares replace one: add 2g-2+s
    n = m + extra
    # new labels: squares 1..split keep theirs, the split row is
    # split..split+extra, later squares shift by extra
    def new(i):
        return i if i <= split else i + extra

    tau = list(range(1, n + 1))
    for i in range(1, m + 1):
        if i != split:
            tau[new(i) - 1] = new(tau0[i - 1])
    sigma = [i % n + 1 for i in range(1, n + 1)]
    o = Origami.from_images(sigma, tau)
    if stratum(o) != alpha:
        raise AssertionError(f"split-square surface landed in {stratum(o)}")
    return o


# H(2) ----------------------------------------------------------------------


@dataclass(frozen=True)
class H2OneCylinder:
    k: int
    l: int
    m: int
    p: int
    alpha: int = 0

    @property
    def n(self) -> int:
        return (self.k + self.l + self.m) * self.p


@dataclass(frozen=True)
class H2TwoCylinder:
    p: int
    q: int
    k: int
    l: int
    alpha: int = 0
    beta: int = 0

    @property
    def n(self) -> int:
        return self.p * self.k + self.q * self.l


def _positive(*xs):
    if any(x < 1 for x in xs):
        raise InvalidParameters(f"lengths and heights must be positive: {xs}")


def build_h2(params: H2OneCylinder | H2TwoCylinder) -> Origami:
    r"""
    One cylinder: bottom ``k, l, m``, top ``m, l, k``, height ``p``, twist
    ``0 <= alpha < k + l + m``.

    Two cylinders: a ``k`` by ``p`` cylinder under an ``l`` by ``q`` one,
    ``k > l``. The top of the wide cylinder is ``[a, b]`` with ``a`` (length
    ``l``) glued to the narrow cylinder and ``b`` (length ``k - l``) back to
    itself; its bottom is ``[b, c]`` with ``c`` the narrow cylinder's top.
    Twists ``0 <= alpha < k`` and ``0 <= beta < l``.
    """
    if isinstance(params, H2OneCylinder):
        k, l, m, p, a = params.k, params.l, params.m, params.p, params.alpha
        _positive(k, l, m, p)
        if not 0 <= a < k + l + m:
            raise InvalidParameters("need 0 <= alpha < k + l + m")
        cyl = [Cylinder(("k", "l", "m"), ("m", "l", "k"), p, a)]
        return build_cylinders(cyl, {"k": k, "l": l, "m": m})
    if isinstance(params, H2TwoCylinder):
        p, q, k, l, a, b = params.p, params.q, params.k, params.l, params.alpha, params.beta
        _positive(p, q, k, l)
        if k <= l:
            raise InvalidParameters("two-cylinder H(2) needs k > l")
        if not (0 <= a < k and 0 <= b < l):
            raise InvalidParameters("need 0 <= alpha < k and 0 <= beta < l")
        cyl = [
            Cylinder(("b", "c"), ("a", "b"), p, a),
            Cylinder(("a",), ("c",), q, b),
        ]
        return build_cylinders(cyl, {"a": l, "b": k - l, "c": l})
    raise TypeError(f"unknown H(2) parameters {params!r}")


def h2_one_cylinder_params(n: int) -> Iterator[H2OneCylinder]:
    for w in range(3, n + 1):
        if n % w:
            continue
        p = n // w
        for k in range(1, w - 1):
            for l in range(1, w - k):
                m = w - k - l
                for a in range(w):
                    yield H2OneCylinder(k, l, m, p, a)


def h2_two_cylinder_params(n: int) -> Iterator[H2TwoCylinder]:
    for k in range(2, n + 1):
        for p in range(1, n // k + 1):
            rest = n - p * k
            for l in range(1, k):
                if rest <= 0 or rest % l:
                    continue
                q = rest // l
                for a in range(k):
                    for b in range(l):
                        yield H2TwoCylinder(p, q, k, l, a, b)


def h2_surfaces(n: int) -> set:
    """Canonical keys of every ``n``-square H(2) surface from both families."""
    keys = {canonical_key(build_h2(x)) for x in h2_one_cylinder_params(n)}
    keys |= {canonical_key(build_h2(x)) for x in h2_two_cylinder_params(n)}
    return keys


# H(1,1) --------------------------------------------------------------------


@dataclass(frozen=True)
class H11TypeA:
    p: int
    j: int
    k: int
    l: int
    m: int
    alpha: int = 0


@dataclass(frozen=True)
class H11TypeB:
    p: int
    q: int
    k: int
    l: int
    m: int
    alpha: int = 0
    beta: int = 0


@dataclass(frozen=True)
class H11TypeC:
    p: int
    q: int
    k: int
    l: int
    m: int
    alpha: int = 0
    beta: int = 0


@dataclass(frozen=True)
class H11TypeD:
    p: int
    q: int
    r: int
    k: int
    l: int
    alpha: int = 0
    beta: int = 0
    gamma: int = 0


def build_h11(params) -> Origami:
    r"""
    The four H(1,1) cylinder diagrams.

    * A, one cylinder of height ``p``: bottom ``j, k, l, m``, top ``j, m, l, k``;
      ``0 <= alpha < j + k + l + m``.
    * B, cylinders ``k + l + m`` by ``p`` and ``m`` by ``q``: the wide bottom
      is ``m, l, k``, its top ``x, k, l`` with ``x`` (length ``m``) leading to
      the narrow cylinder whose top is the wide bottom's ``m``;
      ``0 <= alpha < k + l + m``, ``0 <= beta < m``.
    * C, cylinders ``k + l`` by ``p`` and ``l + m`` by ``q`` sharing a
      saddle connection of length ``l``: lower bottom ``l, k``, lower top
      ``y, k``; upper bottom ``m, y``, upper top ``m, l``;
      ``0 <= alpha < k + l``, ``0 <= beta < l + m``.
    * D, three cylinders ``k`` by ``p``, ``k + l`` by ``q``, ``l`` by ``r``:
      bottoms ``K``, ``L, Y``, ``W``; tops ``Y``, ``W, K``, ``L``;
      ``0 <= alpha < k``, ``0 <= beta < k + l``, ``0 <= gamma < l``.
    """
    if isinstance(params, H11TypeA):
        p, j, k, l, m, a = params.p, params.j, params.k, params.l, params.m, params.alpha
        _positive(p, j, k, l, m)
        if not 0 <= a < j + k + l + m:
            raise InvalidParameters("need 0 <= alpha < j + k + l + m")
        cyl = [Cylinder(("j", "k", "l", "m"), ("j", "m", "l", "k"), p, a)]
        o = build_cylinders(cyl, {"j": j, "k": k, "l": l, "m": m})
    elif isinstance(params, H11TypeB):
        p, q, k, l, m, a, b = (params.p, params.q, params.k, params.l, params.m,
                               params.alpha, params.beta)
        _positive(p, q, k, l, m)
        if not (0 <= a < k + l + m and 0 <= b < m):
            raise InvalidParameters("need 0 <= alpha < k + l + m and 0 <= beta < m")
        cyl = [
            Cylinder(("m", "l", "k"), ("x", "k", "l"), p, a),
            Cylinder(("x",), ("m",), q, b),
        ]
        o = build_cylinders(cyl, {"k": k, "l": l, "m": m, "x": m})
    elif isinstance(params, H11TypeC):
        p, q, k, l, m, a, b = (params.p, params.q, params.k, params.l, params.m,
                               params.alpha, params.beta)
        _positive(p, q, k, l, m)
        if not (0 <= a < k + l and 0 <= b < l + m):
            raise InvalidParameters("need 0 <= alpha < k + l and 0 <= beta < l + m")
        cyl = [
            Cylinder(("l", "k"), ("y", "k"), p, a),
            Cylinder(("m", "y"), ("m", "l"), q, b),
        ]
        o = build_cylinders(cyl, {"k": k, "l": l, "m": m, "y": l})
    elif isinstance(params, H11TypeD):
        p, q, r, k, l = params.p, params.q, params.r, params.k, params.l
        a, b, c = params.alpha, params.beta, params.gamma
        _positive(p, q, r, k, l)
        if not (0 <= a < k and 0 <= b < k + l and 0 <= c < l):
            raise InvalidParameters("need 0 <= alpha < k, 0 <= beta < k + l, 0 <= gamma < l")
        cyl = [
            Cylinder(("K",), ("Y",), p, a),
            Cylinder(("L", "Y"), ("W", "K"), q, b),
            Cylinder(("W",), ("L",), r, c),
        ]
        o = build_cylinders(cyl, {"K": k, "L": l, "Y": k, "W": l})
    else:
        raise TypeError(f"unknown H(1,1) parameters {params!r}")
    return o


def _compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def h11_params(n: int) -> Iterator:
    """Every parameter tuple of the four families with ``n`` squares."""
    for w in range(4, n + 1):
        if n % w == 0:
            for j, k, l, m in _compositions(w, 4):
                for a in range(w):
                    yield H11TypeA(n // w, j, k, l, m, a)
    # B: p(k+l+m) + q m = n
    for m in range(1, n + 1):
        for kl in range(2, n + 1):
            w = kl + m
            for p in range(1, n // w + 1):
                rest = n - p * w
                if rest <= 0 or rest % m:
                    continue
                q = rest // m
                for k in range(1, kl):
                    for a in range(w):
                        for b in range(m):
                            yield H11TypeB(p, q, k, kl - k, m, a, b)
    # C: p(k+l) + q(l+m) = n
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            for m in range(1, n + 1):
                for p in range(1, n // (k + l) + 1):
                    rest = n - p * (k + l)
                    if rest <= 0 or rest % (l + m):
                        continue
                    q = rest // (l + m)
                    for a in range(k + l):
                        for b in range(l + m):
                            yield H11TypeC(p, q, k, l, m, a, b)
    # D: p k + q (k+l) + r l = n
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            for p in range(1, n + 1):
                for q in range(1, n + 1):
                    rest = n - p * k - q * (k + l)
                    if rest <= 0 or rest % l:
                        continue
                    r = rest // l
                    for a in range(k):
                        for b in range(k + l):
                            for c in range(l):
                                yield H11TypeD(p, q, r, k, l, a, b, c)


def h11_surfaces(n: int) -> set:
    return {canonical_key(build_h11(x)) for x in h11_params(n)}


def cylinder_count(o: Origami) -> int:
    r"""
    Number of horizontal cylinders: the cycles of ``sigma`` glue into
    cylinders along rows whose top edges meet no cone point.
    """
    from .topology import singular_mask

    sing = singular_mask(o)
    r = o._r
    n = o.n
    # a sigma-row is the bottom of a cylinder iff one of its squares has a
    # singular bottom-left corner
    row_id = [-1] * n
    rows = 0
    for i in range(n):
        if row_id[i] < 0:
            x = i
            while row_id[x] < 0:
                row_id[x] = rows
                x = r[x]
            rows += 1
    bottoms = {row_id[i] for i in range(n) if sing[i]}
    if not bottoms:
        raise ValueError("genus-one covers have no cone points to bound cylinders")
    return len(bottoms)
