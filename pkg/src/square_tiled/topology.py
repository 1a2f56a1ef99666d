r"""
Stratum, genus, lattice of periods and the algebraic classifications.

Corner convention: the commutator cycle through square ``i`` is the vertex at
the bottom-left corner of ``i``. A cycle of length ``k`` is a cone point of
angle ``2 pi k``, i.e. a zero of order ``k - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .core import Origami, _commutator0

MONODROMY_CAP = 10**7


class UndecidedAtThisSize(RuntimeError):
    """The monodromy group grew past the element cap."""


@dataclass(frozen=True, order=True)
class Stratum:
    r"""
    Zero orders of the abelian differential, sorted descending.

    ``Stratum(())`` is the genus-one case (no singularities).

    >>> Stratum((1, 1)).genus, Stratum((1, 1)).s
    (2, 2)
    >>> Stratum((2,)).min_squares
    3
    """

    alpha: tuple[int, ...] = ()

    def __post_init__(self):
        alpha = tuple(sorted((int(a) for a in self.alpha), reverse=True))
        if any(a < 1 for a in alpha):
            raise ValueError(f"zero orders must be positive, got {alpha}")
        if sum(alpha) % 2:
            raise ValueError(f"sum of zero orders must be even, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def parse(cls, text: str) -> Stratum:
        text = text.strip().strip("()H")
        if text in ("", "-", "0"):
            return cls(())
        return cls(tuple(int(x) for x in text.replace("(", "").replace(")", "").split(",")))

    @property
    def s(self) -> int:
        return len(self.alpha)

    @property
    def genus(self) -> int:
        return sum(self.alpha) // 2 + 1

    @property
    def min_squares(self) -> int:
        """``2g - 2 + s``: the fewest squares a surface in this stratum can have."""
        return 2 * self.genus - 2 + self.s

    def __str__(self):
        return "H(" + ",".join(map(str, self.alpha)) + ")" if self.alpha else "H()"


def singular_mask(o: Origami) -> list[bool]:
    """``mask[i]`` is True when the bottom-left corner of square ``i + 1`` is a cone point."""
    c = _commutator0(o._r, o._u)
    return [c[i] != i for i in range(o.n)]


def stratum(o: Origami) -> Stratum:
    c = _commutator0(o._r, o._u)
    seen = [False] * o.n
    alpha = []
    for i in range(o.n):
        if seen[i]:
            continue
        k = 0
        x = i
        while not seen[x]:
            seen[x] = True
            x = c[x]
            k += 1
        if k > 1:
            alpha.append(k - 1)
    return Stratum(tuple(alpha))


def genus(o: Origami) -> int:
    return stratum(o).genus


def hnf(vectors) -> tuple[tuple[int, int], tuple[int, int]]:
    r"""
    Hermite normal form ``((a, b), (0, d))`` of the lattice spanned by integer
    2-vectors, with ``a, d > 0`` and ``0 <= b < d``. Raises if the vectors do
    not span a rank-two lattice.

    >>> hnf([(2, 0), (0, 1), (4, 3)])
    ((2, 0), (0, 1))
    """
    a = b = 0  # first row (a, b), a >= 0
    d = 0  # second row (0, d)
    for x, y in vectors:
        # Euclid between (a, b) and (x, y) on the first coordinate
        while x:
            if a == 0:
                a, b, x, y = x, y, 0, 0
                break
            q = a // x
            a, b, x, y = x, y, a - q * x, b - q * y
        if a < 0:
            a, b = -a, -b
        d = gcd(d, y)
        if d:
            b %= d
    if a == 0 or d == 0:
        raise ValueError("vectors do not span a full-rank lattice")
    return (a, b), (0, d)


@dataclass(frozen=True)
class PeriodLattice:
    basis: tuple[tuple[int, int], tuple[int, int]]

    @property
    def index(self) -> int:
        return self.basis[0][0] * self.basis[1][1]


def _period_generators(r, u):
    n = len(r)
    pos = [None] * n
    pos[0] = (0, 0)
    stack = [0]
    tree = set()
    while stack:
        x = stack.pop()
        px, py = pos[x]
        for y, (dx, dy), tag in ((r[x], (1, 0), 0), (u[x], (0, 1), 1)):
            if pos[y] is None:
                pos[y] = (px + dx, py + dy)
                tree.add((x, tag))
                stack.append(y)
    for x in range(n):
        px, py = pos[x]
        for y, (dx, dy), tag in ((r[x], (1, 0), 0), (u[x], (0, 1), 1)):
            if (x, tag) not in tree:
                qx, qy = pos[y]
                yield (px + dx - qx, py + dy - qy)
    # relative periods: displacement between distinct cone points
    c = _commutator0(r, u)
    sing = [pos[i] for i in range(n) if c[i] != i]
    for qx, qy in sing[1:]:
        yield (qx - sing[0][0], qy - sing[0][1])


def period_lattice(o: Origami) -> PeriodLattice:
    r"""
    Lattice generated by all holonomy vectors.

    Closed loops of the square adjacency graph give the absolute periods
    (spanning tree plus one fundamental cycle per non-tree edge); the
    displacements between cone points give the relative ones. Without the
    latter, surfaces whose cone points sit at non-lattice offsets of each
    other would wrongly count as non-reduced.

    >>> period_lattice(Origami.from_cycles("(1,2)", "", 2)).basis
    ((2, 0), (0, 1))
    """
    return PeriodLattice(hnf(_period_generators(o._r, o._u)))


def is_reduced(o: Origami) -> bool:
    return period_lattice(o).index == 1


def _has_block_system0(r, u) -> bool:
    """True when some block system has between 2 and n - 1 blocks."""
    n = len(r)
    gens = (r, u)
    for j in range(1, n):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parent[j] = 0
        pending = [(0, j)]
        size = 2
        while pending and size < n:
            a, b = pending.pop()
            for g in gens:
                ra, rb = find(g[a]), find(g[b])
                if ra != rb:
                    parent[rb] = ra
                    size += 1
                    pending.append((g[a], g[b]))
        if size < n:
            return True
    return False


def is_block_primitive(o: Origami) -> bool:
    """No nontrivial block system for the monodromy action."""
    if o.n == 1:
        return True
    return not _has_block_system0(o._r, o._u)


def is_primitive(o: Origami) -> bool:
    r"""
    Covers nothing between itself and the one-square torus.

    Genus-one covers with ``n > 1`` squares are never primitive (they are
    not reduced), even when ``n`` is prime and no block system exists.
    """
    if o.n == 1:
        return True
    return is_reduced(o) and is_block_primitive(o)


def _automorphism_count0(r, u) -> int:
    """Number of relabellings commuting with both permutations."""
    n = len(r)
    count = 0
    for target in range(n):
        phi = [-1] * n
        phi[0] = target
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for g in (r, u):
                y, fy = g[x], g[phi[x]]
                if phi[y] < 0:
                    phi[y] = fy
                    stack.append(y)
                elif phi[y] != fy:
                    ok = False
                    break
        if ok:
            count += 1
    return count


def monodromy_order(o: Origami, cap: int = MONODROMY_CAP) -> int:
    r"""
    Order of the group generated by ``sigma`` and ``tau``, by closure.
    Raises :class:`UndecidedAtThisSize` past ``cap`` elements.
    """
    gens = (o._r, o._u)
    start = tuple(range(o.n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                e = tuple(g[x] for x in h)
                if e not in seen:
                    seen.add(e)
                    if len(seen) > cap:
                        raise UndecidedAtThisSize(f"monodromy group exceeds {cap} elements")
                    nxt.append(e)
        frontier = nxt
    return len(seen)


def is_normal(o: Origami) -> bool:
    r"""
    Regular (Galois) cover: the monodromy group has order ``n``.

    For a transitive group this is the same as the automorphism group of the
    origami acting transitively on squares, which is what is computed here in
    ``O(n^2)``. :func:`monodromy_order` is the direct, capped alternative.
    """
    return _automorphism_count0(o._r, o._u) == o.n


def is_holonomy_torus(o: Origami) -> bool:
    r"""
    Every corner of every square is a cone point. The one-square torus
    counts, its single corner being the marked point.
    """
    if o.n == 1:
        return True
    c = _commutator0(o._r, o._u)
    return all(c[i] != i for i in range(o.n))
