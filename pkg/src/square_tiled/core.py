r"""
Permutations and origamis (square-tiled surfaces as permutation pairs).

Squares are labelled ``1..n``. An origami is a pair ``(sigma, tau)`` where
``sigma(i)`` is the square to the right of ``i`` and ``tau(i)`` the square
above ``i``.

Composition convention
----------------------

Everything in this package composes permutations **right factor first**::

    compose(a, b)(i) == a(b(i))

so that the commutator ``sigma tau sigma^-1 tau^-1`` sends ``i`` to
``sigma(tau(sigma^-1(tau^-1(i))))``: down, left, up, right. That loop turns
counterclockwise around the bottom-left corner of square ``i``, which is why
its cycles index the vertices of the surface.

Internally most algorithms run on 0-based tuples (``r`` for sigma, ``u`` for
tau); the public types keep the 1-based labels.

>>> o = Origami.from_cycles("(1,2,3,4)(5,6)", "(1,5)(2,6)(3,4)")
>>> sorted(commutator(o).cycle_type(), reverse=True)
[2, 2, 1, 1]
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property


class InvalidPermutation(ValueError):
    pass


class DisconnectedOrigami(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    r"""
    A bijection of ``{1, ..., n}`` stored in one-line form.

    ``images[i - 1]`` is the image of ``i``.

    >>> Permutation.from_cycles("(1,2)", 3)
    Permutation((2, 1, 3))
    >>> Permutation((2, 3, 1)).cycles()
    [(1, 2, 3)]
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n < 1:
            raise InvalidPermutation("a permutation needs at least one point")
        if sorted(images) != list(range(1, n + 1)):
            raise InvalidPermutation(f"{images} is not a bijection of 1..{n}")

    def __repr__(self):
        return f"Permutation({self.images})"

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self):
        return len(self.images)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_zero_based(cls, images: Sequence[int]) -> Permutation:
        return cls(tuple(x + 1 for x in images))

    @classmethod
    def from_cycles(cls, cycles: str | Iterable[Iterable[int]], n: int) -> Permutation:
        r"""
        Build from cycle notation, either a string such as ``"(1,2,3)(4,5)"``
        or an iterable of cycles. Points not mentioned are fixed.
        """
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        images = list(range(1, n + 1))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if not 1 <= a <= n or a in seen:
                    raise InvalidPermutation(f"bad cycle entry {a} for n={n}")
                seen.add(a)
                images[a - 1] = b
        return cls(tuple(images))

    @cached_property
    def zero_based(self) -> tuple[int, ...]:
        return tuple(x - 1 for x in self.images)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, x in enumerate(self.images, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def cycles(self, singletons: bool = False) -> list[tuple[int, ...]]:
        out = []
        seen = [False] * (self.n + 1)
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x - 1]
            if singletons or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> list[int]:
        """Cycle lengths including fixed points, sorted descending."""
        return sorted((len(c) for c in self.cycles(singletons=True)), reverse=True)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, 1))

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+\s*(,\s*\d+\s*)*)?\))*", text.replace(" ", "")):
        raise InvalidPermutation(f"cannot parse cycle notation {text!r}")
    return [
        tuple(int(x) for x in body.split(","))
        for body in re.findall(r"\(([^()]*)\)", text)
        if body.strip()
    ]


def compose(a: Permutation, b: Permutation) -> Permutation:
    r"""
    The permutation ``i -> a(b(i))``; ``b`` acts first.

    >>> a = Permutation.from_cycles("(1,2)", 3)
    >>> b = Permutation.from_cycles("(1,3)", 3)
    >>> compose(a, b)
    Permutation((3, 1, 2))
    """
    if a.n != b.n:
        raise InvalidPermutation(f"size mismatch: {a.n} != {b.n}")
    ai = a.images
    return Permutation(tuple(ai[x - 1] for x in b.images))


def _compose0(a, b):
    return tuple(a[x] for x in b)


def _inverse0(a):
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def _power0(a, k):
    n = len(a)
    if k < 0:
        a = _inverse0(a)
        k = -k
    out = list(range(n))
    for i in range(n):
        x = i
        for _ in range(k):
            x = a[x]
        out[i] = x
    return tuple(out)


def _is_connected0(r, u) -> bool:
    n = len(r)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        x = stack.pop()
        for y in (r[x], u[x]):
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == n


def is_connected(sigma: Permutation, tau: Permutation) -> bool:
    """True iff the group generated by ``sigma`` and ``tau`` is transitive."""
    if sigma.n != tau.n:
        raise InvalidPermutation(f"size mismatch: {sigma.n} != {tau.n}")
    return _is_connected0(sigma.zero_based, tau.zero_based)


@dataclass(frozen=True)
class Origami:
    r"""
    A connected square-tiled surface given by right (``sigma``) and up
    (``tau``) neighbour permutations.

    >>> Origami.from_cycles("(1,2)", "(1,3)").n
    3
    """

    sigma: Permutation
    tau: Permutation
    _r: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _u: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.sigma.n != self.tau.n:
            raise InvalidPermutation(f"size mismatch: {self.sigma.n} != {self.tau.n}")
        object.__setattr__(self, "_r", self.sigma.zero_based)
        object.__setattr__(self, "_u", self.tau.zero_based)
        if not _is_connected0(self._r, self._u):
            raise DisconnectedOrigami("sigma and tau do not act transitively")

    @property
    def n(self) -> int:
        return self.sigma.n

    @classmethod
    def from_zero_based(cls, r: Sequence[int], u: Sequence[int]) -> Origami:
        return cls(Permutation.from_zero_based(r), Permutation.from_zero_based(u))

    @classmethod
    def from_images(cls, sigma: Sequence[int], tau: Sequence[int]) -> Origami:
        return cls(Permutation(tuple(sigma)), Permutation(tuple(tau)))

    @classmethod
    def from_cycles(cls, sigma: str, tau: str, n: int | None = None) -> Origami:
        if n is None:
            n = max([1] + [x for c in parse_cycles(sigma) + parse_cycles(tau) for x in c])
        return cls(Permutation.from_cycles(sigma, n), Permutation.from_cycles(tau, n))

    @classmethod
    def torus(cls) -> Origami:
        return cls(Permutation.identity(1), Permutation.identity(1))

    def relabel(self, g: Permutation) -> Origami:
        """Conjugate both permutations by ``g`` (square ``i`` becomes ``g(i)``)."""
        ginv = g.inverse()
        return Origami(compose(g, compose(self.sigma, ginv)), compose(g, compose(self.tau, ginv)))

    def __str__(self):
        return f"{self.sigma.cycle_string()}|{self.tau.cycle_string()}"


def commutator(o: Origami) -> Permutation:
    """``sigma tau sigma^-1 tau^-1`` under the right-first convention."""
    return Permutation.from_zero_based(_commutator0(o._r, o._u))


def _commutator0(r, u):
    ri = _inverse0(r)
    ui = _inverse0(u)
    return tuple(r[u[ri[ui[i]]]] for i in range(len(r)))


CanonicalKey = tuple  # (n, sigma images..., tau images...), 1-based


def _canonical0(r, u, bases=None):
    """Least BFS relabelling over the given base squares (default: all)."""
    n = len(r)
    best = None
    for base in range(n) if bases is None else bases:
        label = [-1] * n
        label[base] = 0
        order = [base]
        cand = []
        greater = False
        less = best is None
        for j in range(n):
            if j >= len(order):
                raise DisconnectedOrigami("origami is not connected")
            x = order[j]
            for y in (r[x], u[x]):
                if label[y] < 0:
                    label[y] = len(order)
                    order.append(y)
            v = label[r[x]]
            cand.append(v)
            if not less:
                b = best[j]
                if v < b:
                    less = True
                elif v > b:
                    greater = True
                    break
        if greater:
            continue
        tail = [label[u[x]] for x in order]
        if not less:
            if tail >= best[n:]:
                continue
        best = cand + tail
    return best


def canonical_key(o: Origami) -> CanonicalKey:
    r"""
    Relabelling-invariant key: ``(n, sigma images, tau images)`` of the
    lexicographically least breadth-first relabelling, over all base squares.
    The BFS explores the sigma-neighbour before the tau-neighbour.

    >>> canonical_key(Origami.torus())
    (1, 1, 1)
    """
    best = _canonical0(o._r, o._u)
    return (o.n,) + tuple(x + 1 for x in best)


def origami_from_key(key: CanonicalKey) -> Origami:
    n = key[0]
    return Origami.from_images(key[1 : n + 1], key[n + 1 : 2 * n + 1])


def canonical_form(o: Origami) -> Origami:
    return origami_from_key(canonical_key(o))
