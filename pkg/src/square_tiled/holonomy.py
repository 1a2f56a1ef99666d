r"""
Saddle connections, holonomy membership and the fake-torus classification.

A rightward horizontal separatrix leaves a cone point along the bottom edge
of each square whose bottom-left corner is that cone point. Following it means
iterating ``sigma`` until the next singular corner; no floating point is
involved anywhere. Other directions are reduced to the horizontal one through
the SL(2,Z) action, since ``Hol(M . o) = M Hol(o)``.

The one-square torus is handled with its single corner as a marked point, so
that its holonomy set is exactly the primitive vectors.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd, isqrt

from .core import Origami, _commutator0
from .sl2z import (
    _act_S0,
    _apply_steps0,
    horizontal_reduction,
    is_characteristic,
    is_symmetry_torus,
    orbit_keys,
)
from .topology import (
    Stratum,
    is_holonomy_torus,
    is_normal,
    is_primitive,
    is_reduced,
    stratum,
)

HOL_BALL_CAP = 64


class NoSaddles(ValueError):
    """Genus-one covers with more than one square have no cone points."""


class NotReduced(ValueError):
    pass


@dataclass(frozen=True, order=True)
class HolonomyVector:
    a: int
    b: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ValueError("holonomy vectors are nonzero")

    @property
    def norm2(self) -> int:
        return self.a * self.a + self.b * self.b

    @property
    def primitive(self) -> bool:
        return gcd(self.a, self.b) == 1


def _singular0(r, u):
    n = len(r)
    if n == 1:
        return [True]
    c = _commutator0(r, u)
    sing = [c[i] != i for i in range(n)]
    if not any(sing):
        raise NoSaddles("genus-one cover: no cone points, no saddle connections")
    return sing


def _horizontal_lengths0(r, u):
    """Length of the rightward saddle connection leaving each singular corner."""
    sing = _singular0(r, u)
    out = []
    for i in range(len(r)):
        if sing[i]:
            x = r[i]
            k = 1
            while not sing[x]:
                x = r[x]
                k += 1
            out.append(k)
    return out


def horizontal_saddles(o: Origami, lmax: int | None = None) -> Counter:
    r"""
    Count rightward horizontal saddle connections by length ``L <= lmax``.

    >>> horizontal_saddles(Origami.from_cycles("(1,2)", "(1,3)"))
    Counter({1: 3})
    """
    lengths = _horizontal_lengths0(o._r, o._u)
    return Counter(k for k in lengths if lmax is None or k <= lmax)


def _has_horizontal_unit0(r, u) -> bool:
    sing = _singular0(r, u)
    return any(sing[i] and sing[r[i]] for i in range(len(r)))


def has_horizontal_unit_saddle(o: Origami) -> bool:
    return _has_horizontal_unit0(o._r, o._u)


def has_unit_saddle(o: Origami) -> bool:
    r"""
    A saddle connection of length one, horizontal on ``o`` or on ``S . o``
    (the vertical ones). Integer holonomy allows no other unit vectors.
    """
    r, u = o._r, o._u
    return _has_horizontal_unit0(r, u) or _has_horizontal_unit0(*_act_S0(r, u))


def hol_contains(o: Origami, v) -> bool:
    r"""
    Whether ``v`` is the holonomy of a saddle connection of ``o``.

    ``v = k (p, q)`` with ``(p, q)`` primitive; a matrix built by Euclid takes
    ``(p, q)`` to ``(+-1, 0)`` and the question becomes whether the image
    surface has a horizontal saddle of length ``k``.
    """
    a, b = (v.a, v.b) if isinstance(v, HolonomyVector) else v
    if a == 0 and b == 0:
        raise ValueError("holonomy vectors are nonzero")
    steps, k = horizontal_reduction(a, b)
    r, u = _apply_steps0(o._r, o._u, steps)
    return k in _horizontal_lengths0(r, u)


def primitive_directions(radius: float):
    """Primitive ``(p, q)`` with ``p > 0`` or ``p == 0, q > 0`` and norm at most ``radius``."""
    r2 = radius * radius
    R = isqrt(int(r2)) + 1
    for p in range(0, R + 1):
        for q in range(-R, R + 1):
            if p == 0 and q <= 0:
                continue
            if p * p + q * q <= r2 and gcd(p, q) == 1:
                yield p, q


def hol_ball_counts(o: Origami, radius: float, cap: float = HOL_BALL_CAP) -> Counter:
    r"""
    Multiset version of :func:`hol_ball`: each oriented saddle connection of
    length at most ``radius`` counted once under its holonomy vector.
    ``cap`` guards against accidental huge radii and may be raised explicitly.
    """
    if radius > cap:
        raise ValueError(f"radius {radius} above the cap {cap}")
    out = Counter()
    r2 = radius * radius
    for p, q in primitive_directions(radius):
        steps, _ = horizontal_reduction(p, q)
        r, u = _apply_steps0(o._r, o._u, steps)
        # steps may land on (-1, 0): then rightward saddles on the image are
        # the saddles of direction -(p, q) on o
        sign = _landing_sign(p, q, steps)
        for k in _horizontal_lengths0(r, u):
            if k * k * (p * p + q * q) <= r2:
                out[(sign * k * p, sign * k * q)] += 1
                out[(-sign * k * p, -sign * k * q)] += 1
    return out


def _landing_sign(p, q, steps):
    a, b = p, q
    for op, k in steps:
        if op == "T":
            a += k * b
        else:
            a, b = -b, a
    return 1 if a > 0 else -1


def hol_ball(o: Origami, radius: float, cap: float = HOL_BALL_CAP) -> set:
    """Holonomy vectors of length at most ``radius``, as a set of integer pairs."""
    return set(hol_ball_counts(o, radius, cap))


def is_visibility(o: Origami) -> bool:
    r"""
    Every primitive vector is a holonomy vector; equivalently every surface in
    the SL(2,Z)-orbit has a unit horizontal saddle. Stops at the first orbit
    element without one.
    """
    if not is_reduced(o):
        raise NotReduced("visibility is only defined here for reduced origamis")
    if o.n == 1:
        return True
    for key in orbit_keys(o):
        n = key[0]
        r = tuple(x - 1 for x in key[1 : n + 1])
        u = tuple(x - 1 for x in key[n + 1 :])
        if not _has_horizontal_unit0(r, u):
            return False
    return True


FLAG_LETTERS = (
    ("reduced", "R"),
    ("primitive", "P"),
    ("normal", "N"),
    ("holonomy", "H"),
    ("visibility", "V"),
    ("symmetry", "S"),
    ("characteristic", "C"),
    ("unit_saddle", "U"),
)


class ImplicationViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Classification:
    stratum: Stratum
    reduced: bool
    primitive: bool
    normal: bool
    holonomy: bool
    visibility: bool
    symmetry: bool
    characteristic: bool
    unit_saddle: bool
    orbit_size: int | None = field(default=None, compare=False)

    @property
    def flags(self) -> str:
        return "".join(ch for name, ch in FLAG_LETTERS if getattr(self, name))

    def violations(self) -> list[str]:
        out = []
        if self.characteristic and not (self.symmetry and self.holonomy and self.visibility):
            out.append("characteristic without symmetry/holonomy/visibility")
        if self.holonomy and self.reduced and not self.visibility:
            out.append("reduced holonomy torus that is not visibility")
        if self.characteristic != (self.normal and self.symmetry):
            out.append("characteristic != normal and symmetry")
        if self.primitive and not self.reduced:
            out.append("primitive but not reduced")
        if (self.visibility or self.symmetry) and not self.reduced:
            out.append("visibility/symmetry flag on a non-reduced surface")
        if self.stratum.genus >= 2 and self.normal and not self.holonomy:
            out.append("normal but not holonomy torus")
        return out


def _unit_saddle_flag(o: Origami) -> bool:
    if o.n > 1 and stratum(o).genus == 1:
        return False
    return has_unit_saddle(o)


def classify(o: Origami, with_orbit: bool = False) -> Classification:
    r"""
    All flags for one surface. Visibility and symmetry are only set on reduced
    surfaces; the flags must satisfy the implication lattice.
    """
    reduced = is_reduced(o)
    st = stratum(o)
    size = None
    if reduced and (with_orbit or st.genus >= 2):
        visibility = is_visibility(o)
    else:
        visibility = reduced
    if with_orbit:
        size = sum(1 for _ in orbit_keys(o))
    symmetry = is_symmetry_torus(o)
    c = Classification(
        stratum=st,
        reduced=reduced,
        primitive=is_primitive(o),
        normal=is_normal(o),
        holonomy=is_holonomy_torus(o),
        visibility=visibility,
        symmetry=symmetry,
        characteristic=is_characteristic(o),
        unit_saddle=_unit_saddle_flag(o),
        orbit_size=size,
    )
    bad = c.violations()
    if bad:
        raise ImplicationViolation(f"{o}: {bad}")
    return c
