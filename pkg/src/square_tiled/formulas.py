r"""
Divisor sums, closed-form surface counts and empirical tallies, each paired
with a brute-force counterpart.

Closed forms are evaluated with :class:`fractions.Fraction` and must come out
integral; a fractional result means a coefficient was mistyped.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .topology import Stratum


def sigma(x: int, n: int) -> int:
    """Sum of ``d ** x`` over the divisors ``d`` of ``n``."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    if x < 0:
        raise ValueError("sigma needs x >= 0")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**x
            e = n // d
            if e != d:
                total += e**x
        d += 1
    return total


@dataclass(frozen=True)
class SigmaTable:
    """``values[i] = sigma_x(i)`` for ``1 <= i <= n_max``; index 0 unused."""

    x: int
    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


def sigma_table(x: int, n_max: int) -> SigmaTable:
    vals = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        p = d**x
        for m in range(d, n_max + 1, d):
            vals[m] += p
    return SigmaTable(x, tuple(vals))


def sigma_bounds_hold(x: int, n_max: int) -> bool:
    r"""
    ``n^x <= sigma_x(n) <= zeta(x) n^x`` for all ``n <= n_max``; the upper
    bound only makes sense for ``x > 1``.
    """
    if x <= 1:
        raise ValueError("the zeta bound needs x > 1")
    with mpmath.workdps(20):
        zeta = Fraction(mpmath.nstr(mpmath.zeta(x), 15))
    table = sigma_table(x, n_max)
    return all(n**x <= s <= zeta * n**x for n, s in enumerate(table.values) if n)


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {value}")
    return value.numerator


def two_cyl_count_h2(n: int) -> int:
    r"""
    Number of two-cylinder ``n``-square surfaces in H(2):
    ``5/24 s3 + 1/2 s2 - 3/4 n s1 + 1/24 s1``.
    """
    if n < 3:
        raise ValueError("H(2) needs at least 3 squares")
    s1, s2, s3 = sigma(1, n), sigma(2, n), sigma(3, n)
    value = (
        Fraction(5, 24) * s3
        + Fraction(1, 2) * s2
        - Fraction(3, 4) * n * s1
        + Fraction(1, 24) * s1
    )
    out = _integral(value, f"two-cylinder count at n={n}")
    if out < 0:
        raise ArithmeticError(f"negative two-cylinder count at n={n}")
    return out


def two_cyl_count_brute(n: int) -> int:
    """Sum of ``k * l`` over ``p, q >= 1``, ``k > l >= 1`` with ``p k + q l = n``."""
    total = 0
    for k in range(2, n + 1):
        for p in range(1, n // k + 1):
            rest = n - p * k
            for l in range(1, k):
                if rest > 0 and rest % l == 0:
                    total += k * l
    return total


@dataclass(frozen=True)
class ConvolutionCheck:
    n: int
    lhs: int
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def ramanujan_convolution(n: int) -> ConvolutionCheck:
    r"""
    Both sides of ``sum_{P<n} s1(P) s1(n-P) = 5/12 s3(n) + 1/12 s1(n) - 1/2 n s1(n)``.

    >>> ramanujan_convolution(2).holds
    True
    """
    if n < 2:
        raise ValueError("the convolution needs n >= 2")
    lhs = sum(sigma(1, p) * sigma(1, n - p) for p in range(1, n))
    s1, s3 = sigma(1, n), sigma(3, n)
    rhs = Fraction(5, 12) * s3 + Fraction(1, 12) * s1 - Fraction(1, 2) * n * s1
    return ConvolutionCheck(n, lhs, rhs)


def ramanujan_range(n_max: int) -> list[int]:
    """All ``2 <= n <= n_max`` where the convolution identity fails (expected: none)."""
    s1 = np.array(sigma_table(1, n_max).values, dtype=np.int64)
    s3 = sigma_table(3, n_max).values
    s1[0] = 0
    conv = np.convolve(s1, s1)  # conv[n] = sum_P s1(P) s1(n - P), with s1(0) = 0
    bad = []
    for n in range(2, n_max + 1):
        rhs = Fraction(5, 12) * s3[n] + Fraction(1, 12) * int(s1[n]) - Fraction(1, 2) * n * int(s1[n])
        if int(conv[n]) != rhs:
            bad.append(n)
    return bad


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _jordan_factor(n: int) -> Fraction:
    """``n^2 prod_{p | n} (1 - 1/p^2)``."""
    f = Fraction(n * n)
    for p in _prime_factors(n):
        f *= 1 - Fraction(1, p * p)
    return f


def lr_orbit_sizes(n: int) -> tuple[int, ...]:
    r"""
    Orbit sizes of the reduced ``n``-square H(2) surfaces.

    Odd ``n``: ``3/16 (n-1) J(n)`` and ``3/16 (n-3) J(n)`` with
    ``J(n) = n^2 prod (1 - p^-2)``; the second vanishes at ``n = 3`` and is
    then dropped. Even ``n``: one orbit of ``3/8 (n-2) J(n)``.

    >>> lr_orbit_sizes(5)
    (18, 9)
    >>> lr_orbit_sizes(4)
    (9,)
    """
    if n < 3:
        raise ValueError("H(2) needs at least 3 squares")
    j = _jordan_factor(n)
    if n % 2:
        a = _integral(Fraction(3, 16) * (n - 1) * j, f"|A_{n}|")
        b = _integral(Fraction(3, 16) * (n - 3) * j, f"|B_{n}|")
        return (a, b) if b else (a,)
    return (_integral(Fraction(3, 8) * (n - 2) * j, f"even orbit at n={n}"),)


def thresholds(alpha: Stratum | Iterable[int]) -> tuple[int, int, int]:
    r"""
    ``(fewest squares, largest size where visibility is guaranteed, size of
    the split-square non-visibility surface)`` = ``(2g-2+s, 4g+2s-5, 4g-4+2s)``.

    >>> thresholds((2,))
    (3, 5, 6)
    """
    alpha = alpha if isinstance(alpha, Stratum) else Stratum(tuple(alpha))
    if alpha.genus < 2:
        raise ValueError("thresholds need genus at least 2")
    g, s = alpha.genus, alpha.s
    return 2 * g - 2 + s, 4 * g + 2 * s - 5, 4 * g - 4 + 2 * s


@dataclass(frozen=True)
class StratumTally:
    n: int
    total: int
    reduced: int
    visibility: int
    symmetry: int


@dataclass(frozen=True)
class NonvisReport:
    alpha: Stratum
    rows: tuple[StratumTally, ...]

    @property
    def largest_visibility(self) -> int | None:
        """Largest ``n`` in range with a visibility torus."""
        hits = [row.n for row in self.rows if row.visibility]
        return max(hits) if hits else None

    def none_between(self, lo: int, hi: int) -> bool:
        return all(row.visibility == 0 for row in self.rows if lo <= row.n <= hi)


def stratum_surface_keys(n: int, alpha: Stratum) -> set:
    """Canonical keys of the ``n``-square surfaces of a stratum."""
    from .constructions import h11_surfaces, h2_surfaces

    if n < alpha.min_squares:
        return set()
    if alpha == Stratum((2,)):
        return h2_surfaces(n)
    if alpha == Stratum((1, 1)):
        return h11_surfaces(n)
    from .census import stratum_keys

    return set(stratum_keys(n, alpha))


def tally_stratum(n: int, alpha: Stratum) -> StratumTally:
    r"""
    Reduced, visibility and symmetry counts for one stratum and size. The key
    set of a stratum is closed under SL(2,Z), so visibility is decided once
    per orbit.
    """
    from .core import origami_from_key
    from .holonomy import _has_horizontal_unit0
    from .sl2z import orbit_partition
    from .topology import is_reduced

    keys = sorted(stratum_surface_keys(n, alpha))
    if not keys:
        return StratumTally(n, 0, 0, 0, 0)
    orbit_id = orbit_partition(keys)
    size: dict[int, int] = {}
    has_unit: dict[int, bool] = {}
    reduced_orbit: dict[int, bool] = {}
    for k in keys:
        oid = orbit_id[k]
        o = origami_from_key(k)
        size[oid] = size.get(oid, 0) + 1
        has_unit[oid] = has_unit.get(oid, True) and _has_horizontal_unit0(o._r, o._u)
        reduced_orbit.setdefault(oid, is_reduced(o))
    reduced = sum(size[o] for o in size if reduced_orbit[o])
    visible = sum(size[o] for o in size if reduced_orbit[o] and has_unit[o])
    symm = sum(1 for o in size if reduced_orbit[o] and size[o] == 1)
    return StratumTally(n, len(keys), reduced, visible, symm)


def empirical_nonvis_bound(alpha: Stratum | Iterable[int], n_max: int) -> NonvisReport:
    r"""
    For each ``n`` from the stratum's minimum up to ``n_max``, how many reduced
    surfaces there are and how many are visibility tori.

    H(2) and H(1,1) come from their cylinder parametrizations; other strata
    go through the exhaustive census and inherit its size cap.
    """
    alpha = alpha if isinstance(alpha, Stratum) else Stratum(tuple(alpha))
    rows = tuple(tally_stratum(n, alpha) for n in range(alpha.min_squares, n_max + 1))
    return NonvisReport(alpha, rows)


@dataclass(frozen=True)
class UnitSaddleRow:
    n: int
    total: int
    reduced: int
    unit_saddle: int  # reduced surfaces with a unit saddle
    unit_saddle_all: int  # all surfaces with a unit saddle

    @property
    def proportion(self) -> float:
        return self.unit_saddle / self.reduced

    @property
    def reciprocal(self) -> float:
        return self.reduced / self.unit_saddle


def unit_saddle_stats(alpha: Stratum | Iterable[int] = (2,), n_range: Iterable[int] = range(3, 61)) -> list[UnitSaddleRow]:
    r"""
    Per-``n`` tallies of H(2) surfaces with a unit saddle, from the cylinder
    parametrizations deduplicated by a compiled canonical key.
    """
    alpha = alpha if isinstance(alpha, Stratum) else Stratum(tuple(alpha))
    if alpha != Stratum((2,)):
        raise ValueError(f"unit-saddle statistics are only implemented for H(2), not {alpha}")
    from ._kernels import h2_flags

    rows = []
    for n in n_range:
        if n < 3:
            raise ValueError("H(2) needs at least 3 squares")
        keys, reduced, unit = h2_flags(n)
        rows.append(
            UnitSaddleRow(
                n=n,
                total=len(keys),
                reduced=int(reduced.sum()),
                unit_saddle=int((reduced & unit).sum()),
                unit_saddle_all=int(unit.sum()),
            )
        )
    return rows


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float


def linear_fit(xs, ys) -> LinearFit:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot else 1.0
    return LinearFit(float(slope), float(intercept), r2)


def ratio_spread(values) -> tuple[float, float]:
    """``(min, max)`` of a positive sequence, for boundedness checks."""
    vals = list(values)
    return min(vals), max(vals)
