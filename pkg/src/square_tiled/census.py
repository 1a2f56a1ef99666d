r"""
Exhaustive census of connected origamis with ``n`` squares, one record per
relabelling class.

``sigma`` runs over one representative per cycle type and ``tau`` over all of
``S_n``. Every relabelling class contains a pair whose ``sigma`` is the chosen
representative of its cycle type, so deduplicating canonical keys is enough;
no orbit weights are involved. Work is split into shards by
``(cycle type, tau(1))`` and the shard results are merged into one set, then
sorted, so the output does not depend on the number of workers.

Classification is done once per SL(2,Z)-orbit for the orbit-level flags
(visibility, symmetry): a census of a single ``n`` is closed under the action.
"""
from __future__ import annotations

import itertools
import logging
import os
from collections import Counter
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .core import (
    CanonicalKey,
    Origami,
    _canonical0,
    _is_connected0,
    origami_from_key,
)
from .holonomy import Classification, ImplicationViolation, _has_horizontal_unit0
from .sl2z import _act_S0, _nielsen_fixed0, orbit_partition
from .topology import (
    Stratum,
    _automorphism_count0,
    is_holonomy_torus,
    is_primitive,
    is_reduced,
    stratum,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 9
LARGE_N = 10


class CensusTooLarge(ValueError):
    pass


def partitions(n: int, largest: int | None = None):
    """Integer partitions of ``n`` in non-increasing order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def cycle_type_representative(part) -> tuple[int, ...]:
    """0-based images of ``(1..k1)(k1+1..k1+k2)...``."""
    images = []
    start = 0
    for k in part:
        images.extend(start + (i + 1) % k for i in range(k))
        start += k
    return tuple(images)


def shards(n: int):
    return [(part, first) for part in partitions(n) for first in range(n)]


def _run_shard(args) -> set:
    n, part, first = args
    r = cycle_type_representative(part)
    rest = [x for x in range(n) if x != first]
    keys = set()
    for tail in itertools.permutations(rest):
        u = (first,) + tail
        if _is_connected0(r, u):
            keys.add(tuple(_canonical0(r, u)))
    return keys


def _check_n(n: int, max_n: int, allow_large: bool):
    if n < 1:
        raise ValueError("n must be positive")
    cap = max(max_n, LARGE_N) if allow_large else max_n
    if n > cap:
        raise CensusTooLarge(
            f"n={n} is above the census cap {cap}"
            + ("" if allow_large else f" (n={LARGE_N} needs allow_large)")
        )
    if n >= LARGE_N:
        log.warning("census at n=%d holds millions of classes; expect several GB of memory", n)


def default_workers() -> int:
    return int(os.environ.get("STS_WORKERS", "1"))


def census_keys(
    n: int,
    workers: int | None = None,
    max_n: int = DEFAULT_MAX_N,
    allow_large: bool = False,
    engine: str = "python",
) -> list[CanonicalKey]:
    r"""
    Sorted canonical keys of all connected ``n``-square origamis.

    ``engine="numba"`` runs the enumeration loop compiled; the keys are
    identical to the pure-Python ones.
    """
    _check_n(n, max_n, allow_large)
    if engine == "numba":
        from ._kernels import census_keys_numba

        raw = census_keys_numba(n)
    elif engine == "python":
        workers = workers or default_workers()
        jobs = [(n, part, first) for part, first in shards(n)]
        raw = set()
        if workers <= 1:
            for job in jobs:
                raw |= _run_shard(job)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for keys in pool.map(_run_shard, jobs, chunksize=1):
                    raw |= keys
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return sorted((n,) + tuple(x + 1 for x in k) for k in raw)


@dataclass(frozen=True)
class CensusRecord:
    key: CanonicalKey
    stratum: Stratum
    flags: Classification
    orbit_size: int | None = None

    @property
    def n(self) -> int:
        return self.key[0]

    @property
    def origami(self) -> Origami:
        return origami_from_key(self.key)

    @property
    def sigma(self) -> tuple[int, ...]:
        return self.key[1 : self.n + 1]

    @property
    def tau(self) -> tuple[int, ...]:
        return self.key[self.n + 1 :]


def _local_flags(key):
    """Flags that depend on the surface alone (not on its orbit)."""
    o = origami_from_key(key)
    r, u = o._r, o._u
    st = stratum(o)
    reduced = is_reduced(o)
    if o.n == 1:
        hunit = unit = True
    elif st.genus == 1:
        hunit = unit = False
    else:
        hunit = _has_horizontal_unit0(r, u)
        unit = hunit or _has_horizontal_unit0(*_act_S0(r, u))
    normal = _automorphism_count0(r, u) == o.n
    return dict(
        stratum=st,
        reduced=reduced,
        primitive=is_primitive(o),
        normal=normal,
        holonomy=is_holonomy_torus(o),
        unit_saddle=unit,
        hunit=hunit,
        nielsen=normal and reduced and _nielsen_fixed0(r, u),
    )


def classify_keys(keys: Iterable[CanonicalKey], workers: int | None = None) -> list[CensusRecord]:
    r"""
    Classify an SL(2,Z)-closed collection of keys (e.g. a full census).
    Returns records sorted by key.
    """
    keys = sorted(keys)
    workers = workers or default_workers()
    if workers <= 1:
        local = [_local_flags(k) for k in keys]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            local = list(pool.map(_local_flags, keys, chunksize=256))
    orbit_id = orbit_partition(keys)
    size = Counter(orbit_id.values())
    visible = {}
    for k, f in zip(keys, local):
        oid = orbit_id[k]
        visible[oid] = visible.get(oid, True) and f["reduced"] and f["hunit"]
    records = []
    for k, f in zip(keys, local):
        oid = orbit_id[k]
        symmetry = f["reduced"] and size[oid] == 1
        characteristic = f["normal"] and symmetry
        if characteristic != f["nielsen"]:
            raise AssertionError(f"characteristic tests disagree on {k}")
        flags = Classification(
            stratum=f["stratum"],
            reduced=f["reduced"],
            primitive=f["primitive"],
            normal=f["normal"],
            holonomy=f["holonomy"],
            visibility=visible[oid],
            symmetry=symmetry,
            characteristic=characteristic,
            unit_saddle=f["unit_saddle"],
            orbit_size=size[oid],
        )
        bad = flags.violations()
        if bad:
            raise ImplicationViolation(f"{k}: {bad}")
        records.append(CensusRecord(k, f["stratum"], flags, size[oid]))
    return records


def census(
    n: int,
    filter: Callable[[CensusRecord], bool] | None = None,
    workers: int | None = None,
    max_n: int = DEFAULT_MAX_N,
    allow_large: bool = False,
    engine: str = "python",
) -> list[CensusRecord]:
    """All classified records with ``n`` squares, sorted by key, optionally filtered."""
    keys = census_keys(n, workers=workers, max_n=max_n, allow_large=allow_large, engine=engine)
    records = classify_keys(keys, workers=workers)
    if filter is not None:
        records = [rec for rec in records if filter(rec)]
    return records


def stratum_keys(n: int, alpha: Stratum | Iterable[int], **kw) -> list[CanonicalKey]:
    """Keys of the ``n``-square surfaces in one stratum, without classifying."""
    alpha = alpha if isinstance(alpha, Stratum) else Stratum(tuple(alpha))
    if n < alpha.min_squares:
        return []
    return [k for k in census_keys(n, **kw) if stratum(origami_from_key(k)) == alpha]


def census_stratum(n: int, alpha: Stratum | Iterable[int], **kw) -> list[CensusRecord]:
    r"""
    Census restricted to one stratum. Empty exactly when ``n < 2g - 2 + s``.
    A stratum is a union of SL(2,Z)-orbits, so the restricted key set can be
    classified on its own.
    """
    return classify_keys(stratum_keys(n, alpha, **kw), workers=kw.get("workers"))


@dataclass(frozen=True)
class CensusSummary:
    n: int
    total: int
    reduced: int
    primitive: int
    symmetry: int
    holonomy: int
    non_visibility: int


def summarize(n: int, records: list[CensusRecord]) -> CensusSummary:
    """Counts as in the census tables; fake-torus tallies are over reduced surfaces."""
    red = [r for r in records if r.flags.reduced]
    return CensusSummary(
        n=n,
        total=len(records),
        reduced=len(red),
        primitive=sum(r.flags.primitive for r in records),
        symmetry=sum(r.flags.symmetry for r in red),
        holonomy=sum(r.flags.holonomy for r in red),
        non_visibility=sum(not r.flags.visibility for r in red),
    )
