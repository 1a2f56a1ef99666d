r"""
Command line: ``square-tiled enumerate|classify|verify|stats``.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage or
input errors.
"""
from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from collections import Counter
from collections.abc import Callable, Sequence

from . import census as census_mod
from . import formulas
from .censusfile import CensusFile, CensusFormatError, parse, parse_surface, serialize
from .constructions import h2_surfaces
from .core import DisconnectedOrigami, InvalidPermutation, origami_from_key
from .holonomy import FLAG_LETTERS, ImplicationViolation, classify
from .reference import CENSUS_COUNTS, FAKE_TORUS_COUNTS, LARGEST_VISIBILITY
from .sl2z import orbit_partition
from .topology import Stratum, is_reduced

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _flag_filter(spec: str | None) -> Callable | None:
    r"""
    ``"RV"`` keeps records with both flags set; ``"R!V"`` keeps reduced
    records without visibility.
    """
    if not spec:
        return None
    want, avoid = set(), set()
    negate = False
    names = {ch: name for name, ch in FLAG_LETTERS}
    for ch in spec:
        if ch == "!":
            negate = True
            continue
        if ch not in names:
            raise UsageError(f"unknown flag letter {ch!r} in filter {spec!r}")
        (avoid if negate else want).add(ch)
        negate = False

    def keep(rec):
        flags = set(rec.flags.flags)
        return want <= flags and not (avoid & flags)

    return keep


def _parse_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"expected a range like 10..55, got {text!r}") from None


def cmd_enumerate(args) -> int:
    keep = _flag_filter(args.filter)
    kw = dict(workers=args.workers, allow_large=args.allow_large, engine=args.engine)
    if args.stratum:
        records = census_mod.census_stratum(args.n, Stratum.parse(args.stratum), **kw)
    else:
        records = census_mod.census(args.n, **kw)
    if keep:
        records = [r for r in records if keep(r)]
    text = serialize(CensusFile.from_records(args.n, records))
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    s = census_mod.summarize(args.n, records)
    print(
        f"total={s.total} reduced={s.reduced} primitive={s.primitive} "
        f"symmetry={s.symmetry} holonomy={s.holonomy} non_visibility={s.non_visibility}"
    )
    return EXIT_OK


def _report(o, with_orbit: bool) -> str:
    c = classify(o, with_orbit=with_orbit)
    parts = [
        str(o),
        f"n={o.n}",
        f"stratum={c.stratum}",
        f"genus={c.stratum.genus}",
        f"flags={c.flags or '-'}",
    ]
    if c.orbit_size is not None:
        parts.append(f"orbit={c.orbit_size}")
    return " ".join(parts)


def cmd_classify(args) -> int:
    source = args.input
    if os.path.exists(source):
        with open(source, encoding="ascii") as fh:
            text = fh.read()
        if text.startswith("#sts-census"):
            surfaces = [line.origami for line in parse(text).lines]
        else:
            surfaces = [parse_surface(x) for x in text.splitlines() if x.strip() and not x.startswith("#")]
    else:
        surfaces = [parse_surface(source)]
    for o in surfaces:
        print(_report(o, args.orbit))
    return EXIT_OK


# verification suites --------------------------------------------------------


def _suite_formulas(max_n: int):
    yield (
        f"two-cylinder H(2) count matches brute force for 3..{max_n}",
        all(formulas.two_cyl_count_h2(n) == formulas.two_cyl_count_brute(n) for n in range(3, max_n + 1)),
    )
    yield (f"convolution identity for 2..{max_n}", not formulas.ramanujan_range(max_n))
    for x in (2, 3):
        yield (f"sigma_{x} bounds for n <= {max_n}", formulas.sigma_bounds_hold(x, max_n))
    for n in range(3, min(max_n, 12) + 1):
        keys = h2_surfaces(n)
        red = [k for k in keys if is_reduced(origami_from_key(k))]
        sizes = sorted(Counter(orbit_partition(red).values()).values(), reverse=True)
        yield (f"H(2) orbit sizes at n={n}", tuple(sizes) == formulas.lr_orbit_sizes(n))


def _suite_census(max_n: int):
    if max_n > census_mod.DEFAULT_MAX_N:
        raise UsageError(f"census suite supports --max-n <= {census_mod.DEFAULT_MAX_N}")
    for n in range(1, max_n + 1):
        if n <= 8:
            s = census_mod.summarize(n, census_mod.census(n))
            got = (s.total, s.reduced, s.primitive)
        else:
            from ._kernels import census_keys_numba, reduced_primitive_counts

            keys = census_keys_numba(n)
            got = (len(keys),) + reduced_primitive_counts(keys, n)
        yield (f"census counts n={n}", got == CENSUS_COUNTS[n])
        if n in FAKE_TORUS_COUNTS:
            yield (
                f"fake-torus counts n={n}",
                (s.symmetry, s.holonomy, s.non_visibility) == FAKE_TORUS_COUNTS[n],
            )


def _suite_thresholds(max_n: int):
    for alpha, largest in LARGEST_VISIBILITY.items():
        st = Stratum(alpha)
        yield (
            f"thresholds {st}",
            formulas.thresholds(st) == (st.min_squares, 4 * st.genus + 2 * st.s - 5, 4 * st.genus - 4 + 2 * st.s),
        )
        if max_n < largest:
            continue
        report = formulas.empirical_nonvis_bound(st, max_n)
        yield (f"largest visibility torus in {st} up to n={max_n} is n={largest}", report.largest_visibility == largest)


SUITES = {
    "formulas": _suite_formulas,
    "census": _suite_census,
    "thresholds": _suite_thresholds,
}


def cmd_verify(args) -> int:
    failed = 0
    for name, ok in SUITES[args.suite](args.max_n):
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        failed += not ok
    print(f"{args.suite}: {'ok' if not failed else f'{failed} failed'}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_stats(args) -> int:
    st = Stratum.parse(args.stratum)
    if st != Stratum((2,)):
        raise UsageError(f"stats only supports stratum 2, got {st}")
    rows = formulas.unit_saddle_stats(st, _parse_range(args.n_range))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "total", "reduced", "unit_saddle", "proportion", "reciprocal"])
        for r in rows:
            w.writerow([r.n, r.total, r.reduced, r.unit_saddle, f"{r.proportion:.6f}", f"{r.reciprocal:.6f}"])
    finally:
        if out is not sys.stdout:
            out.close()
    if len(rows) >= 3:
        fit = formulas.linear_fit([r.n for r in rows], [r.reciprocal for r in rows])
        print(f"reciprocal fit: slope={fit.slope:.6f} intercept={fit.intercept:.6f} r2={fit.r2:.6f}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="square-tiled", description="Square-tiled surface census and classification.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="write the census of n-square surfaces")
    e.add_argument("n", type=int)
    e.add_argument("--stratum", help="zero orders, e.g. 2 or 1,1")
    e.add_argument("--filter", help="flag letters to require, '!' negates the next one")
    e.add_argument("--out", help="census file to write")
    e.add_argument("--workers", type=int, default=None, help="processes (default: $STS_WORKERS or 1)")
    e.add_argument("--allow-large", action="store_true", help=f"permit n={census_mod.LARGE_N}")
    e.add_argument("--engine", choices=("python", "numba"), default="python")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("classify", help="classify inline 'sigma|tau' or every surface in a file")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--orbit", action="store_true", help="also report the SL(2,Z)-orbit size")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="run a pass/fail check suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--max-n", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="unit-saddle statistics as CSV")
    s.add_argument("--stratum", default="2")
    s.add_argument("--n-range", required=True, help="inclusive range a..b")
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (
        UsageError,
        CensusFormatError,
        InvalidPermutation,
        DisconnectedOrigami,
        census_mod.CensusTooLarge,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ImplicationViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
