r"""
Text format for censuses and inline surfaces.

A census file is a header ``#sts-census v1 n=<n>`` followed by one line per
surface, sorted by its canonical ``sigma`` then ``tau`` images::

    <sigma images>|<tau images>|<zero orders or ->|<flags>

Images and zero orders are comma-separated; ``-`` marks genus one.
"""
from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass

from .census import CensusRecord
from .core import InvalidPermutation, Origami, Permutation, parse_cycles

HEADER = "#sts-census v1 n={n}"
_HEADER_RE = re.compile(r"#sts-census v1 n=(\d+)")


class CensusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CensusLine:
    sigma: tuple[int, ...]
    tau: tuple[int, ...]
    alpha: tuple[int, ...]
    flags: str

    @property
    def origami(self) -> Origami:
        return Origami.from_images(self.sigma, self.tau)

    def format(self) -> str:
        alpha = ",".join(map(str, self.alpha)) if self.alpha else "-"
        return "|".join((",".join(map(str, self.sigma)), ",".join(map(str, self.tau)), alpha, self.flags))

    @classmethod
    def from_record(cls, rec: CensusRecord) -> CensusLine:
        return cls(rec.sigma, rec.tau, rec.stratum.alpha, rec.flags.flags)


@dataclass(frozen=True)
class CensusFile:
    n: int
    lines: tuple[CensusLine, ...]

    @classmethod
    def from_records(cls, n: int, records: Iterable[CensusRecord]) -> CensusFile:
        lines = sorted((CensusLine.from_record(r) for r in records), key=lambda x: (x.sigma, x.tau))
        return cls(n, tuple(lines))


def serialize(census: CensusFile) -> str:
    out = [HEADER.format(n=census.n)]
    out.extend(line.format() for line in census.lines)
    return "\n".join(out) + "\n"


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CensusFormatError(f"bad {what}: {text!r}") from None


def parse(text: str) -> CensusFile:
    lines = text.splitlines()
    if not lines:
        raise CensusFormatError("empty census file")
    m = _HEADER_RE.fullmatch(lines[0].strip())
    if not m:
        raise CensusFormatError(f"bad header {lines[0]!r}")
    n = int(m.group(1))
    out = []
    for num, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split("|")
        if len(parts) != 4:
            raise CensusFormatError(f"line {num}: expected 4 fields, got {len(parts)}")
        sigma = _ints(parts[0], "sigma")
        tau = _ints(parts[1], "tau")
        if len(sigma) != n or len(tau) != n:
            raise CensusFormatError(f"line {num}: permutations must have {n} entries")
        alpha = () if parts[2] == "-" else _ints(parts[2], "zero orders")
        if not set(parts[3]) <= set("RPNHVSCU"):
            raise CensusFormatError(f"line {num}: unknown flag in {parts[3]!r}")
        out.append(CensusLine(sigma, tau, alpha, parts[3]))
    return CensusFile(n, tuple(out))


def _parse_perm(text: str) -> Permutation | tuple[tuple[int, ...], ...]:
    text = text.strip()
    if "(" in text:
        return tuple(parse_cycles(text))  # resolved once n is known
    return Permutation(_ints(text, "images"))


def parse_surface(text: str) -> Origami:
    r"""
    ``sigma|tau`` where each side is cycle notation ``(1,2,3)(4,5)`` or
    one-line images ``2,3,1,5,4``.

    >>> parse_surface("(1,2)(3,4)|(2,3)").n
    4
    >>> parse_surface("2,1|1,2") == parse_surface("(1,2)|()")
    True
    """
    if text.count("|") != 1:
        raise InvalidPermutation(f"expected 'sigma|tau', got {text!r}")
    left, right = (_parse_perm(x) for x in text.split("|"))
    sizes = [p.n for p in (left, right) if isinstance(p, Permutation)]
    if len(set(sizes)) > 1:
        raise InvalidPermutation(f"size mismatch between {left} and {right}")
    if sizes:
        n = sizes[0]
    else:
        n = max([1] + [x for c in left + right for x in c])

    def resolve(p):
        return p if isinstance(p, Permutation) else Permutation.from_cycles(p, n)

    return Origami(resolve(left), resolve(right))
