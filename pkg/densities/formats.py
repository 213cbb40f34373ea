"""
Line-oriented dumps.

Density:        "rank r depth m", then "<word> <num>/<den>" per depth-m word.
Sphere measure: "rank r radius n" (explicit) or "rank r radius n factor d"
                (one weight per depth-d prefix), then "<word> <num>/<den>".
"""
from fractions import Fraction
import re

from densities.domain import BoundaryDensity, SphereMeasure
from densities.services.density_service import DensityService
from free_group.exceptions import InvalidParameter, SpecParseError
from free_group.formats import parse_word
from free_group.services.word_service import WordService

DENSITY_HEADER = re.compile(r'rank (\d+) depth (\d+)$')
MEASURE_HEADER = re.compile(r'rank (\d+) radius (\d+)(?: factor (\d+))?$')
FRACTION_RE = re.compile(r'-?\d+(?:/\d+)?$')


def format_fraction(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text, position, source=""):
    if not FRACTION_RE.match(text):
        raise SpecParseError(f"expected num/den, got {text!r}", position, source)
    return Fraction(text)


def _lines(text):
    """Yield (offset, line) for non-blank lines, offsets into text."""
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.rstrip('\r\n')
        if line.strip():
            yield offset, line
        offset += len(raw)


def _entries(lines, rank, text, key_length):
    table = {}
    for offset, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise SpecParseError("expected '<word> <num>/<den>'", offset, text)
        word = parse_word(parts[0], rank, offset)
        if len(word) != key_length:
            raise SpecParseError(f"word {parts[0]} does not have length {key_length}", offset, text)
        if word in table:
            raise SpecParseError(f"duplicate entry for {parts[0]}", offset, text)
        table[word] = parse_fraction(parts[1], offset + line.index(parts[1]), text)
    return table


def format_density(psi):
    lines = [f"rank {psi.rank} depth {psi.depth}"]
    for w in WordService.sphere(psi.rank, psi.depth):
        lines.append(f"{w} {format_fraction(psi.values.get(w, 0))}")
    return "\n".join(lines) + "\n"


def parse_density(text):
    lines = _lines(text)
    offset, header = next(lines, (0, ""))
    match = DENSITY_HEADER.match(header.strip())
    if not match:
        raise SpecParseError("expected header 'rank r depth m'", offset, text)
    rank, depth = int(match.group(1)), int(match.group(2))
    table = _entries(lines, rank, text, depth)
    try:
        return BoundaryDensity(rank, depth, {w: v for w, v in table.items() if v})
    except InvalidParameter as exc:
        raise SpecParseError(str(exc), offset, text)


def format_measure(mu):
    header = f"rank {mu.rank} radius {mu.radius}"
    if mu.is_factored:
        header += f" factor {mu.factor_depth}"
    lines = [header]
    for w in WordService.sphere(mu.rank, mu.key_length):
        lines.append(f"{w} {format_fraction(mu.weights.get(w, 0))}")
    return "\n".join(lines) + "\n"


def parse_measure(text):
    lines = _lines(text)
    offset, header = next(lines, (0, ""))
    match = MEASURE_HEADER.match(header.strip())
    if not match:
        raise SpecParseError("expected header 'rank r radius n'", offset, text)
    rank, radius = int(match.group(1)), int(match.group(2))
    factor = int(match.group(3)) if match.group(3) is not None else None
    table = _entries(lines, rank, text, radius if factor is None else factor)
    try:
        return SphereMeasure(rank, radius, {w: v for w, v in table.items() if v}, factor_depth=factor)
    except InvalidParameter as exc:
        raise SpecParseError(str(exc), offset, text)


def parse_density_spec(spec, rank):
    """'uniform', 'sector:<word>' or 'file:<path>'."""
    kind, _, arg = spec.partition(':')
    if kind == 'uniform' and not arg:
        return DensityService.constant_density(rank)
    if kind == 'sector':
        return DensityService.sector_density(parse_word(arg, rank, len(kind) + 1))
    if kind == 'file' and arg:
        with open(arg) as handle:
            psi = parse_density(handle.read())
        if psi.rank != rank:
            raise SpecParseError(f"density file has rank {psi.rank}, expected {rank}", 0, spec)
        return psi
    raise SpecParseError(f"unknown density spec {spec!r}", 0, spec)
