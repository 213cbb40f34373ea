"""
Relation instance files and covering reports.

Instance:
    points M classes K
    class b k          one line per element
    nu b num/den       one line per element
    folner n b: b1 b2  one line per (n, b)

Covering CSV: instance,disjoint_ok,measure_ok,Cd,Cs,ratio. A sampled
(uncertified) C_s is written as "est:<value>".
"""
import csv
import io
import re

from averaging.formats import format_number
from densities.formats import format_fraction, parse_fraction
from free_group.exceptions import SpecParseError
from relations.domain import FiniteRelation, FolnerFamily

HEADER_RE = re.compile(r'points (\d+) classes (\d+)$')
CLASS_RE = re.compile(r'class (\d+) (\d+)$')
NU_RE = re.compile(r'nu (\d+) (\S+)$')
FOLNER_RE = re.compile(r'folner (\d+) (\d+):((?: \d+)+)$')

COVERING_HEADER = ('instance', 'disjoint_ok', 'measure_ok', 'Cd', 'Cs', 'ratio')


def format_instance(relation, family):
    lines = [f"points {relation.size} classes {len(relation.members)}"]
    lines.extend(f"class {b} {k}" for b, k in enumerate(relation.classes))
    lines.extend(f"nu {b} {format_fraction(w)}" for b, w in enumerate(relation.weights))
    for n, level in enumerate(family.sets, start=1):
        for b, members in enumerate(level):
            lines.append(f"folner {n} {b}: " + " ".join(str(c) for c in sorted(members)))
    return "\n".join(lines) + "\n"


def _element(value, size, offset, text):
    b = int(value)
    if b >= size:
        raise SpecParseError(f"element {b} outside 0..{size - 1}", offset, text)
    return b


def parse_instance(text):
    offset = 0
    size = None
    classes, weights, sets = {}, {}, {}
    for raw in text.splitlines(keepends=True):
        line = raw.strip()
        if line:
            if size is None:
                match = HEADER_RE.match(line)
                if not match:
                    raise SpecParseError("expected header 'points M classes K'", offset, text)
                size = int(match.group(1))
            elif match := CLASS_RE.match(line):
                classes[_element(match.group(1), size, offset, text)] = int(match.group(2))
            elif match := NU_RE.match(line):
                b = _element(match.group(1), size, offset, text)
                weights[b] = parse_fraction(match.group(2), offset + raw.index(match.group(2)), text)
            elif match := FOLNER_RE.match(line):
                n = int(match.group(1))
                if n < 1:
                    raise SpecParseError("Folner index must be >= 1", offset, text)
                b = _element(match.group(2), size, offset, text)
                sets[(n, b)] = frozenset(_element(c, size, offset, text) for c in match.group(3).split())
            else:
                raise SpecParseError(f"unrecognised line {line!r}", offset, text)
        offset += len(raw)
    if size is None:
        raise SpecParseError("empty instance", 0, text)
    missing = [b for b in range(size) if b not in classes or b not in weights]
    if missing:
        raise SpecParseError(f"element {missing[0]} lacks a class or nu line", len(text), text)
    n_max = max((n for n, _ in sets), default=0)
    try:
        levels = tuple(tuple(sets[(n, b)] for b in range(size)) for n in range(1, n_max + 1))
    except KeyError as exc:
        n, b = exc.args[0]
        raise SpecParseError(f"missing folner {n} {b}", len(text), text)
    relation = FiniteRelation(tuple(classes[b] for b in range(size)), tuple(weights[b] for b in range(size)))
    return relation, FolnerFamily(levels)


def format_covering_csv(rows):
    """rows: (instance name, CoveringReport, NonShrinking)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(COVERING_HEADER)
    for name, report, shrink in rows:
        if shrink.value is None:
            cs = ''
        elif shrink.certified:
            cs = format_number(shrink.value)
        else:
            cs = f"est:{format_number(shrink.value)}"
        writer.writerow((
            name,
            str(report.disjoint_ok).lower(),
            str(report.measure_ok).lower(),
            format_number(report.doubling),
            cs,
            format_number(report.ratio),
        ))
    return buffer.getvalue()
