"""
Action files:
    rank r points N
    lambda x num/den        (optional, per point; omitted means uniform)
    gen i: j0 j1 ... j_(N-1)
Observable files: one "obs x value" line per point.
"""
import re

from actions.domain import Observable
from actions.exceptions import InvalidAction
from actions.services.action_builder_service import ActionBuilderService
from actions.services.action_service import ActionService
from actions.services.observable_service import ObservableService
from densities.formats import format_fraction, parse_fraction
from free_group.exceptions import InvalidParameter, SpecParseError

ACTION_HEADER = re.compile(r'rank (\d+) points (\d+)$')
LAMBDA_LINE = re.compile(r'lambda (\d+) (\S+)$')
GEN_LINE = re.compile(r'gen (\d+):((?: \d+)*)$')
OBS_LINE = re.compile(r'obs (\d+) (\S+)$')


def _lines(text):
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.rstrip('\r\n')
        if line.strip() and not line.lstrip().startswith('#'):
            yield offset, line.strip()
        offset += len(raw)


def parse_action(text):
    lines = _lines(text)
    offset, header = next(lines, (0, ""))
    match = ACTION_HEADER.match(header)
    if not match:
        raise SpecParseError("expected header 'rank r points N'", offset, text)
    rank, size = int(match.group(1)), int(match.group(2))
    weights = {}
    maps = {}
    for offset, line in lines:
        if m := LAMBDA_LINE.match(line):
            x = int(m.group(1))
            if x >= size:
                raise SpecParseError(f"point {x} outside 0..{size - 1}", offset, text)
            weights[x] = parse_fraction(m.group(2), offset + m.start(2), text)
        elif m := GEN_LINE.match(line):
            i = int(m.group(1))
            if not 1 <= i <= rank:
                raise SpecParseError(f"generator {i} outside 1..{rank}", offset, text)
            table = [int(y) for y in m.group(2).split()]
            if len(table) != size:
                raise SpecParseError(f"gen {i} lists {len(table)} images, expected {size}", offset, text)
            maps[i] = table
        else:
            raise SpecParseError(f"unrecognised line {line!r}", offset, text)
    if sorted(maps) != list(range(1, rank + 1)):
        raise SpecParseError(f"expected one gen line for each of 1..{rank}", len(text), text)
    if weights and len(weights) != size:
        raise SpecParseError("lambda must be given for every point or for none", len(text), text)
    lam = [weights[x] for x in range(size)] if weights else None
    return ActionBuilderService.from_permutations(lam, [maps[i] for i in range(1, rank + 1)])


def format_action(action):
    lines = [f"rank {action.rank} points {action.size}"]
    if not action.is_uniform:
        lines.extend(f"lambda {x} {format_fraction(w)}" for x, w in enumerate(action.weights))
    for i, table in enumerate(action.maps, start=1):
        lines.append(f"gen {i}: " + " ".join(str(y) for y in table))
    return "\n".join(lines) + "\n"


def parse_observable(text, action):
    values = {}
    for offset, line in _lines(text):
        m = OBS_LINE.match(line)
        if not m:
            raise SpecParseError(f"expected 'obs x value', got {line!r}", offset, text)
        x = int(m.group(1))
        if x >= action.size:
            raise SpecParseError(f"point {x} outside 0..{action.size - 1}", offset, text)
        values[x] = parse_fraction(m.group(2), offset + m.start(2), text)
    missing = [x for x in range(action.size) if x not in values]
    if missing:
        raise SpecParseError(f"no value for point {missing[0]}", len(text), text)
    return Observable.exact(values[x] for x in range(action.size))


def parse_action_spec(spec, seed=0, rank=2):
    """'sanov:N', 'random:N[:blocks]', 'swap' or 'file:<path>'."""
    kind, _, arg = spec.partition(':')
    try:
        if kind == 'sanov':
            return ActionBuilderService.sanov_mod(int(arg))
        if kind == 'random':
            size, _, blocks = arg.partition(':')
            return ActionBuilderService.random_action(int(size), seed, rank, int(blocks or 1))
        if kind == 'swap' and not arg:
            return ActionBuilderService.two_point_swap(rank)
    except ValueError:
        raise SpecParseError(f"expected an integer in {spec!r}", len(kind) + 1, spec)
    except (InvalidParameter, InvalidAction) as exc:
        raise SpecParseError(str(exc), len(kind) + 1, spec)
    if kind == 'file' and arg:
        with open(arg) as handle:
            return parse_action(handle.read())
    raise SpecParseError(f"unknown action spec {spec!r}", 0, spec)


def parse_observable_spec(spec, action, approximate=False):
    """
    'indicator:x', 'centered-indicator:x' (the indicator minus its
    conditional expectation on the F^2-orbits) or 'file:<path>'.
    """
    kind, _, arg = spec.partition(':')
    if kind == 'file' and arg:
        with open(arg) as handle:
            f = parse_observable(handle.read(), action)
    elif kind in ('indicator', 'centered-indicator'):
        try:
            f = ObservableService.indicator(action, int(arg))
        except ValueError:
            raise SpecParseError(f"expected a point index in {spec!r}", len(kind) + 1, spec)
        except InvalidParameter as exc:
            raise SpecParseError(str(exc), len(kind) + 1, spec)
        if kind == 'centered-indicator':
            f = ObservableService.difference(f, ActionService.cond_exp_even(action, f))
    else:
        raise SpecParseError(f"unknown observable spec {spec!r}", 0, spec)
    return Observable.approx(f) if approximate else f
