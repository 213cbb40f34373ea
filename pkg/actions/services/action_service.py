from fractions import Fraction
import logging

from actions.domain import Observable, ValidationReport
from actions.union_find import UnionFind
from free_group.domain import alphabet
from free_group.exceptions import RankMismatch

logger = logging.getLogger(__name__)


class ActionService:
    """Word application, F^2-orbits and E[f | F^2] for finite actions."""

    @staticmethod
    def validate(action):
        """Check each generator map is a bijection preserving lambda."""
        for i, table in enumerate(action.maps, start=1):
            seen = [False] * action.size
            for x, y in enumerate(table):
                if not 0 <= y < action.size:
                    return ValidationReport(False, i, x, f"image {y} outside 0..{action.size - 1}")
                if seen[y]:
                    return ValidationReport(False, i, x, f"image {y} is hit twice")
                seen[y] = True
                if action.weights[y] != action.weights[x]:
                    return ValidationReport(False, i, x, "lambda is not preserved")
        if sum(action.weights, Fraction(0)) != 1:
            return ValidationReport(False, None, None, "lambda does not sum to 1")
        return ValidationReport(True)

    @staticmethod
    def apply_word(action, w, x):
        """w acting on x: letters applied right to left."""
        if w.rank != action.rank:
            raise RankMismatch(action.rank, w.rank)
        for letter in reversed(w.letters):
            x = action.letter_map(letter)[x]
        return x

    @staticmethod
    def even_orbits(action):
        """
        Orbits of F^2 = <s t : s, t in S>, as sorted parts ordered by their
        smallest point.
        """
        uf = UnionFind(action.size)
        letters = alphabet(action.rank)
        for s in letters:
            first = action.letter_map(s)
            for t in letters:
                second = action.letter_map(t)
                for x in range(action.size):
                    uf.union(x, first[second[x]])
        orbits = uf.groups()
        logger.debug(f"Found {len(orbits)} even orbits on {action.size} points")
        return orbits

    @staticmethod
    def orbit_labels(action):
        """Point -> index of its even orbit."""
        labels = [0] * action.size
        for label, orbit in enumerate(ActionService.even_orbits(action)):
            for x in orbit:
                labels[x] = label
        return labels

    @staticmethod
    def point_orbit(action, x):
        for orbit in ActionService.even_orbits(action):
            if x in orbit:
                return orbit
        return []

    @staticmethod
    def orbit_count(action):
        return len(ActionService.even_orbits(action))

    @staticmethod
    def cond_exp_even(action, f):
        """E[f | F^2](x): lambda-weighted mean of f over the even orbit of x."""
        values = [None] * action.size
        for orbit in ActionService.even_orbits(action):
            mass = sum((action.weights[y] for y in orbit), Fraction(0))
            if f.approximate:
                mean = sum(float(action.weights[y]) * f[y] for y in orbit) / float(mass)
            else:
                mean = sum((action.weights[y] * f[y] for y in orbit), Fraction(0)) / mass
            for y in orbit:
                values[y] = mean
        return Observable(tuple(values), f.approximate)
