from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from free_group.domain import alphabet
from free_group.exceptions import InvalidParameter


@dataclass(frozen=True)
class FiniteAction:
    """
    r bijections of X = {0, ..., N-1} with point weights lambda.

    Only the generator maps a_i are stored; maps for inverse letters are
    derived once and cached.
    """
    rank: int
    weights: tuple
    maps: tuple

    def __post_init__(self):
        if len(self.maps) != self.rank:
            raise InvalidParameter(f"need {self.rank} generator maps, got {len(self.maps)}")
        for table in self.maps:
            if len(table) != len(self.weights):
                raise InvalidParameter("generator table length differs from the number of points")

    @property
    def size(self):
        return len(self.weights)

    @cached_property
    def is_uniform(self):
        return len(set(self.weights)) <= 1

    @cached_property
    def inverse_maps(self):
        inverses = []
        for table in self.maps:
            inverse = [0] * self.size
            for x, y in enumerate(table):
                inverse[y] = x
            inverses.append(tuple(inverse))
        return tuple(inverses)

    def letter_map(self, letter):
        """Image table of sigma_s for the letter s."""
        if letter.sign == 1:
            return self.maps[letter.index - 1]
        return self.inverse_maps[letter.index - 1]

    @cached_property
    def letter_arrays(self):
        """numpy index arrays of sigma_s, keyed by letter, for vectorised gathers."""
        return {s: np.asarray(self.letter_map(s), dtype=np.int64) for s in alphabet(self.rank)}


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    generator: int = None
    point: int = None
    reason: str = ""

    def __str__(self):
        if self.ok:
            return "ok"
        return f"generator a{self.generator} at point {self.point}: {self.reason}"


@dataclass(frozen=True)
class Observable:
    """Values f(x) per point; exact Fractions unless `approximate` (float mode)."""
    values: tuple
    approximate: bool = False

    def __len__(self):
        return len(self.values)

    def __getitem__(self, x):
        return self.values[x]

    def __iter__(self):
        return iter(self.values)

    @classmethod
    def exact(cls, values):
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def approx(cls, values):
        return cls(tuple(float(v) for v in values), approximate=True)
