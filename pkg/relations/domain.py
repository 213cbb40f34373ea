from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from relations.exceptions import InvalidRelation


@dataclass(frozen=True)
class FiniteRelation:
    """
    Ground set {0, ..., M-1} with a class id and a weight nu(b) per element.

    Two elements are related iff they share a class. `labels` optionally
    names the elements (boundary words for the boundary instance).
    """
    classes: tuple
    weights: tuple
    labels: tuple = ()

    def __post_init__(self):
        if len(self.classes) != len(self.weights):
            raise InvalidRelation("class and weight tables differ in length")

    @property
    def size(self):
        return len(self.classes)

    @cached_property
    def members(self):
        """class id -> sorted tuple of its elements."""
        groups = {}
        for b, label in enumerate(self.classes):
            groups.setdefault(label, []).append(b)
        return {label: tuple(group) for label, group in groups.items()}

    def class_of(self, b):
        return self.members[self.classes[b]]

    def measure(self, elements):
        return sum((self.weights[b] for b in set(elements)), Fraction(0))

    def label(self, b):
        return self.labels[b] if self.labels else str(b)


@dataclass(frozen=True)
class FolnerFamily:
    """sets[n - 1][b] is F_n(b), a frozenset, for n = 1..n_max."""
    sets: tuple

    @property
    def n_max(self):
        return len(self.sets)

    def get(self, n, b):
        return self.sets[n - 1][b]

    @cached_property
    def is_centered(self):
        return all(b in level[b] for level in self.sets for b in range(len(level)))


@dataclass(frozen=True)
class InnerAutomorphism:
    table: tuple

    def __call__(self, b):
        return self.table[b]

    def image(self, elements):
        return frozenset(self.table[b] for b in elements)


@dataclass(frozen=True)
class TieBreak:
    """Injective integer labels T(b)."""
    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise InvalidRelation("tie-break labels must be distinct")

    def __getitem__(self, b):
        return self.labels[b]

    @classmethod
    def identity(cls, size):
        return cls(tuple(range(size)))


@dataclass(frozen=True)
class BoundaryInstance:
    """The relation on depth-L prefixes with the ball and sphere Folner families."""
    relation: FiniteRelation
    ball: FolnerFamily
    sphere: FolnerFamily
    prefixes: tuple

    @cached_property
    def index(self):
        return {p: b for b, p in enumerate(self.prefixes)}


@dataclass(frozen=True)
class CoveringReport:
    selected: tuple
    disjoint_ok: bool
    measure_ok: bool
    selected_mass: Fraction
    covered_mass: Fraction
    doubling: Fraction

    @property
    def ratio(self):
        """nu(Y~) / nu(Z~); bounded by the doubling constant."""
        if not self.selected_mass:
            return Fraction(0)
        return self.covered_mass / self.selected_mass


@dataclass(frozen=True)
class NonShrinking:
    value: Fraction
    certified: bool
    trials: int = 0


@dataclass(frozen=True)
class MaximalCheck:
    mass: Fraction
    bound: object
    passed: bool
    certified: bool
