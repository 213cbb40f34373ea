from dataclasses import dataclass, field
from fractions import Fraction

from free_group.exceptions import InvalidParameter


@dataclass(frozen=True)
class BoundaryDensity:
    """
    A simple density on the boundary: constant value psi_w on each depth-m
    cylinder O_w. Words missing from `values` carry 0. Depth 0 means the
    constant function values[e].
    """
    rank: int
    depth: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.depth < 0:
            raise InvalidParameter(f"density depth must be >= 0, got {self.depth}")
        for word, value in self.values.items():
            if len(word) != self.depth or word.rank != self.rank:
                raise InvalidParameter(f"density key {word} does not have depth {self.depth}")
            if value < 0:
                raise InvalidParameter(f"density value at {word} is negative")

    def value(self, word):
        """psi on any cylinder at least as deep as the density."""
        return self.values.get(word.prefix(self.depth), Fraction(0))


@dataclass(frozen=True)
class SignedDensity(BoundaryDensity):
    """Differences of densities; values may be negative."""

    def __post_init__(self):
        if self.depth < 0:
            raise InvalidParameter(f"density depth must be >= 0, got {self.depth}")


@dataclass(frozen=True)
class SphereMeasure:
    """
    Weights on the sphere S_n(e).

    Explicit form (factor_depth None): one weight per word of S_n(e).
    Factored form: one weight per depth-d prefix w; every word of S_n(e)
    beginning with w carries that weight. mu_psi and eta_psi use the
    factored form so large radii stay representable.
    """
    rank: int
    radius: int
    weights: dict = field(default_factory=dict)
    factor_depth: int = None

    def __post_init__(self):
        key_length = self.radius if self.factor_depth is None else self.factor_depth
        if self.factor_depth is not None and not 0 <= self.factor_depth <= self.radius:
            raise InvalidParameter(f"factor depth {self.factor_depth} outside 0..{self.radius}")
        for word, weight in self.weights.items():
            if len(word) != key_length or word.rank != self.rank:
                raise InvalidParameter(f"measure key {word} does not have length {key_length}")
            if weight < 0:
                raise InvalidParameter(f"measure weight at {word} is negative")

    @property
    def is_factored(self):
        return self.factor_depth is not None

    @property
    def key_length(self):
        return self.radius if self.factor_depth is None else self.factor_depth

    def multiplicity(self):
        """Number of sphere words that share one key."""
        r, n, d = self.rank, self.radius, self.key_length
        if d == n:
            return 1
        if d == 0:
            return 2 * r * (2 * r - 1) ** (n - 1)
        return (2 * r - 1) ** (n - d)

    def weight(self, g):
        if len(g) != self.radius:
            return Fraction(0)
        return self.weights.get(g.prefix(self.key_length), Fraction(0))

    def total_mass(self):
        return sum(self.weights.values(), Fraction(0)) * self.multiplicity()
