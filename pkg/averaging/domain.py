from dataclasses import dataclass, field

FAMILIES = ('spherical', 'mu', 'sector', 'eta', 'horospherical', 'ball')


@dataclass(frozen=True)
class AverageTable:
    """Averages A_n[f] for a run of indices n, one Observable per index."""
    family: str
    indices: tuple
    values: tuple
    approximate: bool = False

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise ValueError("indices and values must have the same length")

    def at(self, n):
        return self.values[self.indices.index(n)]

    def rows(self):
        return zip(self.indices, self.values)


@dataclass(frozen=True)
class MaximalProfile:
    """max over the computed range of |A_n f|; the sup over all n is truncated to `indices`."""
    indices: tuple
    values: object
    weak_type_rows: tuple = ()


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    error_sup: object
    error_lp: object
    runtime_ms: int = 0


@dataclass
class ConvergenceReport:
    family: str
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    approximate: bool = False
