from dataclasses import dataclass, field

from boundary.exceptions import InsufficientDepth
from free_group.domain import ReducedWord
from free_group.exceptions import InvalidParameter
from free_group.services.word_service import WordService


@dataclass(frozen=True, slots=True)
class BoundaryPrefix:
    """
    A boundary point xi known to depth L, or equally the cylinder O_word.

    Coordinates are 1-based to match xi = (xi_1, xi_2, ...).
    """
    word: ReducedWord

    def __post_init__(self):
        if len(self.word) < 1:
            raise InsufficientDepth("boundary prefix must have depth >= 1", 1, 0)

    @property
    def rank(self):
        return self.word.rank

    @property
    def depth(self):
        return len(self.word)

    def coordinate(self, i):
        return self.word.letters[i - 1]

    def head(self, k):
        """pi_k: the first k coordinates as a word."""
        if k > self.depth:
            raise InsufficientDepth("prefix too short", k, self.depth)
        return self.word.prefix(k)

    def require_depth(self, needed, what="operation"):
        if self.depth < needed:
            raise InsufficientDepth(f"{what} needs a deeper prefix", needed, self.depth)

    def __str__(self):
        return str(self.word)


@dataclass(frozen=True, slots=True)
class AnnulusSet:
    """O'(g) = O(stem) - O(stem . excluded_child), kept structurally."""
    stem: ReducedWord
    excluded_child: object

    def __post_init__(self):
        if len(self.stem) < 1:
            raise InvalidParameter("annulus stem must be non-empty")
        # raises if stem . excluded_child is not reduced
        self.stem.extend(self.excluded_child)

    @property
    def excluded(self):
        return self.stem.extend(self.excluded_child)

    def __str__(self):
        return f"{self.stem}!{self.excluded_child}"


@dataclass(frozen=True)
class PrefixPermutation:
    """
    A bijection beta of depth-m reduced words that fixes the last coordinate,
    stored sparsely (words not in `moved` are fixed). Acting on a deeper
    prefix it rewrites the first m coordinates and keeps the rest.
    """
    rank: int
    order: int
    moved: dict = field(default_factory=dict)

    def image(self, word):
        return self.moved.get(word, word)

    def apply(self, prefix):
        prefix.require_depth(self.order, "inner automorphism")
        head = prefix.word.prefix(self.order)
        image = self.image(head)
        if image == head:
            return prefix
        return BoundaryPrefix(ReducedWord(self.rank, image.letters + prefix.word.letters[self.order:]))

    def table(self):
        """Full table over S_m(e), in lexicographic order of the source word."""
        return {w: self.image(w) for w in WordService.sphere(self.rank, self.order)}

    @property
    def is_identity(self):
        return all(k == v for k, v in self.moved.items())
