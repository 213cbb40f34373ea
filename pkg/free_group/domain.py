"""
Value types for the free group F_r = <a1, ..., ar>.

Letters are ordered a1 < A1 < a2 < A2 < ... (capital = inverse). That order
fixes every iteration order in the lab and the tie-breaking used by the
boundary maps.
"""
from dataclasses import dataclass
from functools import total_ordering

from free_group.exceptions import InvalidLetter, InvalidParameter, RankMismatch


@total_ordering
@dataclass(frozen=True, slots=True)
class Letter:
    index: int
    sign: int

    def __post_init__(self):
        if self.index < 1:
            raise InvalidLetter(f"letter index must be >= 1, got {self.index}")
        if self.sign not in (1, -1):
            raise InvalidLetter(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self):
        return Letter(self.index, -self.sign)

    @property
    def sort_key(self):
        return (self.index, 0 if self.sign == 1 else 1)

    def __lt__(self, other):
        if not isinstance(other, Letter):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __str__(self):
        return f"{'a' if self.sign == 1 else 'A'}{self.index}"

    def __repr__(self):
        return f"Letter({self})"


def alphabet(rank):
    """The symmetric generating set S in canonical order."""
    return tuple(Letter(i, s) for i in range(1, rank + 1) for s in (1, -1))


@dataclass(frozen=True, slots=True)
class ReducedWord:
    """
    An element of F_r in reduced form.

    Construction validates reducedness and letter range; use
    WordService.reduce for arbitrary letter sequences.
    """
    rank: int
    letters: tuple = ()

    def __post_init__(self):
        if self.rank < 2:
            raise InvalidParameter(f"rank must be >= 2, got {self.rank}")
        letters = tuple(self.letters)
        object.__setattr__(self, 'letters', letters)
        for i, letter in enumerate(letters):
            if letter.index > self.rank:
                raise RankMismatch(self.rank, f"letter {letter}")
            if i and letters[i - 1] == letter.inverse():
                raise InvalidLetter(f"word is not reduced at position {i}")

    @classmethod
    def identity(cls, rank):
        return cls(rank, ())

    @classmethod
    def trusted(cls, rank, letters):
        """Skip validation; for letters already known to be reduced and in range."""
        word = object.__new__(cls)
        object.__setattr__(word, 'rank', rank)
        object.__setattr__(word, 'letters', letters)
        return word

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        return self.letters[item]

    @property
    def is_identity(self):
        return not self.letters

    def prefix(self, k):
        return ReducedWord.trusted(self.rank, self.letters[:k])

    def suffix(self, start):
        return ReducedWord.trusted(self.rank, self.letters[start:])

    def extend(self, letter):
        """Append one letter; it must not cancel the last one."""
        if letter.index > self.rank:
            raise RankMismatch(self.rank, f"letter {letter}")
        if self.letters and self.letters[-1] == letter.inverse():
            raise InvalidLetter(f"{letter} cancels the last letter of {self}")
        return ReducedWord.trusted(self.rank, self.letters + (letter,))

    def sort_key(self):
        return (len(self.letters), tuple(letter.sort_key for letter in self.letters))

    def __str__(self):
        if not self.letters:
            return "e"
        return "".join(str(letter) for letter in self.letters)

    def __repr__(self):
        return f"ReducedWord(r={self.rank}, {self})"
