from itertools import product
import logging

from free_group.domain import Letter, ReducedWord, alphabet
from free_group.exceptions import InvalidParameter, RankMismatch

logger = logging.getLogger(__name__)


class WordService:
    """Reduced-word arithmetic and sphere enumeration in F_r."""

    @staticmethod
    def reduce(seq, rank):
        """
        Freely reduce a sequence of letters (or reduced words) to normal form.

        Args:
            seq: iterable of Letter and/or ReducedWord items, read left to right
            rank: rank context every item must share

        Returns:
            ReducedWord equal to the product of seq
        """
        stack = []
        for item in seq:
            if isinstance(item, ReducedWord):
                if item.rank != rank:
                    raise RankMismatch(rank, item.rank)
                letters = item.letters
            else:
                letters = (item,)
            for letter in letters:
                if letter.index > rank:
                    raise RankMismatch(rank, f"letter {letter}")
                if stack and stack[-1] == letter.inverse():
                    stack.pop()
                else:
                    stack.append(letter)
        return ReducedWord.trusted(rank, tuple(stack))

    @staticmethod
    def multiply(u, v):
        """Return (uv, k) where k letters cancelled at the junction."""
        if u.rank != v.rank:
            raise RankMismatch(u.rank, v.rank)
        k = 0
        limit = min(len(u), len(v))
        while k < limit and u.letters[-1 - k] == v.letters[k].inverse():
            k += 1
        letters = u.letters[:len(u) - k] + v.letters[k:]
        return ReducedWord.trusted(u.rank, letters), k

    @staticmethod
    def product(*words):
        """Product of several words; the cancellation counts are dropped."""
        result = ReducedWord.identity(words[0].rank)
        for w in words:
            result, _ = WordService.multiply(result, w)
        return result

    @staticmethod
    def invert(w):
        return ReducedWord.trusted(w.rank, tuple(letter.inverse() for letter in reversed(w.letters)))

    @staticmethod
    def distance(g1, g2):
        """Word metric d(g1, g2) = |g1^-1 g2|."""
        word, _ = WordService.multiply(WordService.invert(g1), g2)
        return len(word)

    @staticmethod
    def in_even_subgroup(w):
        return len(w) % 2 == 0

    @staticmethod
    def sphere_size(rank, n):
        if n < 0:
            raise InvalidParameter(f"radius must be >= 0, got {n}")
        if n == 0:
            return 1
        return 2 * rank * (2 * rank - 1) ** (n - 1)

    @staticmethod
    def ball_size(rank, n):
        return sum(WordService.sphere_size(rank, m) for m in range(n + 1))

    @staticmethod
    def sphere(rank, n):
        """Lazily yield S_n(e) in lexicographic order."""
        if n < 0:
            raise InvalidParameter(f"radius must be >= 0, got {n}")
        yield from WordService.words_with_prefix(ReducedWord.identity(rank), n)

    @staticmethod
    def ball(rank, n):
        """Lazily yield B_n(e): by length, then lexicographically."""
        for m in range(n + 1):
            yield from WordService.sphere(rank, m)

    @staticmethod
    def words_with_prefix(prefix, n):
        """
        Lazily yield the words of S_n(e) that begin with prefix.

        Depth-first over children in canonical letter order, so the output is
        lexicographic. Yields nothing when n < |prefix|.
        """
        rank = prefix.rank
        letters = alphabet(rank)
        if n < len(prefix):
            return
        stack = [list(prefix.letters)]
        # explicit stack of partial words; children pushed in reverse order
        while stack:
            current = stack.pop()
            if len(current) == n:
                yield ReducedWord.trusted(rank, tuple(current))
                continue
            last = current[-1] if current else None
            for letter in reversed(letters):
                if last is not None and letter == last.inverse():
                    continue
                stack.append(current + [letter])

    @staticmethod
    def children(w):
        """The reduced one-letter extensions of w in canonical order."""
        last = w.letters[-1] if w.letters else None
        return [
            w.extend(letter) for letter in alphabet(w.rank)
            if last is None or letter != last.inverse()
        ]

    @staticmethod
    def raw_strings(rank, n):
        """All (2r)^n letter strings of length n, unreduced; oracle input."""
        return product(alphabet(rank), repeat=n)

    @staticmethod
    def generator(rank, index, sign=1):
        return ReducedWord(rank, (Letter(index, sign),))
