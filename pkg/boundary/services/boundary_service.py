from fractions import Fraction
import logging

from boundary.domain import AnnulusSet, BoundaryPrefix
from boundary.exceptions import EvenRadiusRequired, InsufficientDepth
from free_group.domain import ReducedWord
from free_group.exceptions import InvalidParameter, RankMismatch
from free_group.services.word_service import WordService

logger = logging.getLogger(__name__)

FOLNER_KINDS = ('ball', 'sphere')


class BoundaryService:
    """Cylinders, the boundary action and horospheres at finite depth."""

    @staticmethod
    def cylinder_measure(p):
        """nu(O_p) = (2r)^-1 (2r-1)^(1-|p|); 1 for p = e."""
        if len(p) == 0:
            return Fraction(1)
        r = p.rank
        return Fraction(1, 2 * r * (2 * r - 1) ** (len(p) - 1))

    @staticmethod
    def annulus_measure(annulus):
        return (
            BoundaryService.cylinder_measure(annulus.stem)
            - BoundaryService.cylinder_measure(annulus.excluded)
        )

    @staticmethod
    def in_annulus(p, annulus):
        n = len(annulus.stem)
        p.require_depth(n + 1, "annulus membership")
        return (
            p.word.letters[:n] == annulus.stem.letters
            and p.coordinate(n + 1) != annulus.excluded_child
        )

    @staticmethod
    def annulus_of(g):
        """O'(g) for g in S_2n(e): stem t_1..t_n, excluded child t_(n+1)."""
        if len(g) == 0 or len(g) % 2:
            raise EvenRadiusRequired(f"O'(g) needs |g| even and positive, got {len(g)}")
        n = len(g) // 2
        return AnnulusSet(g.prefix(n), g.letters[n])

    @staticmethod
    def _cancellation(g, p):
        """
        Number k of letters of g cancelled against the front of p.

        Raises InsufficientDepth when every letter of p cancels while g still
        has letters left.
        """
        if g.rank != p.rank:
            raise RankMismatch(p.rank, g.rank)
        n, depth = len(g), p.depth
        k = 0
        while k < n and k < depth and p.word.letters[k].inverse() == g.letters[n - 1 - k]:
            k += 1
        if k == depth and k < n:
            raise InsufficientDepth("cancellation runs past the known prefix", n + 1, depth)
        return k

    @staticmethod
    def boundary_action(g, p):
        """
        Apply g to the boundary point p.

        Returns:
            (prefix, k): prefix is t_1..t_(n-k) xi_(k+1)..xi_L of depth
            L + |g| - 2k, and k is the cancellation count
        """
        k = BoundaryService._cancellation(g, p)
        letters = g.letters[:len(g) - k] + p.word.letters[k:]
        if not letters:
            raise InsufficientDepth("boundary action leaves an empty prefix", len(g) + 1, p.depth)
        return BoundaryPrefix(ReducedWord(p.rank, letters)), k

    @staticmethod
    def radon_nikodym(g, p):
        """(d nu o g / d nu)(xi) = (2r-1)^(2k - |g|)."""
        k = BoundaryService._cancellation(g, p)
        return Fraction(2 * p.rank - 1) ** (2 * k - len(g))

    @staticmethod
    def horofunction(p, g):
        """h_xi(g) = m - n for the split g = xi_1..xi_n t_1..t_m with t_1 != xi_(n+1)."""
        if g.rank != p.rank:
            raise RankMismatch(p.rank, g.rank)
        p.require_depth(len(g), "horofunction")
        n = 0
        while n < len(g) and g.letters[n] == p.word.letters[n]:
            n += 1
        return (len(g) - n) - n

    @staticmethod
    def horosphere_elements(p, n):
        """
        H_xi intersected with S_2n(e): words xi_1..xi_n t_1..t_n with t_1 != xi_(n+1).

        Returned in lexicographic order; count (2r-2)(2r-1)^(n-1).
        """
        if n < 1:
            raise InvalidParameter(f"horosphere radius must be >= 1, got {n}")
        p.require_depth(n + 1, "horosphere")
        stem = p.head(n)
        blocked = p.coordinate(n + 1)
        return [
            h for h in WordService.words_with_prefix(stem, 2 * n)
            if h.letters[n] != blocked
        ]

    @staticmethod
    def horosphere_at_length(p, length):
        if length % 2:
            raise EvenRadiusRequired(f"H_xi meets no sphere of odd radius {length}")
        return BoundaryService.horosphere_elements(p, length // 2)

    @staticmethod
    def horoball_elements(p, n):
        """H_xi intersected with B_2n(e), shortest first; count (2r-1)^n."""
        p.require_depth(n + 1, "horoball")
        elements = [ReducedWord.identity(p.rank)]
        for m in range(1, n + 1):
            elements.extend(BoundaryService.horosphere_elements(p, m))
        return elements

    @staticmethod
    def horosphere_size(rank, n):
        return (2 * rank - 2) * (2 * rank - 1) ** (n - 1)

    @staticmethod
    def folner_set(p, n, kind, depth):
        """
        The boundary Folner sets at resolution `depth`.

        ball:   depth-L words agreeing with xi at every coordinate > n
        sphere: additionally t_n != xi_n

        Returns:
            tuple of BoundaryPrefix in lexicographic order
        """
        if kind not in FOLNER_KINDS:
            raise InvalidParameter(f"unknown Folner kind {kind!r}")
        if n < 1 or depth < n + 1:
            raise InsufficientDepth(f"Folner set of index {n} needs output depth >= {n + 1}", n + 1, depth)
        p.require_depth(depth, "Folner set")
        tail = p.word.letters[n:depth]
        blocked = {tail[0].inverse()}
        if kind == 'sphere':
            blocked.add(p.coordinate(n))
        return tuple(
            BoundaryPrefix(ReducedWord(p.rank, head.letters + tail))
            for head in WordService.sphere(p.rank, n)
            if head.letters[-1] not in blocked
        )

    @staticmethod
    def boundary_metric(p, q):
        """d(p, q) = 1/i for the first coordinate i where p and q differ."""
        if p.rank != q.rank:
            raise RankMismatch(p.rank, q.rank)
        depth = min(p.depth, q.depth)
        for i in range(depth):
            if p.word.letters[i] != q.word.letters[i]:
                return Fraction(1, i + 1)
        raise InsufficientDepth("prefixes agree through their common depth", depth + 1, depth)

    @staticmethod
    def shift(p):
        """P_d(xi) = xi_1^-1 xi: drop the first coordinate."""
        p.require_depth(2, "shift")
        return BoundaryPrefix(p.word.suffix(1))

    @staticmethod
    def depth_prefixes(rank, depth):
        """Every depth-L prefix, lexicographic."""
        return (BoundaryPrefix(w) for w in WordService.sphere(rank, depth))
