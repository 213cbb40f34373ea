import logging

from boundary.domain import BoundaryPrefix, PrefixPermutation
from boundary.exceptions import IncompatiblePair
from free_group.domain import ReducedWord, alphabet
from free_group.exceptions import InvalidParameter, RankMismatch
from free_group.services.word_service import WordService

logger = logging.getLogger(__name__)

MIN_MAP_INDEX = 6
BOUNDARY_MAPS = ('omega', 'psi_omega')


class BoundaryMapService:
    """
    The measurable maps omega, psi and their group witnesses, plus the
    finite-order inner automorphisms built from prefix permutations.

    K acts on reduced triples (a, s, b) by moving s to the next letter of
    D = S - {a^-1, b^-1} in canonical order, cyclically. Non-reduced triples
    are fixed. Boundary sequences only ever present reduced triples.
    """

    @staticmethod
    def _derangement_set(a, b, rank):
        banned = {a.inverse(), b.inverse()}
        return [s for s in alphabet(rank) if s not in banned]

    @staticmethod
    def k_map(a, s, b, rank, step=1):
        """Middle output s' of K(a, s, b); step=-1 gives the inverse of K."""
        domain = BoundaryMapService._derangement_set(a, b, rank)
        if s not in domain:
            return s
        return domain[(domain.index(s) + step) % len(domain)]

    @staticmethod
    def _check_index(p, n):
        if n < MIN_MAP_INDEX:
            raise InvalidParameter(f"boundary maps need n >= {MIN_MAP_INDEX}, got {n}")
        p.require_depth(n + 1, "omega/psi")

    @staticmethod
    def _moved_letter(p, n, step=1):
        return BoundaryMapService.k_map(
            p.coordinate(n - 1), p.coordinate(n), p.coordinate(n + 1), p.rank, step
        )

    @staticmethod
    def _replace(p, n, letter):
        letters = list(p.word.letters)
        letters[n - 1] = letter
        return BoundaryPrefix(ReducedWord(p.rank, tuple(letters)))

    @staticmethod
    def omega(p, n):
        """omega changes coordinate n only: s_n -> s'_n."""
        BoundaryMapService._check_index(p, n)
        return BoundaryMapService._replace(p, n, BoundaryMapService._moved_letter(p, n))

    @staticmethod
    def omega_inverse(p, n):
        BoundaryMapService._check_index(p, n)
        return BoundaryMapService._replace(p, n, BoundaryMapService._moved_letter(p, n, step=-1))

    @staticmethod
    def psi_omega(p, n):
        """
        psi(omega(xi)) = (s_3, ..., s_(n-1), s'_n, s_n^-1, s'_n, s_(n+1), ...).

        Output depth equals input depth.
        """
        BoundaryMapService._check_index(p, n)
        s = p.word.letters
        moved = BoundaryMapService._moved_letter(p, n)
        letters = s[2:n - 1] + (moved, s[n - 1].inverse(), moved) + s[n:]
        return BoundaryPrefix(ReducedWord(p.rank, letters))

    @staticmethod
    def psi(p, n):
        """psi(eta) = psi_omega(omega^-1(eta))."""
        return BoundaryMapService.psi_omega(BoundaryMapService.omega_inverse(p, n), n)

    @staticmethod
    def boundary_map(p, n, which):
        if which == 'omega':
            return BoundaryMapService.omega(p, n)
        if which == 'psi_omega':
            return BoundaryMapService.psi_omega(p, n)
        raise InvalidParameter(f"unknown boundary map {which!r}")

    @staticmethod
    def omega_witness(p, n):
        """g_1 = s_1..s_(n-1) s'_n (s_1..s_n)^-1, so g_1 xi = omega(xi) with derivative 1."""
        BoundaryMapService._check_index(p, n)
        head = p.head(n - 1).extend(BoundaryMapService._moved_letter(p, n))
        return WordService.product(head, WordService.invert(p.head(n)))

    @staticmethod
    def shift_witness(p, n):
        """
        g = (s_3..s_(n-1)) s'_n (s_1..s_n)^-1 built from xi.

        g xi = P^2 omega(xi) and g omega(xi) = psi omega(xi).
        """
        BoundaryMapService._check_index(p, n)
        moved = BoundaryMapService._moved_letter(p, n)
        middle = ReducedWord(p.rank, p.word.letters[2:n - 1] + (moved,))
        return WordService.product(middle, WordService.invert(p.head(n)))

    @staticmethod
    def psi_witness(p, n):
        """g_2 with g_2 eta = psi(eta), read off xi = omega^-1(eta)."""
        return BoundaryMapService.shift_witness(BoundaryMapService.omega_inverse(p, n), n)

    @staticmethod
    def build_inner_automorphism(p, q, m):
        """
        Transposition beta of pi_m(p) and pi_m(q) on depth-m words.

        p and q must have equal depth >= m and agree at every coordinate
        >= m, so beta keeps the last coordinate and maps reduced words to
        reduced words. The induced map depends on the first m letters only.
        """
        if p.rank != q.rank:
            raise RankMismatch(p.rank, q.rank)
        if m < 1:
            raise InvalidParameter(f"order must be >= 1, got {m}")
        if p.depth != q.depth or p.depth < m:
            raise IncompatiblePair(
                f"prefixes need equal depth >= {m}, got {p.depth} and {q.depth}"
            )
        if p.word.letters[m - 1:] != q.word.letters[m - 1:]:
            raise IncompatiblePair(f"prefixes disagree at a coordinate >= {m}")
        source, target = p.head(m), q.head(m)
        moved = {} if source == target else {source: target, target: source}
        logger.debug(f"Built order-{m} inner automorphism {source} <-> {target}")
        return PrefixPermutation(p.rank, m, moved)
