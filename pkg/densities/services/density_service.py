from fractions import Fraction
import logging

from boundary.services.boundary_service import BoundaryService
from densities.domain import BoundaryDensity, SignedDensity
from densities.numerics import lq_norm_of
from free_group.domain import ReducedWord
from free_group.exceptions import InvalidParameter, RankMismatch
from free_group.services.word_service import WordService

logger = logging.getLogger(__name__)


class DensityService:
    """Simple densities on the boundary, refined on demand."""

    @staticmethod
    def constant_density(rank, c=1):
        return BoundaryDensity(rank, 0, {ReducedWord.identity(rank): Fraction(c)})

    @staticmethod
    def sector_density(w):
        """rho_w = chi_{O_w} / nu(O_w)."""
        if len(w) < 1:
            raise InvalidParameter("sector density needs |w| >= 1")
        return BoundaryDensity(w.rank, len(w), {w: 1 / BoundaryService.cylinder_measure(w)})

    @staticmethod
    def random_density(rng, rank, depth, max_weight=9):
        """A probability density with random integer proportions on depth-m cylinders."""
        raw = {w: rng.randint(0, max_weight) for w in WordService.sphere(rank, depth)}
        if not any(raw.values()):
            raw[next(iter(raw))] = 1
        total = sum(Fraction(v) * BoundaryService.cylinder_measure(w) for w, v in raw.items())
        return BoundaryDensity(rank, depth, {w: Fraction(v) / total for w, v in raw.items() if v})

    @staticmethod
    def refine(psi, depth):
        """Copy each value to every descendant at `depth`."""
        if depth < psi.depth:
            raise InvalidParameter(f"cannot refine depth {psi.depth} down to {depth}")
        if depth == psi.depth:
            return psi
        values = {}
        for word, value in psi.values.items():
            if value:
                for child in WordService.words_with_prefix(word, depth):
                    values[child] = value
        return type(psi)(psi.rank, depth, values)

    @staticmethod
    def cylinder_integral(psi, w):
        """Integral of psi over O_w, for w of any length."""
        if len(w) >= psi.depth:
            return psi.value(w) * BoundaryService.cylinder_measure(w)
        return sum(
            (value * BoundaryService.cylinder_measure(word)
             for word, value in psi.values.items()
             if word.letters[:len(w)] == w.letters),
            Fraction(0),
        )

    @staticmethod
    def integrate(psi):
        return sum(
            (value * BoundaryService.cylinder_measure(word) for word, value in psi.values.items()),
            Fraction(0),
        )

    @staticmethod
    def _common(*densities):
        rank = densities[0].rank
        for psi in densities:
            if psi.rank != rank:
                raise RankMismatch(rank, psi.rank)
        depth = max(psi.depth for psi in densities)
        return rank, depth, [DensityService.refine(psi, depth) for psi in densities]

    @staticmethod
    def linear_combination(terms):
        """sum of coef * psi over (coef, psi) pairs, as a SignedDensity at the max depth."""
        rank, depth, refined = DensityService._common(*(psi for _, psi in terms))
        values = {}
        for (coef, _), psi in zip(terms, refined):
            for word, value in psi.values.items():
                values[word] = values.get(word, Fraction(0)) + coef * value
        return SignedDensity(rank, depth, {w: v for w, v in values.items() if v})

    @staticmethod
    def pairing(psi, phi):
        """Integral of psi * phi."""
        rank, depth, (a, b) = DensityService._common(psi, phi)
        return sum(
            (value * b.values.get(word, Fraction(0)) * BoundaryService.cylinder_measure(word)
             for word, value in a.values.items()),
            Fraction(0),
        )

    @staticmethod
    def same_function(psi, phi):
        return not DensityService.linear_combination([(1, psi), (-1, phi)]).values

    @staticmethod
    def lq_norm(psi, q):
        """
        ||psi||_q: exact Fraction for q = infinity and whenever the root is
        rational, otherwise a RealInterval at LAB_REAL_PRECISION bits.
        """
        return lq_norm_of(
            ((value, BoundaryService.cylinder_measure(word)) for word, value in psi.values.items()),
            q,
        )

    @staticmethod
    def lq_distance(psi, phi, q):
        return DensityService.lq_norm(DensityService.linear_combination([(1, psi), (-1, phi)]), q)

    @staticmethod
    def martingale_project(psi, n):
        """
        E[psi | Sigma_n]: the average of psi over each depth-n cylinder.

        For n >= depth(psi) the projection is psi itself and is returned at
        its native depth.
        """
        if n >= psi.depth:
            return psi
        values = {}
        for word, value in psi.values.items():
            head = word.prefix(n)
            values[head] = values.get(head, Fraction(0)) + value * BoundaryService.cylinder_measure(word)
        return BoundaryDensity(psi.rank, n, {
            head: total / BoundaryService.cylinder_measure(head) for head, total in values.items()
        })
