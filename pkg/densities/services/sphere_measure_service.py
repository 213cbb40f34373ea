from fractions import Fraction
import logging

from django.conf import settings

from boundary.services.boundary_service import BoundaryService
from densities.domain import BoundaryDensity, SphereMeasure
from densities.services.density_service import DensityService
from free_group.domain import ReducedWord
from free_group.exceptions import InvalidParameter, ResourceCapExceeded
from free_group.services.word_service import WordService

logger = logging.getLogger(__name__)


class SphereMeasureService:
    """Measures on spheres S_n(e) and the maps between them and densities."""

    @staticmethod
    def check_materialize(radius):
        cap = getattr(settings, 'LAB_MATERIALIZE_RADIUS_CAP', 14)
        if radius > cap:
            logger.warning(f"Refused to materialize a radius-{radius} sphere measure")
            raise ResourceCapExceeded('LAB_MATERIALIZE_RADIUS_CAP', cap, radius)

    @staticmethod
    def point_mass(g):
        return SphereMeasure(g.rank, len(g), {g: Fraction(1)})

    @staticmethod
    def uniform_sphere(rank, n):
        return SphereMeasure(
            rank, n, {ReducedWord.identity(rank): Fraction(1, WordService.sphere_size(rank, n))},
            factor_depth=0,
        )

    @staticmethod
    def materialize(mu):
        """Explicit per-word weights; subject to LAB_MATERIALIZE_RADIUS_CAP."""
        if not mu.is_factored:
            return mu
        SphereMeasureService.check_materialize(mu.radius)
        weights = {}
        for key, weight in mu.weights.items():
            if weight:
                for g in WordService.words_with_prefix(key, mu.radius):
                    weights[g] = weight
        return SphereMeasure(mu.rank, mu.radius, weights)

    @staticmethod
    def support(mu):
        """(g, weight) over the support, lexicographic in g."""
        explicit = SphereMeasureService.materialize(mu)
        return sorted(
            ((g, w) for g, w in explicit.weights.items() if w),
            key=lambda item: item[0].sort_key(),
        )

    @staticmethod
    def pi_boundary(mu):
        """
        pi_d(delta_g) = chi_{O_g} / nu(O_g), extended linearly.

        A factored measure maps to a density at its factor depth, which is
        the same function as the depth-n table.
        """
        scale = WordService.sphere_size(mu.rank, mu.radius)
        return BoundaryDensity(
            mu.rank, mu.key_length, {w: c * scale for w, c in mu.weights.items() if c}
        )

    @staticmethod
    def mu_from_density(psi, n):
        """mu_n^psi(g) = integral of psi over O_g, for g in S_n(e)."""
        if n < 0:
            raise InvalidParameter(f"radius must be >= 0, got {n}")
        if n >= psi.depth:
            scale = Fraction(1, WordService.sphere_size(psi.rank, n))
            return SphereMeasure(
                psi.rank, n, {w: v * scale for w, v in psi.values.items() if v},
                factor_depth=psi.depth,
            )
        weights = {}
        for word, value in psi.values.items():
            if value:
                head = word.prefix(n)
                weights[head] = weights.get(head, Fraction(0)) + value * BoundaryService.cylinder_measure(word)
        return SphereMeasure(psi.rank, n, weights)

    @staticmethod
    def eta_from_density(psi, n, direct=False):
        """
        eta_2n^psi(g) = integral of psi over O'(g), divided by (2r-2)(2r-1)^(n-1).

        The weight depends on the first n+1 letters of g only and is returned
        factored at depth n+1. When n >= depth(psi) it depends on the first
        depth(psi) letters only (psi is constant across O'(g)) and coincides
        with mu_2n^psi; that coarser form is returned unless direct=True.
        """
        if n < 1:
            raise InvalidParameter(f"eta needs n >= 1, got {n}")
        r = psi.rank
        if n >= psi.depth and not direct:
            scale = Fraction(1, WordService.sphere_size(r, 2 * n))
            return SphereMeasure(
                r, 2 * n, {w: v * scale for w, v in psi.values.items() if v}, factor_depth=psi.depth
            )
        divisor = (2 * r - 2) * (2 * r - 1) ** (n - 1)
        weights = {}
        for stem in WordService.sphere(r, n):
            stem_integral = DensityService.cylinder_integral(psi, stem)
            for child in WordService.children(stem):
                weight = (stem_integral - DensityService.cylinder_integral(psi, child)) / divisor
                if weight:
                    weights[child] = weight
        return SphereMeasure(r, 2 * n, weights, factor_depth=n + 1)

    @staticmethod
    def eta_mu_residual(psi, n, eta=None):
        """
        pi(eta_2n) - (2r-1)/(2r-2) pi(mu_n) + 1/(2r-2) pi(mu_(n+1)) as a
        signed density; empty values mean the identity holds exactly.
        """
        r = psi.rank
        if eta is None:
            eta = SphereMeasureService.eta_from_density(psi, n, direct=True)
        return DensityService.linear_combination([
            (1, SphereMeasureService.pi_boundary(eta)),
            (-Fraction(2 * r - 1, 2 * r - 2), SphereMeasureService.pi_boundary(SphereMeasureService.mu_from_density(psi, n))),
            (Fraction(1, 2 * r - 2), SphereMeasureService.pi_boundary(SphereMeasureService.mu_from_density(psi, n + 1))),
        ])
