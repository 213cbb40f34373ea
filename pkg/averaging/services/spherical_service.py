from fractions import Fraction
import logging

from django.conf import settings
import numpy as np

from actions.domain import Observable
from averaging.domain import AverageTable
from averaging.transfer_operator import TransferOperator
from free_group.exceptions import RankMismatch, ResourceCapExceeded
from free_group.services.word_service import WordService

logger = logging.getLogger(__name__)


def _check_rank(action, rank):
    if action.rank != rank:
        raise RankMismatch(action.rank, rank)


def _check_bruteforce(count):
    cap = getattr(settings, 'LAB_BRUTEFORCE_CAP', 10 ** 6)
    if count > cap:
        logger.warning(f"Refused to enumerate {count} group elements")
        raise ResourceCapExceeded('LAB_BRUTEFORCE_CAP', cap, count)


def _observable(values, approximate):
    return Observable(tuple(values), approximate)


class SphericalAverageService:
    """Uniform, sector and weighted sphere averages of f(g^-1 x)."""

    @staticmethod
    def spherical_dp(action, f, n_max, engine=None):
        """
        |S_n|^-1 sum over |g| = n of f(g^-1 x), for n = 0..n_max.

        Computed by the first-letter transfer-operator recursion; spheres are
        never enumerated.
        """
        engine = engine or TransferOperator(action, f)
        engine.extend_to(n_max)
        values = []
        for n in range(n_max + 1):
            raw = engine.sphere_sum(n)
            values.append(_observable(engine.values(raw, WordService.sphere_size(action.rank, n)), f.approximate))
        logger.debug(f"Spherical DP to radius {n_max} on {action.size} points")
        return AverageTable('spherical', tuple(range(n_max + 1)), tuple(values), f.approximate)

    @staticmethod
    def sphere_bruteforce(action, f, n):
        """Direct enumeration of S_n(e); the oracle for every fast path."""
        count = WordService.sphere_size(action.rank, n)
        _check_bruteforce(count)
        gather = action.letter_arrays
        base = np.asarray(list(f), dtype=np.float64 if f.approximate else object)
        total = np.zeros(action.size, dtype=np.float64) if f.approximate else np.asarray(
            [Fraction(0)] * action.size, dtype=object)
        for g in WordService.sphere(action.rank, n):
            index = np.arange(action.size)
            # g^-1 x: inverse of the first letter of g acts first
            for letter in g.letters:
                index = gather[letter.inverse()][index]
            total = total + base[index]
        divisor = float(count) if f.approximate else count
        if f.approximate:
            return _observable((float(v) / divisor for v in total), True)
        return _observable((v / divisor for v in total), False)

    @staticmethod
    def sector_sum(action, f, y, length, forbidden=None, engine=None):
        """Sum of f(u^-1 y) over u in S_length(e) with first letter != forbidden."""
        engine = engine or TransferOperator(action, f)
        raw = engine.sector_sum(length, forbidden)[y]
        return engine.value(raw, 1)

    @staticmethod
    def weighted_average(action, f, mu, engine=None):
        """
        sum over g of f(g^-1 x) mu(g).

        Factored measures use the per-prefix sector decomposition
        sum_w c_w * sum_{u in S_(n-d), u_1 != w_d^-1} f(u^-1 w^-1 x);
        explicit ones are enumerated over their support.
        """
        _check_rank(action, mu.rank)
        if not mu.is_factored:
            return SphericalAverageService._enumerated_average(action, f, mu)
        engine = engine or TransferOperator(action, f)
        tail = mu.radius - mu.factor_depth
        engine.extend_to(tail)
        if f.approximate:
            total = np.zeros(action.size, dtype=np.float64)
        else:
            total = np.asarray([Fraction(0)] * action.size, dtype=object)
        for key, weight in mu.weights.items():
            if not weight:
                continue
            forbidden = key.letters[-1].inverse() if len(key) else None
            raw = engine.pull(engine.sector_sum(tail, forbidden), key)
            total = total + raw * (float(weight) if f.approximate else weight)
        if f.approximate:
            return _observable((float(v) for v in total), True)
        return _observable((Fraction(v) / engine.scale for v in total), False)

    @staticmethod
    def _enumerated_average(action, f, mu):
        support = [(g, w) for g, w in mu.weights.items() if w]
        _check_bruteforce(len(support))
        gather = action.letter_arrays
        base = np.asarray(list(f), dtype=np.float64 if f.approximate else object)
        if f.approximate:
            total = np.zeros(action.size, dtype=np.float64)
        else:
            total = np.asarray([Fraction(0)] * action.size, dtype=object)
        for g, weight in support:
            index = np.arange(action.size)
            for letter in g.letters:
                index = gather[letter.inverse()][index]
            total = total + base[index] * (float(weight) if f.approximate else weight)
        return _observable((float(v) for v in total) if f.approximate else total, f.approximate)
