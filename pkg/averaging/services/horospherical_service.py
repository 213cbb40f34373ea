from fractions import Fraction
import logging

import numpy as np

from actions.domain import Observable
from actions.services.action_service import ActionService
from averaging.services.spherical_service import SphericalAverageService, _check_bruteforce, _check_rank
from averaging.transfer_operator import TransferOperator
from boundary.domain import BoundaryPrefix
from boundary.exceptions import EvenRadiusRequired
from boundary.services.boundary_map_service import BoundaryMapService
from boundary.services.boundary_service import BoundaryService
from densities.domain import SphereMeasure
from densities.services.density_service import DensityService
from densities.services.sphere_measure_service import SphereMeasureService
from free_group.domain import alphabet
from free_group.exceptions import InvalidParameter
from free_group.services.word_service import WordService

logger = logging.getLogger(__name__)

LIFTS = ('omega', 'phi', 'psi')
METHODS = ('dp', 'enumerate')


def _check_method(method):
    if method not in METHODS:
        raise InvalidParameter(f"unknown method {method!r}, expected one of {', '.join(METHODS)}")


def _zero_total(action, approximate):
    if approximate:
        return np.zeros(action.size, dtype=np.float64)
    return np.asarray([Fraction(0)] * action.size, dtype=object)


class HorosphericalAverageService:
    """
    Averages over horospheres H_xi, their boundary integrals, weak pairings
    and the lifts of the boundary maps to X x boundary.
    """

    @staticmethod
    def _horosphere_raw(engine, p, n):
        """Raw sum of f(h^-1 x) over h in H_xi with |h| = 2n, as an array over x."""
        blocked = {p.coordinate(n).inverse(), p.coordinate(n + 1)}
        allowed = [t for t in alphabet(p.rank) if t not in blocked]
        return engine.pull(engine.channel_sum(n, allowed), p.head(n))

    @staticmethod
    def horospherical_average(action, f, p, n, method='dp', engine=None):
        """
        |H_xi cap S_2n(e)|^-1 sum over h in that set of f(h^-1 x).

        Elements are xi_1..xi_n t_1..t_n with t_1 != xi_(n+1), so the 'dp'
        method reads the first-letter channels W_n^t at (xi_1..xi_n)^-1 x for
        t outside {xi_n^-1, xi_(n+1)}. 'enumerate' walks horosphere_elements.
        """
        _check_method(method)
        _check_rank(action, p.rank)
        if n < 1:
            raise InvalidParameter(f"horosphere radius must be >= 1, got {n}")
        p.require_depth(n + 1, "horospherical average")
        count = BoundaryService.horosphere_size(p.rank, n)
        if method == 'enumerate':
            weight = Fraction(1, count)
            elements = BoundaryService.horosphere_elements(p, n)
            mu = SphereMeasure(p.rank, 2 * n, {h: weight for h in elements})
            return SphericalAverageService.weighted_average(action, f, mu)
        engine = engine or TransferOperator(action, f)
        raw = HorosphericalAverageService._horosphere_raw(engine, p, n)
        return Observable(engine.values(raw, count), f.approximate)

    @staticmethod
    def horospherical_at_length(action, f, p, length, method='dp', engine=None):
        """The horospherical average indexed by total word length."""
        if length % 2:
            raise EvenRadiusRequired(f"H_xi meets no sphere of odd radius {length}")
        return HorosphericalAverageService.horospherical_average(action, f, p, length // 2, method, engine)

    @staticmethod
    def horospherical_ball_average(action, f, p, n, method='dp', engine=None):
        """Average over H_xi cap B_2n(e) = {e} and the horosphere shells, normalised by (2r-1)^n."""
        _check_method(method)
        _check_rank(action, p.rank)
        p.require_depth(n + 1, "horospherical ball average")
        count = (2 * p.rank - 1) ** n
        if method == 'enumerate':
            weight = Fraction(1, count)
            values = _zero_total(action, f.approximate)
            for h in BoundaryService.horoball_elements(p, n):
                mu = SphereMeasure(p.rank, len(h), {h: weight})
                shell = SphericalAverageService.weighted_average(action, f, mu)
                values = values + np.asarray(shell.values, dtype=values.dtype)
            return Observable(tuple(float(v) if f.approximate else v for v in values), f.approximate)
        engine = engine or TransferOperator(action, f)
        raw = engine.sphere_sum(0)
        for m in range(1, n + 1):
            raw = raw + HorosphericalAverageService._horosphere_raw(engine, p, m)
        return Observable(engine.values(raw, count), f.approximate)

    @staticmethod
    def boundary_integrated_average(action, f, psi, n, engine=None):
        """
        A_2n[psi; f] computed two independent ways.

        (a) the eta_2n^psi weighted average over S_2n(e);
        (b) sum over depth-(n+1) cylinders O_w of (integral of psi over O_w)
            times the horospherical average at w.

        Returns the pair (a, b); they agree exactly.
        """
        _check_rank(action, psi.rank)
        engine = engine or TransferOperator(action, f)
        way_a = SphericalAverageService.weighted_average(
            action, f, SphereMeasureService.eta_from_density(psi, n), engine
        )
        total = _zero_total(action, f.approximate)
        for w in WordService.sphere(psi.rank, n + 1):
            weight = DensityService.cylinder_integral(psi, w)
            if not weight:
                continue
            horo = HorosphericalAverageService.horospherical_average(
                action, f, BoundaryPrefix(w), n, engine=engine
            )
            scale = float(weight) if f.approximate else weight
            total = total + np.asarray(horo.values, dtype=total.dtype) * scale
        way_b = Observable(tuple(float(v) if f.approximate else v for v in total), f.approximate)
        return way_a, way_b

    @staticmethod
    def weak_pairing(action, f, x, psi, n, method='dp', engine=None):
        """
        <pi'(f_(x,2n)), psi> = sum over g in S_2n(e) of f(g^-1 x) times the
        integral of psi over O_g.
        """
        _check_method(method)
        _check_rank(action, psi.rank)
        if method == 'dp':
            mu = SphereMeasureService.mu_from_density(psi, 2 * n)
            return SphericalAverageService.weighted_average(action, f, mu, engine)[x]
        _check_bruteforce(WordService.sphere_size(psi.rank, 2 * n))
        total = 0.0 if f.approximate else Fraction(0)
        for g in WordService.sphere(psi.rank, 2 * n):
            weight = DensityService.cylinder_integral(psi, g)
            if weight:
                y = ActionService.apply_word(action, WordService.invert(g), x)
                total += f[y] * (float(weight) if f.approximate else weight)
        return total

    @staticmethod
    def lift(action, x, p, n, which):
        """
        Lifts of the boundary maps to X x boundary:
        omega -> (x, omega(xi)), phi -> (g_1 x, g_1 xi), psi -> (g_2 x, psi(xi)),
        where g_1, g_2 are the group witnesses of omega and psi at xi.
        """
        if which == 'omega':
            return x, BoundaryMapService.omega(p, n)
        if which == 'phi':
            g1 = BoundaryMapService.omega_witness(p, n)
            return ActionService.apply_word(action, g1, x), BoundaryMapService.omega(p, n)
        if which == 'psi':
            g2 = BoundaryMapService.psi_witness(p, n)
            return ActionService.apply_word(action, g2, x), BoundaryMapService.psi(p, n)
        raise InvalidParameter(f"unknown lift {which!r}, expected one of {', '.join(LIFTS)}")

    @staticmethod
    def shift_lift(action, x, p, times=1):
        """P(x, xi) = (xi_1^-1 x, P(xi)), applied `times` times."""
        for _ in range(times):
            first = WordService.invert(p.head(1))
            x = ActionService.apply_word(action, first, x)
            p = BoundaryService.shift(p)
        return x, p
