from fractions import Fraction
import logging
import time

from actions.domain import Observable
from actions.services.action_service import ActionService
from actions.services.observable_service import ObservableService
from averaging.domain import FAMILIES, ConvergenceReport, ConvergenceRow, MaximalProfile
from averaging.services.horospherical_service import HorosphericalAverageService
from averaging.services.spherical_service import SphericalAverageService
from averaging.transfer_operator import TransferOperator
from densities.numerics import is_infinite
from densities.services.density_service import DensityService
from densities.services.sphere_measure_service import SphereMeasureService
from free_group.exceptions import InvalidParameter
from free_group.services.word_service import WordService

logger = logging.getLogger(__name__)


class ConvergenceService:
    """Error tables against E[f | F^2], truncated maximal functions and the exponent experiment."""

    @staticmethod
    def family_average(action, f, family, n, engine, psi=None, prefix=None):
        """The radius-2n average of `family` at index n."""
        if family == 'spherical':
            raw = engine.sphere_sum(2 * n)
            return Observable(engine.values(raw, WordService.sphere_size(action.rank, 2 * n)), f.approximate)
        if family in ('mu', 'sector'):
            mu = SphereMeasureService.mu_from_density(psi, 2 * n)
            return SphericalAverageService.weighted_average(action, f, mu, engine)
        if family == 'eta':
            mu = SphereMeasureService.eta_from_density(psi, n)
            return SphericalAverageService.weighted_average(action, f, mu, engine)
        if family == 'horospherical':
            return HorosphericalAverageService.horospherical_average(action, f, prefix, n, engine=engine)
        if family == 'ball':
            return HorosphericalAverageService.horospherical_ball_average(action, f, prefix, n, engine=engine)
        raise InvalidParameter(f"unknown family {family!r}, expected one of {', '.join(FAMILIES)}")

    @staticmethod
    def _check_family_inputs(family, psi, prefix):
        if family in ('mu', 'sector', 'eta') and psi is None:
            raise InvalidParameter(f"family {family} needs a density")
        if family in ('horospherical', 'ball') and prefix is None:
            raise InvalidParameter(f"family {family} needs a boundary prefix")

    @staticmethod
    def convergence_report(action, f, family, n_values, p=2, psi=None, prefix=None, timing=False):
        """
        Rows (n, sup error, L^p error, runtime) of A_2n[family; f] against
        E[f | F^2]. runtime_ms stays 0 unless timing is on, so reports are
        reproducible byte for byte.
        """
        ConvergenceService._check_family_inputs(family, psi, prefix)
        target = ActionService.cond_exp_even(action, f)
        engine = TransferOperator(action, f)
        report = ConvergenceReport(family, approximate=f.approximate)
        for n in n_values:
            started = time.perf_counter()
            average = ConvergenceService.family_average(action, f, family, n, engine, psi, prefix)
            error = ObservableService.difference(average, target)
            runtime = round((time.perf_counter() - started) * 1000) if timing else 0
            lp = ObservableService.lp_norm(action, error, p)
            report.rows.append(ConvergenceRow(
                n,
                ObservableService.sup_norm(error),
                float(lp) if f.approximate else lp,
                runtime,
            ))
        report.summary = ConvergenceService.summarize(report.rows)
        report.summary['orbit_count'] = ActionService.orbit_count(action)
        logger.info(f"Convergence report for {family} over {len(report.rows)} indices")
        return report

    @staticmethod
    def summarize(rows):
        sups = [row.error_sup for row in rows]
        if not sups:
            return {}
        steps = list(zip(sups, sups[1:]))
        return {
            'first_sup': sups[0],
            'last_sup': sups[-1],
            'final_is_minimum': sups[-1] <= min(sups),
            'nonincreasing_fraction': (
                Fraction(sum(1 for a, b in steps if b <= a), len(steps)) if steps else Fraction(1)
            ),
        }

    @staticmethod
    def maximal_profile(action, table, f, thresholds=()):
        """
        max over the table's indices n >= 1 of |A_n f|, plus weak-type rows
        (t, lambda{M > t}, lambda{M > t} * t / ||f||_1). The sup over all n is
        truncated to the computed range.
        """
        indices = tuple(n for n in table.indices if n >= 1)
        if not indices:
            raise InvalidParameter("maximal profile needs at least one index n >= 1")
        columns = [table.at(n) for n in indices]
        values = tuple(max(abs(column[x]) for column in columns) for x in range(action.size))
        maximal = Observable(values, table.approximate)
        l1 = ObservableService.l1_norm(action, f)
        rows = []
        for t in thresholds:
            mass = sum((w for w, v in zip(action.weights, values) if v > t), Fraction(0))
            ratio = mass * Fraction(t) / Fraction(l1) if l1 else None
            rows.append((t, mass, ratio))
        return MaximalProfile(indices, maximal, tuple(rows))

    @staticmethod
    def lq_pairing_experiment(action, f, psi, n_values, p, q):
        """
        Finite-n diagnostics for density-weighted averages under exponents
        (p, q): per n, the L^q distance of pi(mu_2n^psi) to psi and the sup
        and L^p errors of the mu_2n^psi average against E[f | F^2].
        Reported only; the limit statements are not asserted.
        """
        target = ActionService.cond_exp_even(action, f)
        engine = TransferOperator(action, f)
        inverse_sum = (0 if is_infinite(p) else Fraction(1) / Fraction(p)) + (
            0 if is_infinite(q) else Fraction(1) / Fraction(q))
        header = {
            'p': p,
            'q': q,
            'exponents_admissible': inverse_sum < 1,
            'psi_lq': DensityService.lq_norm(psi, q),
            'f_lp': ObservableService.lp_norm(action, f, p),
        }
        rows = []
        for n in n_values:
            mu = SphereMeasureService.mu_from_density(psi, 2 * n)
            error = ObservableService.difference(
                SphericalAverageService.weighted_average(action, f, mu, engine), target
            )
            rows.append((
                n,
                DensityService.lq_distance(SphereMeasureService.pi_boundary(mu), psi, q),
                ObservableService.sup_norm(error),
                ObservableService.lp_norm(action, error, p),
            ))
        return header, rows
