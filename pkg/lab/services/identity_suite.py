import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from actions.services.action_builder_service import ActionBuilderService
from actions.services.action_service import ActionService
from actions.services.observable_service import ObservableService
from averaging.services.convergence_service import ConvergenceService
from averaging.services.horospherical_service import HorosphericalAverageService
from averaging.services.spherical_service import SphericalAverageService
from averaging.transfer_operator import TransferOperator
from boundary.domain import BoundaryPrefix
from boundary.services.boundary_map_service import BoundaryMapService
from boundary.services.boundary_service import BoundaryService
from densities.services.density_service import DensityService
from densities.services.sphere_measure_service import SphereMeasureService
from free_group.services.sampling_service import SamplingService
from free_group.services.word_service import WordService
from relations.services.covering_service import CoveringService
from relations.services.instance_service import InstanceService
from relations.services.relation_service import RelationService

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self, reproducer):
        if self.passed:
            return f"PASS {self.name}"
        return f"FAIL {self.name}: {self.detail} (reproduce: {reproducer})"


IDENTITIES = {}


def identity(name):
    def register(check):
        IDENTITIES[name] = check
        return check
    return register


def _small(rank, r2, other):
    return r2 if rank == 2 else other


@identity('sphere_sizes')
def check_sphere_sizes(config, rng):
    r = config.rank
    for n in range(_small(r, 6, 4) + 1):
        counted = sum(1 for _ in WordService.sphere(r, n))
        if counted != WordService.sphere_size(r, n):
            return f"|S_{n}| enumerated {counted}, formula {WordService.sphere_size(r, n)}"
    return None


@identity('cylinder_measures')
def check_cylinder_measures(config, rng):
    r = config.rank
    for depth in range(1, _small(r, 6, 4) + 1):
        total = sum((BoundaryService.cylinder_measure(p.word) for p in BoundaryService.depth_prefixes(r, depth)), Fraction(0))
        if total != 1:
            return f"cylinders of depth {depth} carry mass {total}"
    for _ in range(config.samples):
        w = SamplingService.random_word(rng, r, rng.randint(1, 4))
        children = sum((BoundaryService.cylinder_measure(BoundaryPrefix(c).word) for c in WordService.children(w)), Fraction(0))
        if children != BoundaryService.cylinder_measure(BoundaryPrefix(w).word):
            return f"children of O_{w} do not add up"
    return None


@identity('horosphere_counts')
def check_horosphere_counts(config, rng):
    r = config.rank
    for _ in range(config.samples):
        n = rng.randint(1, _small(r, 4, 3))
        p = BoundaryPrefix(SamplingService.random_word(rng, r, n + 1))
        shell = len(BoundaryService.horosphere_elements(p, n))
        if shell != BoundaryService.horosphere_size(r, n):
            return f"|H cap S_{2 * n}| at {p} is {shell}"
        ball = len(BoundaryService.horoball_elements(p, n))
        if ball != (2 * r - 1) ** n:
            return f"|H cap B_{2 * n}| at {p} is {ball}"
    return None


@identity('eta_mu')
def check_eta_mu(config, rng):
    r = config.rank
    for sample in range(config.samples):
        psi = DensityService.random_density(rng, r, rng.randint(1, _small(r, 3, 2)))
        n = rng.randint(1, _small(r, 4, 2))
        eta = SphereMeasureService.eta_from_density(psi, n, direct=True)
        if config.inject_fault == 'eta':
            key = min(eta.weights, key=lambda w: w.sort_key())
            weights = dict(eta.weights)
            weights[key] += Fraction(1, 7)
            eta = type(eta)(eta.rank, eta.radius, weights, factor_depth=eta.factor_depth)
        residual = SphereMeasureService.eta_mu_residual(psi, n, eta)
        if residual.values:
            return f"sample {sample}, n={n}: residual on {len(residual.values)} cylinders"
    return None


@identity('boundary_bridge')
def check_boundary_bridge(config, rng):
    r = config.rank
    for sample in range(config.samples):
        action = ActionBuilderService.random_action(rng.randint(2, 12), rng.randrange(2 ** 32), r)
        f = ObservableService.random_observable(rng, action)
        psi = DensityService.random_density(rng, r, rng.randint(1, 2))
        n = rng.randint(1, _small(r, 3, 2))
        way_a, way_b = HorosphericalAverageService.boundary_integrated_average(action, f, psi, n)
        if way_a != way_b:
            return f"sample {sample}, n={n}: eta average and horospherical integral differ"
    return None


@identity('dp_oracle')
def check_dp_oracle(config, rng):
    r = config.rank
    for sample in range(config.samples):
        action = ActionBuilderService.random_action(rng.randint(1, 10), rng.randrange(2 ** 32), r)
        f = ObservableService.random_observable(rng, action)
        n_max = _small(r, 5, 3)
        table = SphericalAverageService.spherical_dp(action, f, n_max)
        for n in range(n_max + 1):
            if table.at(n) != SphericalAverageService.sphere_bruteforce(action, f, n):
                return f"sample {sample}: transfer operator and enumeration differ at n={n}"
    return None


@identity('invariant_fixed')
def check_invariant_fixed(config, rng):
    r = config.rank
    for sample in range(config.samples):
        action = ActionBuilderService.random_action(rng.randint(1, 10), rng.randrange(2 ** 32), r)
        f = ActionService.cond_exp_even(action, ObservableService.random_observable(rng, action))
        engine = TransferOperator(action, f)
        psi = DensityService.random_density(rng, r, 2)
        p = BoundaryPrefix(SamplingService.random_word(rng, r, 4))
        for family in ('spherical', 'mu', 'eta', 'horospherical', 'ball'):
            for n in (1, 2):
                average = ConvergenceService.family_average(action, f, family, n, engine, psi, p)
                if average != f:
                    return f"sample {sample}: {family} average moves an F^2-invariant f at n={n}"
    return None


@identity('boundary_maps')
def check_boundary_maps(config, rng):
    r = config.rank
    action = ActionBuilderService.sanov_mod(5) if r == 2 else ActionBuilderService.random_action(7, config.seed, r)
    for _ in range(config.samples):
        n = rng.randint(6, 8)
        p = BoundaryPrefix(SamplingService.random_word(rng, r, n + 3))
        omega = BoundaryMapService.omega(p, n)
        if BoundaryService.boundary_metric(p, omega) != Fraction(1, n):
            return f"d(xi, omega(xi)) != 1/{n} at {p}"
        shifted = BoundaryService.shift(BoundaryService.shift(omega))
        if BoundaryService.boundary_metric(BoundaryMapService.psi_omega(p, n), shifted) != Fraction(1, n - 1):
            return f"d(psi omega(xi), P^2 omega(xi)) != 1/{n - 1} at {p}"
        x = rng.randrange(action.size)
        y, _ = HorosphericalAverageService.lift(action, x, p, n, 'phi')
        lifted, _ = HorosphericalAverageService.shift_lift(action, y, omega, times=2)
        psi_x, _ = HorosphericalAverageService.lift(action, x, omega, n, 'psi')
        if lifted != psi_x:
            return f"psi lift and P^2 lift disagree on X at x={x}, xi={p}"
    return None


@identity('covering')
def check_covering(config, rng):
    for sample in range(config.samples):
        relation, family = InstanceService.random_instance(rng.randrange(2 ** 32), max_points=80)
        Y, rho, tie_break = InstanceService.random_covering_input(rng, relation, family)
        report = CoveringService.covering_report(relation, family, Y, rho, tie_break)
        if not report.disjoint_ok:
            return f"sample {sample}: selected sets overlap"
        if not report.measure_ok:
            return f"sample {sample}: C_d nu(Z~) < nu(Y~)"
    return None


@identity('maximal_inequality')
def check_maximal_inequality(config, rng):
    for sample in range(config.samples):
        relation, family = InstanceService.random_instance(rng.randrange(2 ** 32), max_points=60, centered=True)
        f = tuple(Fraction(rng.randint(-5, 5)) for _ in range(relation.size))
        t = Fraction(rng.randint(1, 8), 2)
        check = CoveringService.maximal_check(relation, family, f, t, family.n_max)
        if not check.passed:
            return f"sample {sample}: nu(M > {t}) = {check.mass} above {check.bound}"
    return None


@identity('coboundary')
def check_coboundary(config, rng):
    for sample in range(config.samples):
        relation, family = InstanceService.random_instance(rng.randrange(2 ** 32), max_points=60)
        phi = RelationService.random_inner_automorphism(rng, relation)
        f = tuple(Fraction(rng.randint(-5, 5)) for _ in range(relation.size))
        for n in range(1, family.n_max + 1):
            for b, (gap, bound) in enumerate(RelationService.coboundary_gap(family, f, phi, n)):
                if gap > bound:
                    return f"sample {sample}: coboundary average {gap} above {bound} at b={b}, n={n}"
    return None


class IdentitySuiteService:
    """Runs every registered identity; one PASS/FAIL line each."""

    @staticmethod
    def names():
        return tuple(IDENTITIES)

    @staticmethod
    def run(config):
        results = []
        for name, check in IDENTITIES.items():
            # one stream per identity so a failure reproduces on its own
            rng = random.Random(f"{config.seed}:{config.rank}:{name}")
            detail = check(config, rng)
            results.append(IdentityResult(name, detail is None, detail or ""))
            if detail is not None:
                logger.warning(f"Identity {name} failed: {detail}")
        logger.info(f"Identity suite: {sum(r.passed for r in results)}/{len(results)} passed")
        return results

    @staticmethod
    def reproducer(config):
        command = f"manage.py identities --seed {config.seed} --rank {config.rank} --samples {config.samples}"
        if config.inject_fault:
            command += f" --inject-fault {config.inject_fault}"
        return command

    @staticmethod
    def format_report(config, results):
        reproducer = IdentitySuiteService.reproducer(config)
        return "".join(result.line(reproducer) + "\n" for result in results)
