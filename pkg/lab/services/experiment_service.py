import logging
import random

from actions.formats import parse_action_spec, parse_observable_spec
from actions.services.action_service import ActionService
from averaging.formats import format_convergence_csv, format_number, format_summary
from averaging.services.convergence_service import ConvergenceService
from boundary.domain import BoundaryPrefix
from boundary.formats import parse_prefix
from densities.formats import format_density, format_measure, parse_density_spec
from densities.services.sphere_measure_service import SphereMeasureService
from free_group.exceptions import InvalidParameter, RankMismatch
from free_group.services.sampling_service import SamplingService
from relations.formats import format_covering_csv
from relations.services.covering_service import CoveringService
from relations.services.instance_service import InstanceService
from relations.services.relation_service import RelationService

logger = logging.getLogger(__name__)

BOUNDARY_INSTANCE_DEPTH = 5
BOUNDARY_INSTANCE_N0 = 2


class ExperimentService:
    """The work behind the converge, covering and dump_measure commands."""

    @staticmethod
    def _prefix(config, depth):
        if config.prefix:
            return parse_prefix(config.prefix, config.rank)
        rng = random.Random(f"{config.seed}:prefix")
        return BoundaryPrefix(SamplingService.random_word(rng, config.rank, depth))

    @staticmethod
    def converge(config):
        """
        Returns (csv, summary): the error table of the configured family
        against E[f | F^2] and '# key=value' lines describing the run.
        """
        action = parse_action_spec(config.action, config.seed, config.rank)
        if action.rank != config.rank:
            raise RankMismatch(config.rank, action.rank)
        f = parse_observable_spec(config.observable, action, approximate=config.approximate)
        psi = prefix = None
        if config.family in ('mu', 'sector', 'eta'):
            if config.family == 'sector' and not config.density.startswith('sector:'):
                raise InvalidParameter("family sector needs a density spec 'sector:<word>'")
            psi = parse_density_spec(config.density, config.rank)
        if config.family in ('horospherical', 'ball'):
            prefix = ExperimentService._prefix(config, config.nmax + 1)
        report = ConvergenceService.convergence_report(
            action, f, config.family, range(1, config.nmax + 1), config.p, psi, prefix, config.timing
        )
        target = ActionService.cond_exp_even(action, f)
        lines = [
            f"# action={config.action}",
            f"# observable={config.observable}",
            f"# p={config.p}",
            f"# cond_exp_min={format_number(min(target))}",
            f"# cond_exp_max={format_number(max(target))}",
        ]
        if prefix is not None:
            lines.append(f"# prefix={prefix}")
        summary = "\n".join(lines) + "\n" + format_summary(report)
        return format_convergence_csv(report), summary

    @staticmethod
    def covering_rows(config):
        """
        (name, CoveringReport, NonShrinking) for `instances` random relations
        and the ball and sphere families of one boundary instance.
        """
        rng = random.Random(config.seed)
        rows = []
        for i in range(config.instances):
            relation, family = InstanceService.random_instance(rng.randrange(2 ** 32), max_points=config.max_points)
            Y, rho, tie_break = InstanceService.random_covering_input(rng, relation, family)
            report = CoveringService.covering_report(relation, family, Y, rho, tie_break)
            shrink = CoveringService.non_shrinking(relation, family, trials=config.samples, seed=rng.randrange(2 ** 32))
            rows.append((f"random-{i}", report, shrink))
        instance = InstanceService.boundary_instance(config.rank, BOUNDARY_INSTANCE_DEPTH, BOUNDARY_INSTANCE_N0)
        for kind, family in (('ball', instance.ball), ('sphere', instance.sphere)):
            RelationService.validate(instance.relation, family)
            Y, rho, tie_break = InstanceService.random_covering_input(rng, instance.relation, family)
            report = CoveringService.covering_report(instance.relation, family, Y, rho, tie_break)
            shrink = CoveringService.non_shrinking(instance.relation, family, trials=config.samples)
            rows.append((f"boundary-{kind}", report, shrink))
        return rows

    @staticmethod
    def covering(config):
        """Returns (csv, all_ok)."""
        rows = ExperimentService.covering_rows(config)
        failing = [name for name, report, _ in rows if not (report.disjoint_ok and report.measure_ok)]
        if failing:
            logger.warning(f"Covering failed on {', '.join(failing)}")
        return format_covering_csv(rows), not failing

    @staticmethod
    def dump_measure(config):
        psi = parse_density_spec(config.density, config.rank)
        if config.kind == 'density':
            return format_density(psi)
        if config.kind == 'mu':
            return format_measure(SphereMeasureService.mu_from_density(psi, config.n))
        return format_measure(SphereMeasureService.eta_from_density(psi, config.n))
