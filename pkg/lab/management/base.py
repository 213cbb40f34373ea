import logging
import os

from django.core.management.base import BaseCommand, CommandError

from actions.exceptions import InvalidAction
from boundary.exceptions import EvenRadiusRequired, IncompatiblePair, InsufficientDepth
from free_group.exceptions import InvalidLetter, InvalidParameter, RankMismatch, ResourceCapExceeded, SpecParseError
from lab.exceptions import ConfigInvalid
from lab.run_config import applied_caps, config_scheme, load_run_config
from lab.services.run_log_service import RunLogService
from relations.exceptions import InvalidRelation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

USAGE_ERRORS = (
    SpecParseError, InvalidParameter, InvalidLetter, RankMismatch, InvalidAction, InvalidRelation,
    InsufficientDepth, EvenRadiusRequired, IncompatiblePair, ConfigInvalid, OSError,
)


class LabCommand(BaseCommand):
    """
    Shared shape of the lab commands: load the run config (file, then
    flags), run, write the output, record the run.

    Exit codes: 0 pass, 1 an identity or check failed, 2 bad input,
    3 a resource cap was hit.
    """
    run_name = None

    def add_arguments(self, parser):
        parser.add_argument('--config', help='key=value run configuration file')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--rank', type=int)
        parser.add_argument('--mode', choices=('exact', 'float'))
        parser.add_argument('--cap-sphere', dest='cap_sphere', type=int, help='largest sphere enumerated by brute force')
        parser.add_argument('--out', help='write the report here instead of stdout')
        parser.add_argument('--samples', type=int)
        self.add_run_arguments(parser)

    def add_run_arguments(self, parser):
        pass

    def run(self, config):
        """Return (report text, exit code)."""
        raise NotImplementedError

    def handle(self, *args, **options):
        scheme = config_scheme()
        overrides = {key: options.get(key) for key in scheme}
        config = None
        try:
            config = load_run_config(options.get('config'), **overrides)
            with applied_caps(config):
                report, exit_code = self.run(config)
        except ResourceCapExceeded as exc:
            self._record(config, EXIT_RESOURCE, str(exc))
            raise CommandError(str(exc), returncode=EXIT_RESOURCE) from exc
        except USAGE_ERRORS as exc:
            self._record(config, EXIT_USAGE, str(exc))
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc

        self.write_report(config, report)
        self._record(config, exit_code, report)
        if exit_code != EXIT_OK:
            raise CommandError(f"{self.run_name} reported failures", returncode=exit_code)

    def write_report(self, config, report):
        if config.out:
            directory = os.path.dirname(config.out)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(config.out, 'w') as handle:
                handle.write(report)
            self.stderr.write(self.style.SUCCESS(f'Wrote {config.out}'))
        else:
            self.stdout.write(report, ending='')

    def _record(self, config, exit_code, report):
        if config is None:
            return
        logger.info(f"{self.run_name} finished with exit code {exit_code}")
        RunLogService.log_run(self.run_name, config, exit_code, report)
