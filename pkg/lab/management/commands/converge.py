from averaging.domain import FAMILIES
from lab.management.base import EXIT_OK, LabCommand
from lab.services.experiment_service import ExperimentService


class Command(LabCommand):
    help = 'Error table of an averaging family against E[f | F^2]'
    run_name = 'converge'

    def add_run_arguments(self, parser):
        parser.add_argument('--nmax', type=int)
        parser.add_argument('--p', help="L^p exponent: a rational >= 1 or 'inf'")
        parser.add_argument('--action', help="'sanov:N', 'random:N[:blocks]', 'swap' or 'file:<path>'")
        parser.add_argument('--density', help="'uniform', 'sector:<word>' or 'file:<path>'")
        parser.add_argument('--family', choices=FAMILIES)
        parser.add_argument('--observable', help="'indicator:x', 'centered-indicator:x' or 'file:<path>'")
        parser.add_argument('--prefix', help='boundary prefix for horospherical families')
        parser.add_argument('--timing', action='store_true', default=None)

    def run(self, config):
        csv_text, summary = ExperimentService.converge(config)
        self.stderr.write(summary, ending='')
        return csv_text, EXIT_OK
