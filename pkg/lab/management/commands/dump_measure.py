from lab.management.base import EXIT_OK, LabCommand
from lab.serializers import DUMP_KINDS
from lab.services.experiment_service import ExperimentService


class Command(LabCommand):
    help = 'Print a density, or its mu / eta sphere measure, in the text format'
    run_name = 'dump_measure'

    def add_run_arguments(self, parser):
        parser.add_argument('--kind', choices=DUMP_KINDS)
        parser.add_argument('--density')
        parser.add_argument('--n', type=int, help='sphere radius for mu, half radius for eta')

    def run(self, config):
        return ExperimentService.dump_measure(config), EXIT_OK
