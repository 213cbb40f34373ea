from lab.management.base import EXIT_FAILED, EXIT_OK, LabCommand
from lab.services.experiment_service import ExperimentService


class Command(LabCommand):
    help = 'Fuzz the covering selection on random and boundary relation instances'
    run_name = 'covering'

    def add_run_arguments(self, parser):
        parser.add_argument('--instances', type=int)
        parser.add_argument('--max-points', dest='max_points', type=int)

    def run(self, config):
        csv_text, all_ok = ExperimentService.covering(config)
        return csv_text, EXIT_OK if all_ok else EXIT_FAILED
