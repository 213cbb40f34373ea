from django.core.management.base import BaseCommand

from lab.models import ExperimentRun
from lab.services.run_log_service import RunLogService


class Command(BaseCommand):
    help = 'Delete recorded experiment runs beyond the newest N per command'

    def add_arguments(self, parser):
        parser.add_argument('--for-command', dest='run_command', choices=ExperimentRun.Command.values)
        parser.add_argument('--keep', type=int, help='runs to keep per command (default LAB_MAX_RUNS_PER_COMMAND)')

    def handle(self, *args, **options):
        deleted = RunLogService.prune(options.get('run_command'), options.get('keep'))
        self.stdout.write(
            self.style.SUCCESS(f'Deleted {deleted} experiment runs')
        )
