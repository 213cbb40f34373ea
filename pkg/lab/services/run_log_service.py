from django.conf import settings
import logging

from lab.models import ExperimentRun

logger = logging.getLogger(__name__)


class RunLogService:
    """Stores one ExperimentRun per command invocation. Never raises."""

    @staticmethod
    def log_run(command, config, exit_code, report=""):
        if not getattr(settings, 'LAB_RECORD_RUNS', True):
            return None
        try:
            run = ExperimentRun.objects.create(
                command=command,
                seed=config.seed,
                rank=config.rank,
                mode=config.mode,
                config=config.as_dict(),
                exit_code=exit_code,
                report=report[:20000] if report else "",
            )
            RunLogService.prune(command)
            return run
        except Exception as e:
            logger.error(f"Failed to record {command} run: {e}")
            return None

    @staticmethod
    def prune(command=None, keep=None):
        """Delete runs beyond the newest `keep` per command; returns the number deleted."""
        if keep is None:
            keep = getattr(settings, 'LAB_MAX_RUNS_PER_COMMAND', 50)
        commands = [command] if command else ExperimentRun.objects.order_by().values_list('command', flat=True).distinct()
        deleted = 0
        for name in list(commands):
            stale = ExperimentRun.objects.filter(command=name).order_by('-created_at')[keep:]
            ids = list(stale.values_list('id', flat=True))
            if ids:
                deleted += ExperimentRun.objects.filter(id__in=ids).delete()[0]
        if deleted:
            logger.info(f"Pruned {deleted} experiment runs")
        return deleted
