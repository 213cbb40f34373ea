from django.db import models
import uuid


class ExperimentRun(models.Model):
    class Command(models.TextChoices):
        IDENTITIES = "identities", "Identity suite"
        CONVERGE = "converge", "Convergence experiment"
        COVERING = "covering", "Covering fuzzing"
        DUMP_MEASURE = "dump_measure", "Measure dump"

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    command = models.CharField(max_length=30, choices=Command.choices)
    seed = models.IntegerField(default=0)
    rank = models.IntegerField(default=2)
    mode = models.CharField(max_length=10, default="exact")
    config = models.JSONField(default=dict, blank=True)

    # Result
    exit_code = models.IntegerField(default=0)
    report = models.TextField(blank=True)

    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        indexes = [
            models.Index(fields=['command', 'created_at'], name='lab_run_command_created_idx'),
        ]
        ordering = ['-created_at']

    def __str__(self):
        return f"{self.command} seed={self.seed} exit={self.exit_code} - {self.created_at}"
