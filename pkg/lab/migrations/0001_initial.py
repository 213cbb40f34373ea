# Generated by Django 5.2.8 on 2026-10-17 09:12

import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('command', models.CharField(choices=[('identities', 'Identity suite'), ('converge', 'Convergence experiment'), ('covering', 'Covering fuzzing'), ('dump_measure', 'Measure dump')], max_length=30)),
                ('seed', models.IntegerField(default=0)),
                ('rank', models.IntegerField(default=2)),
                ('mode', models.CharField(default='exact', max_length=10)),
                ('config', models.JSONField(blank=True, default=dict)),
                ('exit_code', models.IntegerField(default=0)),
                ('report', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['command', 'created_at'], name='lab_run_command_created_idx')],
            },
        ),
    ]
