"""
Run configuration: a key=value file read through a django-environ Env with a
private environment, then flag overrides, then RunConfigSerializer.

Keys: seed rank mode cap_sphere out nmax p action density family observable
prefix timing samples inject_fault instances max_points kind n.
"""
from contextlib import contextmanager
from dataclasses import asdict, dataclass
import os

from django.conf import settings
import environ

from free_group.exceptions import SpecParseError
from lab.exceptions import ConfigInvalid
from lab.serializers import RunConfigSerializer


class RunConfigEnv(environ.Env):
    """Env whose values come from a config file only, never from os.environ."""
    ENVIRON = {}


@dataclass(frozen=True)
class RunConfig:
    seed: int
    rank: int
    mode: str
    cap_sphere: int
    out: str
    nmax: int
    p: object
    action: str
    density: str
    family: str
    observable: str
    prefix: str
    timing: bool
    samples: int
    inject_fault: str
    instances: int
    max_points: int
    kind: str
    n: int

    @property
    def approximate(self):
        return self.mode == 'float'

    def as_dict(self):
        data = asdict(self)
        data['p'] = str(self.p)
        return data


def config_scheme():
    return {
        'seed': (int, getattr(settings, 'LAB_SEED', 0)),
        'rank': (int, getattr(settings, 'LAB_RANK', 2)),
        'mode': (str, getattr(settings, 'LAB_MODE', 'exact')),
        'cap_sphere': (int, getattr(settings, 'LAB_BRUTEFORCE_CAP', 10 ** 6)),
        'out': (str, ''),
        'nmax': (int, 8),
        'p': (str, '2'),
        'action': (str, 'sanov:5'),
        'density': (str, 'uniform'),
        'family': (str, 'spherical'),
        'observable': (str, 'centered-indicator:1'),
        'prefix': (str, ''),
        'timing': (bool, False),
        'samples': (int, 10),
        'inject_fault': (str, ''),
        'instances': (int, 100),
        'max_points': (int, 200),
        'kind': (str, 'density'),
        'n': (int, 2),
    }


def load_run_config(path=None, **overrides):
    scheme = config_scheme()
    env_class = type('LoadedRunConfigEnv', (RunConfigEnv,), {'ENVIRON': {}})
    if path:
        if not os.path.exists(path):
            raise SpecParseError(f"config file {path} not found", 0, path)
        env_class.read_env(path, overwrite=True)
        unknown = sorted(set(env_class.ENVIRON) - set(scheme))
        if unknown:
            raise SpecParseError(f"unknown config key {unknown[0]!r}", 0, path)
    env = env_class(**scheme)
    data = {}
    for key in scheme:
        try:
            data[key] = env(key)
        except ValueError as exc:
            raise SpecParseError(f"bad value for {key}: {exc}", 0, path or "")
    data.update({key: value for key, value in overrides.items() if key in scheme and value is not None})
    serializer = RunConfigSerializer(data=data)
    if not serializer.is_valid():
        raise ConfigInvalid(serializer.errors)
    return RunConfig(**serializer.validated_data)


@contextmanager
def applied_caps(config):
    """Apply the config's sphere cap to LAB_BRUTEFORCE_CAP for the duration of a run."""
    saved = getattr(settings, 'LAB_BRUTEFORCE_CAP', 10 ** 6)
    settings.LAB_BRUTEFORCE_CAP = config.cap_sphere
    try:
        yield config
    finally:
        settings.LAB_BRUTEFORCE_CAP = saved
