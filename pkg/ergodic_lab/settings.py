# ergodic_lab/settings.py

from pathlib import Path
import os
import environ

# ========== BASE CONFIG ==========
BASE_DIR = Path(__file__).resolve().parent.parent

env = environ.Env(
    DEBUG=(bool, False)
)

# Load .env file
environ.Env.read_env(os.path.join(BASE_DIR, ".env"))

DEBUG = env("DEBUG", default=True)
SECRET_KEY = env("SECRET_KEY", default="dev-secret-key-change-this")


# ========== INSTALLED APPS ==========
INSTALLED_APPS = [
    # Django built-ins
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Third-party
    'rest_framework',

    # Local apps
    'free_group',
    'boundary',
    'densities',
    'actions',
    'averaging',
    'relations',
    'lab',
]


# ========== DATABASE ==========
# Run records only; SQLite is enough
DATABASES = {
    'default': {
        'ENGINE': env("DB_ENGINE", default="django.db.backends.sqlite3"),
        'NAME': env("DB_NAME", default=str(BASE_DIR / "db.sqlite3")),
    }
}


# ========== LAB DEFAULTS ==========
LAB_SEED = env.int('LAB_SEED', default=0)
LAB_RANK = env.int('LAB_RANK', default=2)
LAB_MODE = env('LAB_MODE', default='exact')  # exact | float

# Brute-force sphere enumeration refuses |S_n(e)| above this
LAB_BRUTEFORCE_CAP = env.int('LAB_BRUTEFORCE_CAP', default=10 ** 6)
# Explicit (non-factored) sphere measures refuse radii above this
LAB_MATERIALIZE_RADIUS_CAP = env.int('LAB_MATERIALIZE_RADIUS_CAP', default=14)
# Working precision (bits) for interval-bounded real arithmetic
LAB_REAL_PRECISION = env.int('LAB_REAL_PRECISION', default=64)

LAB_RECORD_RUNS = env.bool('LAB_RECORD_RUNS', default=True)
LAB_MAX_RUNS_PER_COMMAND = env.int('LAB_MAX_RUNS_PER_COMMAND', default=50)

LAB_RANDOM_INSTANCE = {
    'classes': (2, 12),
    'class_size': (1, 20),
    'n_max': 4,
}


# ========== REST FRAMEWORK ==========
# Serializers only (config validation); nothing is served
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": (),
    "DEFAULT_PERMISSION_CLASSES": (),
    "UNAUTHENTICATED_USER": None,
}


# Logging Configuration
LOG_DIR = BASE_DIR / "logs"
os.makedirs(LOG_DIR, exist_ok=True)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'level': 'WARNING',
        },
        'file': {
            'class': 'logging.FileHandler',
            'filename': str(LOG_DIR / 'ergodic_lab.log'),
            'formatter': 'verbose',
        },
    },
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console', 'file'],
            'level': env('LAB_LOG_LEVEL', default='INFO'),
            'propagate': True,
        }
        for app in ('free_group', 'boundary', 'densities', 'actions', 'averaging', 'relations', 'lab')
    },
}


# ========== INTERNATIONALIZATION ==========
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True


# ========== DEFAULT PRIMARY KEY ==========
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
