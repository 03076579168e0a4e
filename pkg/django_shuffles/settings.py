# Django settings for django-shuffles project.
import os
PROJECT_PATH = os.path.join(os.path.abspath(os.path.dirname(__file__)), os.path.pardir)

DEBUG = True

ADMINS = (
    # ('Your Name', 'your_email@example.com'),
)

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.path.join(PROJECT_PATH, "shuffles.db"),
    }
}

# Largest pack size the exact oracles will enumerate. Enumeration cost
# grows like (number of cells)^n * n!, so keep this small.
#SHUFFLES_EXACT_CAP = 6

# Largest number of cells (atoms plus stretches of diffuse mass) a
# measure may be cut into for exact enumeration.
#SHUFFLES_CELL_CAP = 8

# Significance level of a single statistical test, and of each test
# inside the verify suite.
#SHUFFLES_SIGNIFICANCE = 0.01
#SHUFFLES_SUITE_SIGNIFICANCE = 0.001

# Monte Carlo sample size and largest pack size used by "manage.py verify".
#SHUFFLES_VERIFY_SAMPLES = 100000
#SHUFFLES_VERIFY_MAX_N = 4

# Assert transitivity, monotone coordinates and atom order on every
# sampled ordering. Defaults to DEBUG.
#SHUFFLES_DEBUG_ASSERTIONS = True

# Extra named measures, resolvable by name like the built-ins. Values use
# the JSON spec form: gaps, free holes/atoms, or a mixture.
#SHUFFLES_MEASURES = {
#    "thirds": {"gaps": [{"lo": "0", "hi": "1/3", "atom_side": "right"},
#                        {"lo": "2/3", "hi": "1", "atom_side": "left"}]},
#    "half-gsr": {"mixture": [{"weight": "1/2", "measure": "gsr"},
#                             {"weight": "1/2", "measure": "lebesgue"}]},
#}

TIME_ZONE = 'UTC'

LANGUAGE_CODE = 'en-us'

USE_I18N = True

USE_TZ = True

# Make this unique, and don't share it with anybody.
SECRET_KEY = 'shuffles-development-key-do-not-use-in-production'

INSTALLED_APPS = (
    'shuffles.apps.ShufflesConfig',
)

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

# Send the shuffles log to the console. Commands write their data to
# stdout or --out, so log lines go to stderr.
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(name)s: %(message)s'
        }
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        }
    },
    'loggers': {
        'shuffles': {
            'handlers': ['console'],
            'level': os.environ.get('SHUFFLES_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    }
}
