"""
Django settings for the formalitykit project.

Only the management commands read these settings. The computation modules of
exact_linalg, graded_algebra, hochschild, presentations and configurations take
explicit arguments and import nothing from Django; serializers, the certificate
archive and the commands need the configured stack.
"""

from pathlib import Path
from decouple import config
import dj_database_url

# Determine environment
ENVIRONMENT = config('DJANGO_ENV', 'development')
DEBUG = ENVIRONMENT == 'development'

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# No HTTP surface; Django still insists on a key.
SECRET_KEY = config('SECRET_KEY', default='formalitykit-local-only')

ALLOWED_HOSTS = []


# Application definition
INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'rest_framework',
    'exact_linalg',
    'graded_algebra',
    'hochschild',
    'presentations',
    'formality',
    'configurations',
    'cli',
]

# Database Configuration (certificate archive)
DATABASES = {
    'default': dj_database_url.config(
        default=config('DATABASE_URL', default=f'sqlite:///{BASE_DIR / "formalitykit.sqlite3"}')
    )
}

# Internationalization settings
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Computation defaults, overridable per invocation
FORMALITYKIT_FIELD = config('FORMALITYKIT_FIELD', default='rationals')
FORMALITYKIT_MAX_WORDS = config('FORMALITYKIT_MAX_WORDS', default=2_000_000, cast=int)
FORMALITYKIT_MAX_TRUNCATION = config('FORMALITYKIT_MAX_TRUNCATION', default=200, cast=int)
FORMALITYKIT_THREADS = config('FORMALITYKIT_THREADS', default=1, cast=int)
FORMALITYKIT_OUTPUT = config('FORMALITYKIT_OUTPUT', default='json')


# Logging goes to stderr; stdout carries reports only
LOG_LEVEL = config('FORMALITYKIT_LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in (
            'formalitykit',
            'exact_linalg',
            'graded_algebra',
            'hochschild',
            'presentations',
            'formality',
            'configurations',
            'cli',
        )
    },
}
