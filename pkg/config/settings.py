import os
import sys
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def env_flag(name, default=False):
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


# the test runner turns on the rebuild-and-compare checks in apply_flip
TESTING = sys.argv[1:2] == ["test"] or "pytest" in sys.modules


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv(
    "DJANGO_SECRET_KEY",
    "django-insecure-workbench-local-key-change-me",
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = env_flag("DJANGO_DEBUG", True)

ALLOWED_HOSTS = ["*"]


# Application definition

INSTALLED_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
    # 3rd party
    "rest_framework",
    "django_filters",
    # local apps
    "workbench",
]


MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "config.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]

WSGI_APPLICATION = "config.wsgi.application"


# Database
# https://docs.djangoproject.com/en/5.1/ref/settings/#databases

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}


# Password validation
# https://docs.djangoproject.com/en/5.1/ref/settings/#auth-password-validators

AUTH_PASSWORD_VALIDATORS = [
    {
        "NAME": "django.contrib.auth.password_validation.UserAttributeSimilarityValidator",
    },
    {
        "NAME": "django.contrib.auth.password_validation.MinimumLengthValidator",
    },
]


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# Static files (CSS, JavaScript, Images)
# https://docs.djangoproject.com/en/5.1/howto/static-files/
STATIC_URL = "static/"
STATIC_ROOT = os.path.join(BASE_DIR / "static")

# Default primary key field type
# https://docs.djangoproject.com/en/5.1/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

REST_FRAMEWORK = {
    "DEFAULT_FILTER_BACKENDS": [
        "django_filters.rest_framework.DjangoFilterBackend",
    ],
    "DEFAULT_PAGINATION_CLASS": "rest_framework.pagination.PageNumberPagination",
    "PAGE_SIZE": 10,
    "DEFAULT_AUTHENTICATION_CLASSES": [
        "rest_framework.authentication.SessionAuthentication",
        "rest_framework.authentication.BasicAuthentication",
    ],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.IsAuthenticatedOrReadOnly",
    ],
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "workbench": {
            "handlers": ["console"],
            "level": os.getenv("WORKBENCH_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
    },
}


def _optional_int(name):
    value = os.getenv(name)
    return int(value) if value not in (None, "") else None


WORKBENCH = {
    "DATA_DIR": Path(os.getenv("WORKBENCH_DATA_DIR", BASE_DIR / "data")),
    # cooling schedule T(k) = t0 * rate**k
    "ANNEAL_T0": float(os.getenv("WORKBENCH_ANNEAL_T0", "1000")),
    "ANNEAL_RATE": float(os.getenv("WORKBENCH_ANNEAL_RATE", "0.99997")),
    "ANNEAL_ITERATIONS": int(os.getenv("WORKBENCH_ANNEAL_ITERATIONS", "500000")),
    "ANNEAL_EPSILON": float(os.getenv("WORKBENCH_ANNEAL_EPSILON", "0.01")),
    "ANNEAL_POWER": float(os.getenv("WORKBENCH_ANNEAL_POWER", "-3")),
    # None means d + 1, i.e. "stay non-d-step"
    "ANNEAL_MIN_WIDTH": _optional_int("WORKBENCH_ANNEAL_MIN_WIDTH"),
    "INSERTION_BIAS": float(os.getenv("WORKBENCH_INSERTION_BIAS", "1.0")),
    "SAMPLE_RETRY_CAP": int(os.getenv("WORKBENCH_SAMPLE_RETRY_CAP", "64")),
    "SHELLING_NODE_LIMIT": int(os.getenv("WORKBENCH_SHELLING_NODE_LIMIT", "200000")),
    "CHECK_INVARIANTS": env_flag("WORKBENCH_CHECK_INVARIANTS", TESTING),
    "SLOW_TESTS": env_flag("WORKBENCH_SLOW_TESTS", False),
}
