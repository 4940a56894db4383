"""
Django settings for main project.

Generated by 'django-admin startproject' using Django 5.1.6.

For more information on this file, see
https://docs.djangoproject.com/en/5.1/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")


# Quick-start development settings - unsuitable for production
# See https://docs.djangoproject.com/en/5.1/howto/deployment/checklist/

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv(
    "SECRET_KEY", "django-insecure-0v4$k2w!c7hz9r#q1m@e8t+y5u^i6o(p)a&s*d3f-g_h=j%l"
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv("DEBUG", True)


ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    "weaveclust",
]


# Database
# https://docs.djangoproject.com/en/5.1/ref/settings/#databases

DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = "ru-RU"

TIME_ZONE = "Europe/Moscow"

USE_I18N = True

USE_TZ = True


# Logging

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "weaveclust": {
            "()": "weaveclust.formatters.WeaveclustFormatter",
            "format": "[{server_time}] {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "weaveclust": {
            "level": os.getenv("LOG_LEVEL", "INFO"),
            "class": "logging.StreamHandler",
            "formatter": "weaveclust",
        },
    },
    "loggers": {
        "weaveclust": {
            "handlers": ["weaveclust"],
            "level": "DEBUG",
            "propagate": False,
        },
    },
}


# Celery
BROKER_HOST = os.getenv("BROKER_HOST", "localhost")
BROKER_PORT = os.getenv("BROKER_PORT", "6379")
CELERY_BROKER_URL = f"redis://{BROKER_HOST}:{BROKER_PORT}/0"
CELERY_RESULT_BACKEND = f"redis://{BROKER_HOST}:{BROKER_PORT}/1"
CELERY_TASK_ALWAYS_EAGER = os.getenv("CELERY_TASK_ALWAYS_EAGER", "") in ("1", "true", "True")
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"


# Weaveclust application constants

WEAVECLUST_BUDGET = int(os.getenv("WEAVECLUST_BUDGET", 100_000))
WEAVECLUST_BRAID_BUDGET = int(os.getenv("WEAVECLUST_BRAID_BUDGET", 1_000_000))
WEAVECLUST_KEY_RANK_CAP = int(os.getenv("WEAVECLUST_KEY_RANK_CAP", 6))
WEAVECLUST_X_RANK_CAP = int(os.getenv("WEAVECLUST_X_RANK_CAP", 4))
WEAVECLUST_Y_RANK_CAP = int(os.getenv("WEAVECLUST_Y_RANK_CAP", 4))
WEAVECLUST_COXETER_DEPTH = int(os.getenv("WEAVECLUST_COXETER_DEPTH", 12))
WEAVECLUST_TRIALS = int(os.getenv("WEAVECLUST_TRIALS", 100))
WEAVECLUST_SEED = int(os.getenv("WEAVECLUST_SEED", 0))
