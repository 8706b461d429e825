"""Django settings for running the workbench's management commands and tests."""

import os

from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get("BUCKRL_SECRET_KEY", "buckrl-local-only")

DEBUG = os.environ.get("BUCKRL_DEBUG") == "True"

INSTALLED_APPS = ["buckrl"]

DATABASES = {}

USE_TZ = True
TIME_ZONE = "UTC"

# Timezone for manifest timestamps and debug lines.
BUCKRL_TIMEZONE = os.environ.get("BUCKRL_TIMEZONE", "UTC")
