# -*- coding: utf-8 -*-
# Lets plain pytest run the Django test suite: configure settings,
# set up the app registry and create the test database for the session.

import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "django_shuffles.settings")
django.setup()

import pytest
from django.test.utils import (setup_databases, setup_test_environment,
                               teardown_databases, teardown_test_environment)


@pytest.fixture(scope="session", autouse=True)
def django_test_databases():
    setup_test_environment()
    old_config = setup_databases(verbosity=0, interactive=False)
    yield
    teardown_databases(old_config, verbosity=0)
    teardown_test_environment()
