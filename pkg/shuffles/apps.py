# -*- coding: utf-8 -*-

from django.apps import AppConfig


class ShufflesConfig(AppConfig):
    name = "shuffles"
    verbose_name = "Shuffles"
    default_auto_field = "django.db.models.AutoField"

    def ready(self):
        # Connect the logging receiver.
        from shuffles import signals  # noqa: F401
