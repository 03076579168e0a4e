# -*- coding: utf-8 -*-

import json
import logging

from django.core.exceptions import ValidationError
from django.db import models
from django.utils.translation import gettext_lazy as _

from shuffles.exceptions import ShuffleError

logger = logging.getLogger(__name__)


class StoredMeasureManager(models.Manager):
    """
    Manager for stored measures
    """
    def get_by_natural_key(self, name):
        return self.get(name=name)


class StoredMeasure(models.Model):
    """
    A named measure (gaps, a free candidate or a mixture) saved in the
    database so every command can resolve it by name.
    """

    name = models.SlugField(_("name"), max_length=100, unique=True)
    description = models.CharField(_("description"), max_length=200, blank=True)
    spec = models.TextField(_("JSON spec"))
    created = models.DateTimeField(_("date/time created"), auto_now_add=True)
    modified = models.DateTimeField(_("date/time modified"), auto_now=True)

    objects = StoredMeasureManager()

    class Meta:
        ordering = ("name", )
        verbose_name = _("stored measure")
        verbose_name_plural = _("stored measures")

    def __str__(self):
        return self.name

    def natural_key(self):
        return (self.name, )

    @property
    def data(self):
        return json.loads(self.spec)

    def get_measure(self):
        """
        Build the measure this row describes.
        """
        from shuffles import _from_spec
        return _from_spec(self.data, name=self.name)

    def clean(self):
        """
        The spec must be a JSON object that resolves to a measure.
        """
        try:
            data = json.loads(self.spec)
        except ValueError as e:
            raise ValidationError({"spec": _("Not valid JSON: %s") % e})
        if not isinstance(data, dict):
            raise ValidationError({"spec": _("The spec must be a JSON object.")})
        try:
            self.get_measure()
        except ShuffleError as e:
            raise ValidationError({"spec": str(e)})

    def save(self, *args, **kwargs):
        self.full_clean()
        super(StoredMeasure, self).save(*args, **kwargs)
        logger.info("Stored measure %s", self.name)
