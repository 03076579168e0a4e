# -*- coding: utf-8 -*-

import json
import logging
import os

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

logger = logging.getLogger(__name__)

DEFAULT_EXACT_CAP = 6
DEFAULT_CELL_CAP = 8
DEFAULT_SIGNIFICANCE = 0.01
DEFAULT_SUITE_SIGNIFICANCE = 0.001
DEFAULT_VERIFY_SAMPLES = 100000
DEFAULT_VERIFY_MAX_N = 4


def _setting(name, default):
    """
    Read an app setting, falling back to the default when the setting is
    missing or when the library is used without a configured Django project.
    """
    if not settings.configured:
        return default
    return getattr(settings, name, default)


def _positive_int(name, default):
    value = _setting(name, default)
    if not isinstance(value, int) or value < 1:
        raise ImproperlyConfigured("%s must be a positive integer, got %r" % (name, value))
    return value


def _probability(name, default):
    value = _setting(name, default)
    if not isinstance(value, (int, float)) or not 0 < value < 1:
        raise ImproperlyConfigured("%s must lie strictly between 0 and 1, got %r" % (name, value))
    return float(value)


def get_exact_cap():
    """
    Largest pack size the exact oracles will enumerate.
    """
    return _positive_int("SHUFFLES_EXACT_CAP", DEFAULT_EXACT_CAP)


def get_cell_cap():
    """
    Largest number of cells a measure may be cut into for exact enumeration.
    """
    return _positive_int("SHUFFLES_CELL_CAP", DEFAULT_CELL_CAP)


def get_significance():
    return _probability("SHUFFLES_SIGNIFICANCE", DEFAULT_SIGNIFICANCE)


def get_suite_significance():
    return _probability("SHUFFLES_SUITE_SIGNIFICANCE", DEFAULT_SUITE_SIGNIFICANCE)


def get_verify_samples():
    return _positive_int("SHUFFLES_VERIFY_SAMPLES", DEFAULT_VERIFY_SAMPLES)


def get_verify_max_n():
    return _positive_int("SHUFFLES_VERIFY_MAX_N", DEFAULT_VERIFY_MAX_N)


def get_debug_assertions():
    """
    Whether samplers assert their structural invariants on every draw.
    Follows DEBUG unless SHUFFLES_DEBUG_ASSERTIONS is set.
    """
    return bool(_setting("SHUFFLES_DEBUG_ASSERTIONS", _setting("DEBUG", False)))


def get_measure(value):
    """
    Resolve a measure from a name or a spec, in this order:

    * a dict in the JSON spec form (gaps, holes/atoms or a mixture),
    * a built-in name ("lebesgue", "gsr", "a-shuffle:K", "gap(lo,hi,side)", ...),
    * a name listed in settings.SHUFFLES_MEASURES,
    * a path to a JSON spec file,
    * the name of a StoredMeasure in the database.

    Returns a QuasiUniformMeasure, a MeasureMixture or, for specs that are
    not quasi-uniform, a MeasureCandidate.
    """
    from shuffles import measure
    from shuffles.exceptions import UnknownMeasure

    if isinstance(value, dict):
        return _from_spec(value, name=None)
    try:
        return measure.named_measure(value)
    except UnknownMeasure:
        pass

    extra = _setting("SHUFFLES_MEASURES", {})
    if not isinstance(extra, dict):
        raise ImproperlyConfigured("SHUFFLES_MEASURES must be a dict of name -> spec")
    if value in extra:
        logger.debug("Resolved measure %r from settings", value)
        return _from_spec(extra[value], name=value)

    if os.path.isfile(value):
        with open(value) as f:
            try:
                data = json.load(f)
            except ValueError as e:
                raise UnknownMeasure("%s is not valid JSON: %s" % (value, e))
        logger.debug("Resolved measure from file %s", value)
        return _from_spec(data, name=os.path.splitext(os.path.basename(value))[0])

    from shuffles.models import StoredMeasure
    try:
        stored = StoredMeasure.objects.get(name=value)
    except StoredMeasure.DoesNotExist:
        raise UnknownMeasure("No measure named %r" % value)
    logger.debug("Resolved measure %r from the database", value)
    return stored.get_measure()


def _from_spec(data, name):
    from shuffles import measure
    from shuffles.exceptions import UnknownMeasure
    from shuffles.ordering import MeasureMixture

    if isinstance(data, str):
        return get_measure(data)
    if not isinstance(data, dict):
        raise UnknownMeasure("A measure spec must be a JSON object, got %r" % (data, ))
    if "mixture" in data:
        return MeasureMixture.from_dict(data, resolve=get_measure, name=name)
    return measure.from_dict(data, name=name)
