# -*- coding: utf-8 -*-
#
# Signals related to verification runs
#

import logging

from django.dispatch import Signal, receiver

logger = logging.getLogger(__name__)

# Sent by the property suite after every check. Arguments: ``name`` of
# the check, ``passed`` (bool) and ``detail``, a short human readable
# description of what was measured.
check_completed = Signal()

# Sent once the suite has run every check for a measure. Arguments:
# ``measure`` (its name) and ``failures``, the names of failed checks.
suite_finished = Signal()


@receiver(check_completed)
def log_check(sender, name, passed, detail="", **kwargs):
    if passed:
        logger.info("check %s passed: %s", name, detail)
    else:
        logger.warning("check %s FAILED: %s", name, detail)


@receiver(suite_finished)
def log_suite(sender, measure, failures, **kwargs):
    if failures:
        logger.warning("%s: %d failed checks (%s)", measure, len(failures), ", ".join(failures))
    else:
        logger.info("%s: every check passed", measure)
