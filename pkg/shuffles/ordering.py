# -*- coding: utf-8 -*-
#
# I-invariant random orderings of the integers, restricted to finite
# label sets.
#
# Every label k receives an independent conjugate pair (X_k, Y_k) drawn
# from a quasi-uniform measure; labels are then ordered by
# :func:`compare`. Mixtures pick one measure per ordering.
#

from __future__ import annotations

import functools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from shuffles import get_debug_assertions
from shuffles import permutations
from shuffles.exceptions import (IncomparableSamples, MeasureError, UnknownMeasure,
                                 WindowTooSmall)
from shuffles.measure import QuasiUniformMeasure, as_fraction, format_fraction
from shuffles.stats import chi_square_two_sample

logger = logging.getLogger(__name__)

SANDWICH_SIGMAS = 4


@dataclass(frozen=True)
class LabelSet:
    labels: tuple

    def __post_init__(self):
        labels = tuple(int(k) for k in self.labels)
        if not labels:
            raise ValueError("A label set must not be empty")
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise ValueError("Labels must be strictly increasing: %r" % (labels, ))
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, labels):
        if isinstance(labels, cls):
            return labels
        return cls(tuple(labels))

    @classmethod
    def first(cls, n):
        return cls(tuple(range(1, n + 1)))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


@dataclass(frozen=True)
class OrderingSample:
    """
    A strict total order on a finite label set, stored as the position
    (1..n) of every label. ``samples`` keeps the conjugate pair each label
    was given, and ``measure`` the component the ordering was drawn from.
    """
    labels: LabelSet
    rank: dict
    samples: dict = field(default=None, compare=False, repr=False)
    measure: QuasiUniformMeasure = field(default=None, compare=False, repr=False)

    def precedes(self, k, l):
        return self.rank[k] < self.rank[l]

    def permutation(self):
        """
        One-line notation rho, with rho(i) the position of the i-th
        smallest label.
        """
        return tuple(self.rank[k] for k in self.labels)

    def order(self):
        """
        The labels from bottom to top.
        """
        return sorted(self.labels, key=self.rank.__getitem__)


class MeasureMixture(object):
    """
    A finite mixture of quasi-uniform measures with exact rational weights.
    """

    def __init__(self, components, name=None):
        components = [(as_fraction(w), m) for w, m in components]
        if not components:
            raise MeasureError("A mixture needs at least one component")
        if any(w <= 0 for w, m in components):
            raise MeasureError("Mixture weights must be positive")
        if sum(w for w, m in components) != 1:
            raise MeasureError("Mixture weights must sum to exactly 1")
        for w, m in components:
            if not isinstance(m, QuasiUniformMeasure):
                raise MeasureError("Mixture component %r is not a quasi-uniform measure" % (m, ))
        self.components = tuple(components)
        self.name = name

    @classmethod
    def from_dict(cls, data, resolve, name=None):
        try:
            parts = [(c["weight"], resolve(c["measure"])) for c in data["mixture"]]
        except (KeyError, TypeError) as e:
            raise UnknownMeasure("Malformed mixture spec: %s" % e)
        return cls(parts, name=name)

    def choose(self, rng):
        u = Fraction(float(rng.random()))
        total = Fraction(0)
        for weight, measure in self.components:
            total += weight
            if u < total:
                return measure
        return self.components[-1][1]

    def to_dict(self):
        return {"mixture": [{"weight": format_fraction(w), "measure": m.to_dict()}
                            for w, m in self.components]}

    def __repr__(self):
        return "<MeasureMixture: %s>" % (self.name or "%d components" % len(self.components))


@dataclass(frozen=True)
class EmpiricalPosition:
    x_hat: float
    y_hat: float
    window: int
    sample: object = field(default=None, compare=False)


def compare(s_m, s_n, m, n):
    """
    True iff m lies below n. For m < n in the natural order this holds
    when X_m < X_n, or Y_m < Y_n, or both coordinates tie with X > Y
    (a right-hand atom keeps the natural order).
    """
    if m == n:
        raise IncomparableSamples("A label is not comparable with itself")
    if m > n:
        return not compare(s_n, s_m, n, m)
    xm, xn, ym, yn = s_m.x(), s_n.x(), s_m.y(), s_n.y()
    if xm < xn or ym < yn:
        return True
    if xm == xn and ym == yn:
        if xm > ym:
            return True
        if xm < ym:
            return False
        raise IncomparableSamples("Labels %d and %d share the diffuse point %r" % (m, n, xm))
    return False


def _choose_measure(source, rng):
    if isinstance(source, MeasureMixture):
        return source.choose(rng)
    if isinstance(source, QuasiUniformMeasure):
        return source
    raise MeasureError("%r cannot generate orderings: it is not quasi-uniform" % (source, ))


def _assert_consistent(order, samples):
    """
    Check that the sorted labels are pairwise consistent with compare,
    so compare was transitive on this draw, that coordinates are monotone
    along the order, and that labels sharing an atom are in natural
    (right atom) or reversed (left atom) order.
    """
    for i, j in enumerate(order):
        for k in order[i + 1:]:
            assert compare(samples[j], samples[k], j, k), "compare is not transitive"
            sj, sk = samples[j], samples[k]
            assert sj.x() <= sk.x() and sj.y() <= sk.y(), "coordinates are not monotone"
            if not sj.is_diffuse and sj.gap_index == sk.gap_index:
                assert (j < k) == (sj.x() > sj.y()), "atom order violated"


def sample_ordering(source, labels, rng):
    """
    Draw one ordering of ``labels`` from P^mu, or from a mixture of such
    laws (one component per ordering).
    """
    labels = LabelSet.of(labels)
    measure = _choose_measure(source, rng)
    draws = measure.sample_conjugate_pairs(rng, len(labels))
    samples = dict(zip(labels.labels, draws))

    def cmp(j, k):
        return -1 if compare(samples[j], samples[k], j, k) else 1

    order = sorted(labels.labels, key=functools.cmp_to_key(cmp))
    if get_debug_assertions():
        _assert_consistent(order, samples)
    rank = {k: position for position, k in enumerate(order, 1)}
    return OrderingSample(labels=labels, rank=rank, samples=samples, measure=measure)


def sample_permutations(source, n, samples, rng, labels=None):
    """
    Counter of the permutations induced on ``labels`` (default 1..n) over
    ``samples`` independent orderings.
    """
    labels = LabelSet.of(labels) if labels is not None else LabelSet.first(n)
    return Counter(sample_ordering(source, labels, rng).permutation() for _ in range(samples))


def empirical_positions(source, target_label, window, rng):
    """
    Estimate the conjugate pair of ``target_label`` from the ordering
    alone: x_hat is the fraction of labels in [-N, target) below it and
    y_hat the fraction of labels in (target, N] below it, both divided
    by N.
    """
    if window < 1 or window < abs(target_label) + 1:
        raise WindowTooSmall("Window %d cannot contain label %d with room on both sides"
                             % (window, target_label))
    measure = _choose_measure(source, rng)
    target = measure.sample_conjugate_pair(rng)
    lower = measure.sample_conjugate_pairs(rng, target_label + window)
    upper = measure.sample_conjugate_pairs(rng, window - target_label)
    below_lower = sum(1 for i, s in enumerate(lower)
                      if compare(s, target, -window + i, target_label))
    below_upper = sum(1 for i, s in enumerate(upper)
                      if compare(s, target, target_label + 1 + i, target_label))
    return EmpiricalPosition(x_hat=below_lower / window, y_hat=below_upper / window,
                             window=window, sample=target)


@dataclass(frozen=True)
class PositionSandwich:
    """
    One-sided position estimates of label 1 against the empirical law
    nu_hat of the full-window estimates of labels 1..spread. ``lower`` is
    nu_hat[0, over - slack) and ``upper`` is nu_hat[0, over + slack].
    """
    lower: float
    under: float
    over: float
    upper: float
    slack: float

    @property
    def holds(self):
        return (self.lower <= self.under + self.slack
                and self.under <= self.over + self.slack
                and self.over <= self.upper + self.slack)


def _fraction_above_below(ordering, k, size):
    rank = ordering.rank[k]
    return sum(1 for i in range(k + 1, k + size + 1) if ordering.rank[i] < rank) / size


def sandwich_from_ordering(ordering, window, spread):
    """
    The finite-window sandwich nu_hat[0, over) <= under <= over <= nu_hat[0, over]
    for an ordering of the labels 1..spread + window. ``over`` is the
    fraction of the labels (k, k + window] lying below k, evaluated for
    every k <= spread; ``under`` is the same fraction for label 1 over
    the first half of the window only. Both one-sided averages converge
    for an I-invariant ordering, so the inequalities hold up to an
    O(N^-1/2) slack.
    """
    if window < 2 or spread < 1:
        raise WindowTooSmall("A sandwich needs window >= 2 and spread >= 1")
    missing = [k for k in range(1, spread + window + 1) if k not in ordering.rank]
    if missing:
        raise WindowTooSmall("The ordering does not hold label %d" % missing[0])
    over = [_fraction_above_below(ordering, k, window) for k in range(1, spread + 1)]
    under = _fraction_above_below(ordering, 1, window // 2)
    slack = SANDWICH_SIGMAS / math.sqrt(min(spread, window // 2))
    lower = sum(1 for v in over if v < over[0] - slack) / spread
    upper = sum(1 for v in over if v <= over[0] + slack) / spread
    return PositionSandwich(lower=lower, under=under, over=over[0], upper=upper, slack=slack)


def position_sandwich(source, window, spread, rng):
    """
    Sample one ordering of 1..spread + window and return its
    :class:`PositionSandwich`.
    """
    ordering = sample_ordering(source, LabelSet.first(spread + window), rng)
    return sandwich_from_ordering(ordering, window, spread)


def exchangeability_test(source, n, index_sets, samples, rng, significance=None):
    """
    Two-sample chi-square test that the rankings induced on two increasing
    label sets of size n have the same law.
    """
    first, second = (LabelSet.of(s) for s in index_sets)
    if len(first) != n or len(second) != n:
        raise ValueError("Both index sets must hold exactly %d labels" % n)
    counts_a = sample_permutations(source, n, samples, rng, labels=first)
    counts_b = sample_permutations(source, n, samples, rng, labels=second)
    report = chi_square_two_sample(counts_a, counts_b, significance=significance,
                                   name="exchangeability")
    logger.debug("Exchangeability %r vs %r: statistic %.3f, p %.4f",
                 first.labels, second.labels, report.statistic, report.p_value)
    return report


def uniform_ordering(labels, rng):
    """
    The fully shuffled deck: labels ordered by i.i.d. uniform positions.
    """
    labels = LabelSet.of(labels)
    positions = rng.random(len(labels)).tolist()
    ranks = permutations.ranks(positions)
    rank = dict(zip(labels.labels, ranks))
    return OrderingSample(labels=labels, rank=rank,
                          samples=dict(zip(labels.labels, positions)))


def relative_positions(ordering):
    """
    Relative position of every label: the fraction of the other labels
    lying below it.
    """
    n = len(ordering.labels)
    return {k: (ordering.rank[k] - 1) / n for k in ordering.labels}
