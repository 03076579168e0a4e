# -*- coding: utf-8 -*-
#
# Statistical test primitives shared by the verify suite and the tests:
# chi-square and Kolmogorov-Smirnov tests, empirical total variation,
# empirical distribution functions and concentration bounds.
#

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np
import scipy.stats

from shuffles import get_significance
from shuffles.exceptions import DimensionMismatch, EmptyCounts, OutOfRange

MIN_EXPECTED = 5


@dataclass(frozen=True)
class TestReport:
    statistic: float
    p_value: float
    samples: int
    passed: bool
    significance: float
    name: str = ""

    # Keep the test runner from collecting this class.
    __test__ = False

    def to_dict(self):
        return asdict(self)


def _report(statistic, p_value, samples, significance, name=""):
    if significance is None:
        significance = get_significance()
    p_value = float(min(max(p_value, 0.0), 1.0))
    return TestReport(statistic=float(statistic), p_value=p_value, samples=int(samples),
                      passed=p_value >= significance, significance=significance, name=name)


def _pool(observed, expected):
    """
    Merge every cell expecting fewer than MIN_EXPECTED observations,
    plus the next smallest cells while the merged cell is still short.
    """
    order = np.argsort(expected, kind="stable")
    observed, expected = observed[order], expected[order]
    if expected[0] >= MIN_EXPECTED:
        return observed, expected
    cut = int(np.count_nonzero(expected < MIN_EXPECTED))
    pooled = float(expected[:cut].sum())
    while cut < len(expected) and pooled < MIN_EXPECTED:
        pooled += expected[cut]
        cut += 1
    observed = np.concatenate(([observed[:cut].sum()], observed[cut:]))
    expected = np.concatenate(([pooled], expected[cut:]))
    return observed, expected


def chi_square_goodness(counts, expected, significance=None, name=""):
    """
    Pearson goodness of fit of observed ``counts`` (outcome -> count)
    against ``expected`` probabilities (outcome -> rational).
    """
    total = sum(counts.values())
    if total <= 0:
        raise EmptyCounts("No observations to test")
    probs = {k: Fraction(v) for k, v in expected.items() if v}
    mass = sum(probs.values(), Fraction(0))
    if abs(mass - 1) > Fraction(1, 10 ** 9):
        raise OutOfRange("Expected probabilities sum to %s, not 1" % float(mass))
    if any(c and k not in probs for k, c in counts.items()):
        # An impossible outcome was observed.
        return _report(math.inf, 0.0, total, significance, name)
    keys = sorted(probs, key=str)
    observed = np.array([counts.get(k, 0) for k in keys], dtype=float)
    wanted = np.array([float(probs[k]) * total for k in keys], dtype=float)
    observed, wanted = _pool(observed, wanted)
    if len(wanted) < 2:
        return _report(0.0, 1.0, total, significance, name)
    statistic = float(np.sum((observed - wanted) ** 2 / wanted))
    p_value = scipy.stats.chi2.sf(statistic, len(wanted) - 1)
    return _report(statistic, p_value, total, significance, name)


def chi_square_two_sample(counts_a, counts_b, significance=None, name=""):
    """
    Chi-square test that two count maps come from the same distribution.
    """
    if not sum(counts_a.values()) or not sum(counts_b.values()):
        raise EmptyCounts("Both samples must be nonempty")
    keys = sorted(set(counts_a) | set(counts_b), key=str)
    table = np.array([[counts_a.get(k, 0) for k in keys],
                      [counts_b.get(k, 0) for k in keys]], dtype=float)
    total = int(table.sum())
    if len(keys) < 2:
        return _report(0.0, 1.0, total, significance, name)
    statistic, p_value, dof, _ = scipy.stats.chi2_contingency(table, correction=False)
    return _report(statistic, p_value, total, significance, name)


def ks_uniform(samples, significance=None, name=""):
    """
    One-sample Kolmogorov-Smirnov test against the uniform law on [0, 1],
    with the asymptotic Kolmogorov p-value.
    """
    data = np.asarray(samples, dtype=float)
    if data.size == 0:
        raise EmptyCounts("No samples")
    if data.min() < 0 or data.max() > 1:
        raise OutOfRange("KS samples must lie in [0, 1]")
    statistic = scipy.stats.kstest(data, "uniform").statistic
    p_value = scipy.stats.kstwobign.sf(statistic * math.sqrt(data.size))
    return _report(statistic, p_value, data.size, significance, name)


def ks_distance(samples, cdf, cdf_left, points=()):
    """
    sup_x |F_n(x) - F(x)| for a possibly discontinuous distribution
    function given through ``cdf`` (F(x)) and ``cdf_left`` (F(x-)).
    ``points`` adds the atoms of F to the places where the sup is sought.
    """
    data = np.sort(np.asarray([float(s) for s in samples], dtype=float))
    n = data.size
    if n == 0:
        raise EmptyCounts("No samples")
    candidates = sorted(set(data.tolist()) | {float(p) for p in points} | {0.0, 1.0})
    distance = 0.0
    for t in candidates:
        below = np.searchsorted(data, t, side="left") / n
        upto = np.searchsorted(data, t, side="right") / n
        distance = max(distance, abs(upto - float(cdf(t))), abs(below - float(cdf_left(t))))
    return distance


def ks_against(samples, cdf, cdf_left, points=(), significance=None, name=""):
    """
    Kolmogorov-Smirnov test against an arbitrary distribution function.
    The Kolmogorov p-value is conservative when F has atoms.
    """
    n = len(samples)
    statistic = ks_distance(samples, cdf, cdf_left, points)
    p_value = scipy.stats.kstwobign.sf(statistic * math.sqrt(n))
    return _report(statistic, p_value, n, significance, name)


def empirical_cdf(samples):
    """
    Return x -> #{s <= x} / n.
    """
    data = np.sort(np.asarray(samples, dtype=float))
    if data.size == 0:
        raise EmptyCounts("No samples")

    def cdf(x):
        return np.searchsorted(data, float(x), side="right") / data.size
    return cdf


def empirical_tv(counts, reference):
    """
    Total variation between the empirical frequencies of ``counts``
    (permutation -> count) and a PermutationDistribution.
    """
    total = sum(counts.values())
    if total <= 0:
        raise EmptyCounts("No observations")
    for perm in counts:
        if len(perm) != reference.n:
            raise DimensionMismatch("Outcome %r is not a permutation of %d cards" % (perm, reference.n))
    keys = set(counts) | set(reference.probs)
    distance = sum((abs(Fraction(counts.get(k, 0), total) - reference.probs.get(k, 0)) for k in keys),
                   Fraction(0))
    return float(distance / 2)


def hoeffding_radius(samples, confidence=0.99):
    """
    Half-width t with P(|mean - E| >= t) <= 1 - confidence for [0, 1]
    valued i.i.d. samples.
    """
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * samples))


def binomial_radius(p, samples, sigmas=3.0):
    return sigmas * math.sqrt(float(p) * (1.0 - float(p)) / samples)


def empirical_tv_uniform(counts, n):
    """
    Total variation between the empirical frequencies of ``counts`` and
    the uniform law on S_n, without enumerating S_n.
    """
    total = sum(counts.values())
    if total <= 0:
        raise EmptyCounts("No observations")
    size = math.factorial(n)
    uniform = Fraction(1, size)
    seen = sum((abs(Fraction(c, total) - uniform) for c in counts.values() if c), Fraction(0))
    unseen = (size - sum(1 for c in counts.values() if c)) * uniform
    return float((seen + unseen) / 2)
