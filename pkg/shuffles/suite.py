# -*- coding: utf-8 -*-
#
# The property suite run by ``manage.py verify``: structural checks on
# the measure, exact oracle identities and Monte Carlo comparisons of the
# samplers against the oracles.
#

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

from fractions import Fraction

import numpy as np

from shuffles import (get_exact_cap, get_suite_significance, get_verify_max_n,
                      get_verify_samples)
from shuffles import kernels, oracle, ordering, stats
from shuffles.measure import MeasureCandidate, QuasiUniformMeasure, is_quasi_uniform
from shuffles.signals import check_completed, suite_finished

logger = logging.getLogger(__name__)

QUASI_UNIFORM = "quasi-uniform sandwich"
INVOLUTION = "conjugation involution"
MARGINALS = "marginal uniformity"
CONCORDANCE = "oracle-vs-sampler"
DOUBLY_STOCHASTIC = "double stochasticity"
RESTRICTION = "restriction consistency"
ROUTES = "route equivalence"
DUALITY = "type-2 duality"
EXCHANGEABILITY = "exchangeability"


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    measure: str
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self):
        return {"measure": self.measure, "passed": self.passed, "failures": self.failures,
                "checks": [asdict(c) for c in self.checks]}


class PropertySuite(object):
    """
    Run every property check for one measure (or mixture). Each check
    gets its own random stream spawned from ``seed``, so a check's
    outcome does not depend on which checks ran before it.
    """

    def __init__(self, source, seed, name=None, max_n=None, samples=None, significance=None):
        self.source = source
        self.name = name or getattr(source, "name", None) or repr(source)
        self.max_n = min(max_n or get_verify_max_n(), get_exact_cap())
        self.samples = samples or get_verify_samples()
        self.significance = significance or get_suite_significance()
        self.seed = seed
        self.report = SuiteReport(measure=self.name)
        self._streams = iter(np.random.SeedSequence(seed).spawn(64))

    def rng(self):
        return np.random.default_rng(next(self._streams))

    def record(self, name, passed, detail=""):
        result = CheckResult(name=name, passed=bool(passed), detail=detail)
        self.report.checks.append(result)
        check_completed.send(sender=self.__class__, name=name, passed=result.passed, detail=detail)
        return result

    @property
    def sizes(self):
        return range(2, self.max_n + 1)

    def components(self):
        if isinstance(self.source, ordering.MeasureMixture):
            return [m for w, m in self.source.components]
        return [self.source]

    def run(self):
        logger.info("Verifying %s with n <= %d and %d samples", self.name, self.max_n, self.samples)
        if self.check_quasi_uniform():
            self.check_involution()
            self.check_concordance()
            self.check_exchangeability()
            if isinstance(self.source, QuasiUniformMeasure):
                self.check_marginals()
                self.check_double_stochasticity()
                self.check_restriction()
                self.check_routes()
                self.check_duality()
        suite_finished.send(sender=self.__class__, measure=self.name, failures=self.report.failures)
        return self.report

    #
    # Checks
    #

    def check_quasi_uniform(self):
        """
        Returns whether the remaining checks can run, which needs every
        component to be a validated gap measure.
        """
        components = self.components()
        bad = [repr(m) for m in components if not is_quasi_uniform(m)]
        detail = "not quasi-uniform: %s" % ", ".join(bad) if bad else "sandwich holds at every atom"
        self.record(QUASI_UNIFORM, not bad, detail)
        if not bad and any(isinstance(m, MeasureCandidate) for m in components):
            logger.info("%s is given by free atoms, skipping the sampler checks", self.name)
            return False
        return not bad

    def check_involution(self):
        """
        mu'' = mu, and the conjugate's distribution function is the
        inverse of mu's on a grid and at every breakpoint.
        """
        problems = []
        for measure in self.components():
            conjugate = measure.conjugate()
            if conjugate.conjugate() != measure:
                problems.append("%r is not its own double conjugate" % measure)
            points = set(measure.breakpoints()) | {Fraction(k, 48) for k in range(49)}
            for y in sorted(points):
                if conjugate.cdf(y) != measure.quantile(y) or conjugate.cdf_left(y) != measure.quantile_left(y):
                    problems.append("%r: inverse mismatch at %s" % (measure, y))
                    break
        self.record(INVOLUTION, not problems, "; ".join(problems) or "mu'' = mu, mu' inverts mu")

    def check_concordance(self):
        worst, failed = [], []
        for n in self.sizes:
            exact = self.exact_ordering(n)
            counts = ordering.sample_permutations(self.source, n, self.samples, self.rng())
            report = stats.chi_square_goodness(counts, exact.probs, self.significance, name="n=%d" % n)
            worst.append("n=%d TV %.4f p %.4f" % (n, stats.empirical_tv(counts, exact), report.p_value))
            if not report.passed:
                failed.append(n)
        self.record(CONCORDANCE, not failed, ", ".join(worst))

    def check_exchangeability(self):
        report = ordering.exchangeability_test(self.source, 3, ((1, 2, 3), (5, 40, 1000)),
                                               self.samples, self.rng(), self.significance)
        self.record(EXCHANGEABILITY, report.passed,
                    "{1,2,3} vs {5,40,1000}: p %.4f" % report.p_value)

    def samplers(self):
        measure = self.source
        result = [kernels.NuMu(measure), kernels.NuMuStar(measure)]
        if measure.is_purely_atomic:
            result.append(kernels.Deterministic(kernels.shuffle_map_from_measure(measure)))
        return result

    def check_marginals(self):
        details, passed = [], True
        for sampler in self.samplers():
            draws = sampler.draws(self.rng(), self.samples)
            for coordinate in ("u", "v"):
                values = [float(d.coordinate(coordinate)) for d in draws]
                report = stats.ks_uniform(values, self.significance)
                passed = passed and report.passed
                details.append("%s %s p %.4f" % (sampler.kind, coordinate, report.p_value))
        self.record(MARGINALS, passed, ", ".join(details))

    def check_double_stochasticity(self):
        bad = [n for n in self.sizes
               if not oracle.is_doubly_stochastic(oracle.transition_matrix(self.exact_step(n, "one")))
               or not oracle.is_doubly_stochastic(oracle.transition_matrix(self.exact_step(n, "two")))]
        self.record(DOUBLY_STOCHASTIC, not bad,
                    "bad sizes %r" % bad if bad else "rows and columns sum to 1 for n <= %d" % self.max_n)

    def check_restriction(self):
        bad = ["%d -> %d" % (n, m) for n in self.sizes for m in range(2, n)
               if self.exact_ordering(n).marginal(m) != self.exact_ordering(m)]
        self.record(RESTRICTION, not bad, ", ".join(bad) or "marginals agree for m < n <= %d" % self.max_n)

    def check_routes(self):
        """
        The final order of a type one step agrees with the ordering law:
        exactly through the coupling route for atomic measures, by
        Monte Carlo otherwise. Atomic measures also get the deterministic
        map compared with type two.
        """
        measure = self.source
        problems, details = [], []
        sampler = kernels.NuMu(measure)
        for n in self.sizes:
            exact = self.exact_ordering(n)
            if measure.is_purely_atomic:
                if kernels.exact_coupling_step_distribution(measure, n) != exact:
                    problems.append("coupling route differs at n=%d" % n)
                deterministic = kernels.Deterministic(kernels.shuffle_map_from_measure(measure))
                if deterministic.exact_step(n) != self.exact_step(n, "two"):
                    problems.append("deterministic map differs from type two at n=%d" % n)
            else:
                counts = kernels.sample_steps(n, sampler, self.samples, self.rng())
                report = stats.chi_square_goodness(counts, exact.probs, self.significance)
                details.append("n=%d TV %.4f" % (n, stats.empirical_tv(counts, exact)))
                if not report.passed:
                    problems.append("sampled steps differ at n=%d (p %.4f)" % (n, report.p_value))
        self.record(ROUTES, not problems, "; ".join(problems) or ", ".join(details) or "exact routes agree")

    def check_duality(self):
        problems = []
        sampler = kernels.NuMuStar(self.source)
        for n in self.sizes:
            one, two = self.exact_step(n, "one"), self.exact_step(n, "two")
            if two != one.inverse_pushforward():
                problems.append("type two is not the inverse of type one at n=%d" % n)
            counts = kernels.sample_steps(n, sampler, self.samples, self.rng())
            report = stats.chi_square_goodness(counts, one.inverse_pushforward().probs, self.significance)
            if not report.passed:
                problems.append("sampled type two steps differ at n=%d (p %.4f)" % (n, report.p_value))
        self.record(DUALITY, not problems, "; ".join(problems) or "type two inverts type one")

    #
    # Oracles, cached per size
    #

    def exact_ordering(self, n):
        cache = self.__dict__.setdefault("_orderings", {})
        if n not in cache:
            cache[n] = oracle.exact_source_distribution(self.source, n)
        return cache[n]

    def exact_step(self, n, step_type):
        if isinstance(self.source, QuasiUniformMeasure):
            return oracle.exact_step_distribution(self.source, n, step_type)
        if step_type == "two":
            return self.exact_ordering(n).inverse_pushforward()
        return self.exact_ordering(n)


def verify(source, seed, **kwargs):
    return PropertySuite(source, seed, **kwargs).run()
