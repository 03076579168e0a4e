# -*- coding: utf-8 -*-

from fractions import Fraction
from unittest import mock

import numpy as np
from django.test import SimpleTestCase, override_settings

from shuffles import kernels, measure, oracle, stats
from shuffles.exceptions import DimensionMismatch, ExactUnavailable, InvalidCoupling, MeasureError, NotPurelyAtomic
from shuffles.kernels import (CouplingDraw, Deterministic, GridCopula, MixtureSampler, NuMu, NuMuStar,
                              ShuffleMap)
from shuffles.measure import MeasureSpec

ATOMIC = ("gsr", "a-shuffle:3", "reversal", "gsr-conjugate", "two-class:1/3")


class ShuffleMapTest(SimpleTestCase):

    def test_gsr_is_doubling(self):
        shuffle_map = kernels.shuffle_map_from_measure(measure.gsr())
        self.assertEqual(shuffle_map, ShuffleMap.multiply(2))
        for k in range(1000):
            x = Fraction(k, 1000)
            self.assertEqual(shuffle_map.evaluate(x), (2 * x) % 1)

    def test_a_shuffle(self):
        self.assertEqual(kernels.shuffle_map_from_measure(measure.a_shuffle(4)), ShuffleMap.multiply(4))

    def test_left_atoms_decrease(self):
        shuffle_map = kernels.shuffle_map_from_measure(measure.named_measure("reversal"))
        self.assertEqual(shuffle_map.evaluate(Fraction(1, 4)), Fraction(3, 4))
        self.assertTrue(shuffle_map.is_measure_preserving())

    def test_not_purely_atomic(self):
        with self.assertRaises(NotPurelyAtomic):
            kernels.shuffle_map_from_measure(measure.lebesgue())
        with self.assertRaises(NotPurelyAtomic):
            kernels.shuffle_map_from_measure(measure.mixed_fixture())

    def test_right_continuous(self):
        doubling = ShuffleMap.multiply(2)
        self.assertEqual(doubling.evaluate(Fraction(1, 2)), 0)
        self.assertEqual(doubling.evaluate(1), 1)
        self.assertEqual(doubling.evaluate(0.25), Fraction(1, 2))

    def test_measure_preserving(self):
        self.assertTrue(ShuffleMap.multiply(3).is_measure_preserving())
        halving = ShuffleMap.from_pieces([(0, 1, "1/2", 0)])
        self.assertFalse(halving.is_measure_preserving())
        with self.assertRaises(InvalidCoupling):
            Deterministic(halving)

    def test_invalid_pieces(self):
        with self.assertRaises(InvalidCoupling):
            ShuffleMap.from_pieces([(0, "1/2", 2, 0)])
        with self.assertRaises(InvalidCoupling):
            ShuffleMap.from_pieces([(0, "1/2", 2, 0), ("3/4", 1, 4, -3)])
        with self.assertRaises(InvalidCoupling):
            ShuffleMap.from_pieces([(0, 1, 2, 0)])

    def test_compose(self):
        self.assertEqual(ShuffleMap.multiply(2).compose(ShuffleMap.multiply(3)), ShuffleMap.multiply(6))
        self.assertEqual(ShuffleMap.multiply(2).iterate(2), ShuffleMap.multiply(4))

    def test_from_dict_pieces(self):
        shuffle_map = ShuffleMap.from_pieces(ShuffleMap.multiply(2).to_dict()["pieces"])
        self.assertEqual(shuffle_map, ShuffleMap.multiply(2))


class CouplingTest(SimpleTestCase):

    def samplers(self):
        gsr = measure.gsr()
        return [
            NuMu(gsr),
            NuMuStar(measure.mixed_fixture()),
            Deterministic(ShuffleMap.multiply(3)),
            GridCopula([["1/3", "1/6"], ["1/6", "1/3"]]),
            MixtureSampler([("1/2", NuMu(measure.lebesgue())), ("1/2", NuMuStar(gsr))]),
        ]

    def test_marginals_are_uniform(self):
        rng = np.random.default_rng(17)
        for sampler in self.samplers():
            draws = sampler.draws(rng, 5000)
            for coordinate in ("u", "v"):
                values = [float(d.coordinate(coordinate)) for d in draws]
                report = stats.ks_uniform(values, significance=0.001)
                self.assertTrue(report.passed, (sampler, coordinate, report))

    def test_draw_coupling_lebesgue_is_independent(self):
        rng = np.random.default_rng(19)
        draws = [kernels.draw_coupling(NuMu(measure.lebesgue()), rng) for _ in range(5000)]
        self.assertTrue(all(meta.is_diffuse for u, v, meta in draws))
        us = np.array([u for u, v, meta in draws])
        vs = np.array([float(v) for u, v, meta in draws])
        self.assertLess(abs(np.corrcoef(us, vs)[0, 1]), 0.06)

    def test_draw_coupling_single_right_gap_is_the_diagonal(self):
        sampler = NuMu(measure.named_measure("gap(0,1,right)"))
        rng = np.random.default_rng(3)
        for _ in range(100):
            u, v, meta = kernels.draw_coupling(sampler, rng)
            self.assertEqual(v, Fraction(u))

    def test_draw_coupling_gsr_map(self):
        sampler = Deterministic(kernels.shuffle_map_from_measure(measure.gsr()))
        for u, expected in ((0.3, 0.6), (0.75, 0.5)):
            rng = mock.Mock(random=mock.Mock(return_value=u))
            drawn, v, meta = kernels.draw_coupling(sampler, rng)
            self.assertEqual(drawn, u)
            self.assertEqual(float(v), expected)
            self.assertIsNone(meta)

    def test_grid_validation(self):
        GridCopula([[0.25, 0.25], [0.25, 0.25]])
        with self.assertRaises(InvalidCoupling):
            GridCopula([[0.5, 1e-11], [0.0, 0.5]])
        with self.assertRaises(InvalidCoupling):
            GridCopula([["1/3", "1/5"], ["1/6", "1/3"]])
        with self.assertRaises(InvalidCoupling):
            GridCopula([["1/2", "1/2", "-1/2"], ["0", "0", "1/3"], ["-1/6", "1/6", "1/3"]])
        with self.assertRaises(InvalidCoupling):
            GridCopula([["1/2", "1/2"]])

    def test_grid_has_no_exact_law(self):
        grid = GridCopula([["1/2", "0"], ["0", "1/2"]])
        with self.assertRaises(ExactUnavailable):
            grid.exact_step(2)
        with self.assertRaises(ExactUnavailable):
            MixtureSampler([("1/2", grid), ("1/2", NuMu(measure.gsr()))]).exact_step(2)

    def test_needs_a_measure(self):
        with self.assertRaises(MeasureError):
            NuMu(measure.interior_atom())

    def test_from_dict(self):
        resolve = measure.named_measure
        self.assertIsInstance(kernels.sampler_from_dict({"type": "nu_mu_star", "measure": "gsr"}, resolve),
                              NuMuStar)
        deterministic = kernels.sampler_from_dict({"type": "deterministic", "measure": "a-shuffle:3"}, resolve)
        self.assertEqual(deterministic.shuffle_map, ShuffleMap.multiply(3))
        mixture = kernels.sampler_from_dict({"type": "mixture", "components": [
            {"weight": "1/2", "sampler": {"type": "grid", "grid": [["1/2", "0"], ["0", "1/2"]]}},
            {"weight": "1/2", "sampler": {"type": "nu_mu", "measure": "lebesgue"}},
        ]}, resolve)
        self.assertEqual(len(mixture.components), 2)
        with self.assertRaises(InvalidCoupling):
            kernels.sampler_from_dict({"type": "spin"}, resolve)
        with self.assertRaises(InvalidCoupling):
            kernels.sampler_from_dict({"type": "grid"}, resolve)


class StepTest(SimpleTestCase):

    def test_identity_and_reversal(self):
        rng = np.random.default_rng(3)
        identity = NuMu(measure.named_measure("identity"))
        reversal = NuMu(measure.named_measure("reversal"))
        self.assertEqual(kernels.step_permutation(5, identity, rng).sigma, (1, 2, 3, 4, 5))
        self.assertEqual(kernels.step_permutation(5, reversal, rng).sigma, (5, 4, 3, 2, 1))

    def test_records(self):
        outcome = kernels.step_permutation(4, NuMu(measure.mixed_fixture()), np.random.default_rng(2))
        self.assertEqual([r.label for r in outcome.records], [1, 2, 3, 4])
        self.assertEqual(sorted(outcome.initial), [1, 2, 3, 4])
        for record, start, end in zip(outcome.records, outcome.initial, outcome.final):
            self.assertEqual(outcome.sigma[start - 1], end)

    def test_gsr_two_cards(self):
        draws = 20000
        counts = kernels.sample_steps(2, NuMu(measure.gsr()), draws, np.random.default_rng(4))
        self.assertAlmostEqual(counts[(2, 1)] / draws, 0.25, delta=stats.binomial_radius(0.25, draws, 4))

    def test_ties_across_gaps_put_the_right_gap_above(self):
        mu = measure.validate(MeasureSpec(((0, "1/2", "right"), ("1/2", 1, "left"))))
        left, right = mu.classify(0.1), mu.classify(0.9)
        half = Fraction(1, 2)
        outcome = kernels.step_from_draws([CouplingDraw(0.3, half, left, "v"),
                                           CouplingDraw(0.6, half, right, "v")])
        self.assertEqual(outcome.sigma, (1, 2))
        outcome = kernels.step_from_draws([CouplingDraw(0.6, half, left, "v"),
                                           CouplingDraw(0.3, half, right, "v")])
        self.assertEqual(outcome.sigma, (2, 1))

    def test_ties_inside_a_gap_follow_the_atom(self):
        mu = measure.validate(MeasureSpec(((0, "1/2", "right"), ("1/2", 1, "left"))))
        half = Fraction(1, 2)
        low = mu.classify(0.1)
        outcome = kernels.step_from_draws([CouplingDraw(0.2, half, low, "v"), CouplingDraw(0.7, half, low, "v")])
        self.assertEqual(outcome.sigma, (1, 2))
        high = mu.classify(0.9)
        outcome = kernels.step_from_draws([CouplingDraw(0.2, half, high, "v"), CouplingDraw(0.7, half, high, "v")])
        self.assertEqual(outcome.sigma, (2, 1))

    @override_settings(SHUFFLES_DEBUG_ASSERTIONS=True)
    def test_diffuse_tie_is_an_assertion_failure(self):
        point = measure.ConjugateSample.diffuse(0.4)
        with self.assertRaises(AssertionError):
            kernels.step_from_draws([CouplingDraw(0.1, 0.4, point, "v"), CouplingDraw(0.2, 0.4, point, "v")])

    def test_walk(self):
        reversal = NuMu(measure.named_measure("reversal"))
        trajectory = kernels.walk(3, reversal, 3, np.random.default_rng(0))
        self.assertEqual(trajectory, [(1, 2, 3), (3, 2, 1), (1, 2, 3), (3, 2, 1)])
        start = kernels.walk(3, NuMu(measure.named_measure("identity")), 2, np.random.default_rng(0),
                             start=(2, 3, 1))
        self.assertEqual(start, [(2, 3, 1)] * 3)
        with self.assertRaises(DimensionMismatch):
            kernels.walk(3, reversal, 1, np.random.default_rng(0), start=(1, 2))


class KernelMatrixTest(SimpleTestCase):

    def test_exact_gsr(self):
        law = kernels.kernel_matrix(2, NuMu(measure.gsr()))
        self.assertEqual(law.probs, {(1, 2): Fraction(3, 4), (2, 1): Fraction(1, 4)})

    def test_monte_carlo(self):
        law = kernels.kernel_matrix(3, NuMu(measure.mixed_fixture()), "mc", samples=20000,
                                    rng=np.random.default_rng(6))
        exact = kernels.kernel_matrix(3, NuMu(measure.mixed_fixture()))
        self.assertLess(oracle.tv_distance(law, exact), Fraction(3, 100))
        with self.assertRaises(ValueError):
            kernels.kernel_matrix(3, NuMu(measure.gsr()), "mc")
        with self.assertRaises(ValueError):
            kernels.kernel_matrix(3, NuMu(measure.gsr()), "guess")

    def test_mixture_exact(self):
        mixture = MixtureSampler([("1/2", NuMu(measure.named_measure("identity"))),
                                  ("1/2", NuMu(measure.named_measure("reversal")))])
        self.assertEqual(mixture.exact_step(2).probs, {(1, 2): Fraction(1, 2), (2, 1): Fraction(1, 2)})

    def test_mixture_picks_one_component_per_step(self):
        mixture = MixtureSampler([("1/2", NuMu(measure.named_measure("identity"))),
                                  ("1/2", NuMu(measure.named_measure("reversal")))])
        sampled = kernels.kernel_matrix(3, mixture, "mc", samples=20000, rng=np.random.default_rng(41))
        exact = kernels.kernel_matrix(3, mixture)
        self.assertEqual(set(sampled.probs), {(1, 2, 3), (3, 2, 1)})
        self.assertLess(oracle.tv_distance(sampled, exact), Fraction(3, 100))

    def test_mixture_of_measures_matches_its_exact_step(self):
        mixture = MixtureSampler([("1/3", NuMu(measure.gsr())), ("2/3", NuMuStar(measure.mixed_fixture()))])
        counts = kernels.sample_steps(3, mixture, 20000, np.random.default_rng(43))
        report = stats.chi_square_goodness(counts, mixture.exact_step(3).probs, significance=0.001)
        self.assertTrue(report.passed, report)

    def test_rows_and_columns(self):
        for name in ATOMIC:
            for n in (2, 3, 4):
                for sampler in (NuMu, NuMuStar):
                    step = kernels.kernel_matrix(n, sampler(measure.named_measure(name)))
                    self.assertTrue(oracle.is_doubly_stochastic(oracle.transition_matrix(step)), (name, n))


class RouteTest(SimpleTestCase):

    def test_coupling_route_matches_the_ordering_law(self):
        shared = measure.validate(MeasureSpec(((0, "1/2", "right"), ("1/2", 1, "left"))))
        for mu in [measure.named_measure(name) for name in ATOMIC] + [shared]:
            for n in (2, 3, 4, 5):
                self.assertEqual(kernels.exact_coupling_step_distribution(mu, n),
                                 oracle.exact_ordering_distribution(mu, n), (mu, n))

    def test_deterministic_map_is_type_two(self):
        for name in ("gsr", "a-shuffle:3", "reversal", "gsr-conjugate"):
            mu = measure.named_measure(name)
            deterministic = Deterministic(kernels.shuffle_map_from_measure(mu))
            for n in (2, 3, 4):
                self.assertEqual(deterministic.exact_step(n), oracle.exact_step_distribution(mu, n, "two"),
                                 (name, n))

    def test_sampled_steps_follow_the_ordering_law(self):
        mu = measure.mixed_fixture()
        counts = kernels.sample_steps(3, NuMu(mu), 20000, np.random.default_rng(31))
        report = stats.chi_square_goodness(counts, oracle.exact_ordering_distribution(mu, 3).probs,
                                           significance=0.001)
        self.assertTrue(report.passed, report)

    def test_sampled_type_two_is_the_inverse(self):
        mu = measure.mixed_fixture()
        counts = kernels.sample_steps(3, NuMuStar(mu), 20000, np.random.default_rng(32))
        report = stats.chi_square_goodness(counts, oracle.exact_step_distribution(mu, 3, "two").probs,
                                           significance=0.001)
        self.assertTrue(report.passed, report)

    def test_sampled_deterministic_steps(self):
        sampler = Deterministic(ShuffleMap.multiply(3))
        counts = kernels.sample_steps(3, sampler, 20000, np.random.default_rng(33))
        report = stats.chi_square_goodness(counts, sampler.exact_step(3).probs, significance=0.001)
        self.assertTrue(report.passed, report)
