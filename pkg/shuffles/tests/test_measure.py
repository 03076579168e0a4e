# -*- coding: utf-8 -*-

from fractions import Fraction
from unittest import mock

import numpy as np
from django.test import SimpleTestCase

from shuffles import measure, stats
from shuffles.exceptions import (DegenerateGap, MeasureError, NotPurelyAtomic, OutOfRange,
                                 OverlappingGaps, UnknownMeasure)
from shuffles.measure import AtomSide, MeasureSpec, QuasiUniformMeasure


class ValidateTest(SimpleTestCase):

    def test_gsr_is_valid(self):
        mu = measure.validate(MeasureSpec(((0, "1/2", "right"), ("1/2", 1, "right"))))
        self.assertEqual(mu.atoms(), [(Fraction(1, 2), Fraction(1, 2)), (Fraction(1), Fraction(1, 2))])
        self.assertTrue(mu.is_purely_atomic)

    def test_empty_spec_is_lebesgue(self):
        mu = measure.validate(MeasureSpec(()))
        self.assertEqual(mu.diffuse_mass, 1)
        self.assertEqual(mu, measure.lebesgue())

    def test_total_mass_is_checked(self):
        with mock.patch.object(QuasiUniformMeasure, "atom_mass", new_callable=mock.PropertyMock,
                               return_value=Fraction(3, 2)):
            with self.assertRaisesMessage(MeasureError, "total mass"):
                measure.validate(MeasureSpec(((0, "1/2", "right"), )))

    def test_gaps_are_sorted(self):
        mu = measure.validate(MeasureSpec((("1/2", 1, "left"), (0, "1/4", "right"))))
        self.assertEqual([g.lo for g in mu.gaps], [0, Fraction(1, 2)])

    def test_overlapping_gaps(self):
        with self.assertRaises(OverlappingGaps):
            measure.validate(MeasureSpec(((0, "1/2", "right"), ("1/4", "3/4", "left"))))

    def test_shared_endpoint_is_allowed(self):
        mu = measure.validate(MeasureSpec(((0, "1/2", "right"), ("1/2", 1, "left"))))
        self.assertEqual(mu.cdf("1/2"), 1)
        self.assertEqual(mu.cdf_left("1/2"), 0)

    def test_out_of_range(self):
        with self.assertRaises(OutOfRange):
            measure.validate(MeasureSpec(((0, "3/2", "right"), )))

    def test_degenerate(self):
        with self.assertRaises(DegenerateGap):
            measure.validate(MeasureSpec((("1/2", "1/2", "right"), )))
        with self.assertRaises(DegenerateGap):
            measure.validate(MeasureSpec((("3/4", "1/2", "right"), )))

    def test_from_dict(self):
        mu = measure.validate({"gaps": [{"lo": "1/4", "hi": "1/2", "atom_side": "LEFT"}]})
        self.assertIs(mu.gaps[0].atom_side, AtomSide.LEFT)
        self.assertEqual(mu.gaps[0].atom, Fraction(1, 4))


class CdfTest(SimpleTestCase):

    def test_gsr_half(self):
        mu = measure.gsr()
        self.assertEqual(measure.cdf(mu, Fraction(1, 2)), Fraction(1, 2))
        self.assertEqual(measure.cdf_left(mu, Fraction(1, 2)), 0)

    def test_lebesgue_float_is_read_exactly(self):
        mu = measure.lebesgue()
        self.assertEqual(mu.cdf(0.3), Fraction(3, 10))
        self.assertEqual(mu.cdf_left(0.3), Fraction(3, 10))

    def test_unit_atom(self):
        mu = measure.named_measure("identity")
        self.assertEqual(mu.cdf(1), 1)
        self.assertEqual(mu.cdf_left(1), 0)

    def test_mixed(self):
        mu = measure.mixed_fixture()
        self.assertEqual(mu.cdf("3/8"), Fraction(1, 4))
        self.assertEqual(mu.cdf("1/2"), Fraction(1, 2))
        self.assertEqual(mu.cdf("5/8"), Fraction(5, 8))
        self.assertEqual(mu.cdf("3/4"), 1)
        self.assertEqual(mu.cdf_left("3/4"), Fraction(3, 4))

    def test_out_of_range(self):
        with self.assertRaises(OutOfRange):
            measure.lebesgue().cdf(Fraction(5, 4))
        with self.assertRaises(OutOfRange):
            measure.lebesgue().cdf(-0.1)


class ConjugateTest(SimpleTestCase):

    def test_atoms_move_to_the_other_end(self):
        conjugate = measure.conjugate(measure.gsr())
        self.assertEqual(conjugate.atoms(), [(0, Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2))])

    def test_involution(self):
        for name in ("lebesgue", "gsr", "a-shuffle:3", "mixed", "reversal"):
            mu = measure.named_measure(name)
            self.assertEqual(mu.conjugate().conjugate(), mu)

    def test_conjugate_inverts_the_distribution_function(self):
        mu = measure.mixed_fixture()
        conjugate = mu.conjugate()
        for k in range(41):
            y = Fraction(k, 40)
            self.assertEqual(conjugate.cdf(y), mu.quantile(y))
            self.assertEqual(conjugate.cdf_left(y), mu.quantile_left(y))

    def test_quantiles_of_gsr(self):
        mu = measure.gsr()
        self.assertEqual(mu.quantile("1/4"), Fraction(1, 2))
        self.assertEqual(mu.quantile("1/2"), 1)
        self.assertEqual(mu.quantile_left("1/2"), Fraction(1, 2))

    def test_names(self):
        self.assertEqual(measure.gsr().conjugate().name, "gsr-conjugate")
        self.assertEqual(measure.named_measure("gsr-conjugate"), measure.gsr().conjugate())


class ConjugatePairTest(SimpleTestCase):

    def test_gap_draw_occupies_both_ends(self):
        mu = measure.gsr()
        rng = np.random.default_rng(3)
        for _ in range(100):
            pair = measure.sample_conjugate_pair(mu, rng)
            self.assertFalse(pair.is_diffuse)
            self.assertEqual({pair.x(), pair.y()}, {pair.gap.lo, pair.gap.hi})
            self.assertEqual(pair.x(), pair.gap.hi)

    def test_diffuse_draw(self):
        mu = measure.mixed_fixture()
        pair = mu.classify(0.6)
        self.assertTrue(pair.is_diffuse)
        self.assertEqual(pair.x(), pair.y())
        self.assertEqual(mu.classify(0.9).x(), Fraction(3, 4))
        self.assertEqual(mu.classify(0.9).y(), 1)

    def test_gap_endpoints_are_diffuse(self):
        self.assertTrue(measure.mixed_fixture().classify(0.25).is_diffuse)

    def test_x_has_law_mu(self):
        mu = measure.mixed_fixture()
        rng = np.random.default_rng(11)
        pairs = mu.sample_conjugate_pairs(rng, 20000)
        at_half = sum(1 for p in pairs if p.x() == Fraction(1, 2)) / len(pairs)
        at_three_quarters = sum(1 for p in pairs if p.y() == 1) / len(pairs)
        self.assertAlmostEqual(at_half, 0.25, delta=0.02)
        self.assertAlmostEqual(at_three_quarters, 0.25, delta=0.02)

    def test_coordinates_follow_mu_and_its_conjugate(self):
        rng = np.random.default_rng(23)
        for name in ("mixed", "gsr"):
            mu = measure.named_measure(name)
            dual = mu.conjugate()
            pairs = mu.sample_conjugate_pairs(rng, 20000)
            xs = [p.x() for p in pairs]
            ys = [p.y() for p in pairs]
            report = stats.ks_against(xs, mu.cdf, mu.cdf_left, points=[a for a, m in mu.atoms()],
                                      significance=0.01)
            self.assertTrue(report.passed, (name, "x", report))
            report = stats.ks_against(ys, dual.cdf, dual.cdf_left, points=[a for a, m in dual.atoms()],
                                      significance=0.01)
            self.assertTrue(report.passed, (name, "y", report))

    def test_x_does_not_follow_the_conjugate(self):
        mu = measure.mixed_fixture()
        dual = mu.conjugate()
        xs = [p.x() for p in mu.sample_conjugate_pairs(np.random.default_rng(29), 20000)]
        report = stats.ks_against(xs, dual.cdf, dual.cdf_left, points=[a for a, m in dual.atoms()],
                                  significance=0.01)
        self.assertFalse(report.passed, report)


class QuasiUniformTest(SimpleTestCase):

    def test_accepts_built_ins(self):
        for name in ("lebesgue", "gsr", "a-shuffle:5", "mixed", "reversal", "two-class:1/3",
                     "gap(1/4, 1/2, left)"):
            self.assertTrue(measure.is_quasi_uniform(measure.named_measure(name)), name)

    def test_accepts_shared_atom(self):
        mu = measure.validate(MeasureSpec(((0, "1/2", "right"), ("1/2", 1, "left"))))
        self.assertTrue(measure.is_quasi_uniform(mu))

    def test_rejects_interior_atom(self):
        candidate = measure.interior_atom()
        # The pointwise sandwich alone does not see the problem.
        self.assertLessEqual(candidate.cdf_left("5/8"), Fraction(5, 8))
        self.assertGreaterEqual(candidate.cdf("5/8"), Fraction(5, 8))
        self.assertFalse(measure.is_quasi_uniform(candidate))

    def test_rejects_misplaced_mass(self):
        candidate = measure.MeasureCandidate(holes=[("1/2", "3/4")], atoms=[("1/4", "1/4")])
        self.assertEqual(candidate.total_mass(), 1)
        self.assertFalse(measure.is_quasi_uniform(candidate))

    def test_rejects_wrong_total(self):
        candidate = measure.MeasureCandidate(holes=[("1/2", "3/4")], atoms=[("1/2", "1/8")])
        self.assertFalse(measure.is_quasi_uniform(candidate))

    def test_accepts_equivalent_candidate(self):
        candidate = measure.MeasureCandidate(holes=[("1/2", "3/4")], atoms=[("3/4", "1/4")])
        self.assertTrue(measure.is_quasi_uniform(candidate))


class NamedMeasureTest(SimpleTestCase):

    def test_a_shuffle(self):
        mu = measure.named_measure("a-shuffle:4")
        self.assertEqual(len(mu.gaps), 4)
        self.assertTrue(all(g.atom_side is AtomSide.RIGHT for g in mu.gaps))

    def test_gsr_is_a_shuffle_two(self):
        self.assertEqual(measure.gsr(), measure.a_shuffle(2))

    def test_gap_literal(self):
        mu = measure.named_measure("gap(0,1,left)")
        self.assertEqual(mu.atoms(), [(0, 1)])

    def test_two_class(self):
        mu = measure.named_measure("two-class:1/3")
        self.assertEqual(mu.atoms(), [(Fraction(1, 3), Fraction(1, 3)), (1, Fraction(2, 3))])
        with self.assertRaises(UnknownMeasure):
            measure.two_class(1)

    def test_unknown(self):
        with self.assertRaises(UnknownMeasure):
            measure.named_measure("no-such-measure")
        with self.assertRaises(UnknownMeasure):
            measure.named_measure("a-shuffle:x")

    def test_require_purely_atomic(self):
        with self.assertRaises(NotPurelyAtomic):
            measure.require_purely_atomic(measure.lebesgue())
        measure.require_purely_atomic(measure.gsr())

    def test_round_trip_through_dict(self):
        mu = measure.mixed_fixture()
        self.assertEqual(measure.from_dict(mu.to_dict()), mu)
