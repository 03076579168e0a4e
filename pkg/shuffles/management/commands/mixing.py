# -*- coding: utf-8 -*-

from collections import Counter

import numpy as np

from shuffles import get_exact_cap, oracle, permutations, serializers, stats
from shuffles.exceptions import CapExceeded, ExactUnavailable
from shuffles.kernels import step_permutation
from shuffles.management.base import ShuffleCommand


class Command(ShuffleCommand):
    help = "Distance to uniform after h = 0..steps shuffles, exact and/or sampled."
    options = ("measure", "sampler", "type", "n", "samples", "steps", "mode", "seed")

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument("--epsilon", type=float, help="Report the first h with distance at most epsilon.")

    def requires_seed(self, options):
        return options.get("mode") == "mc"

    def run(self, config, stream, options):
        data = config.cleaned_data
        n, steps = data.get("n") or 3, data.get("steps")
        steps = 10 if steps is None else steps
        sampler = config.build_sampler()
        exact = empirical = None
        if data.get("mode") == "mc":
            if n <= get_exact_cap():
                try:
                    exact = oracle.step_mixing_curve(sampler.exact_step(n), steps)
                except (ExactUnavailable, CapExceeded):
                    pass
            empirical = self.sampled_curve(n, sampler, steps, data.get("samples") or 1000,
                                           self.get_rng(config))
        else:
            if n > get_exact_cap():
                raise CapExceeded("Exact mixing curves are capped at n = %d" % get_exact_cap())
            exact = oracle.step_mixing_curve(sampler.exact_step(n), steps)

        rows = [(h, exact[h] if exact else None, empirical[h] if empirical else None)
                for h in range(steps + 1)]
        serializers.write(stream, data.get("format"), ("h", "tv_exact", "tv_empirical"), rows)
        if options.get("epsilon") is not None:
            h = oracle.mixing_time(exact or empirical, options["epsilon"])
            self.summary(config).write("mixing time at %s: %s" % (options["epsilon"], "none" if h is None else h))

    def sampled_curve(self, n, sampler, steps, walks, rng):
        """
        Empirical distance to uniform of ``walks`` independent walks
        started at the identity.
        """
        states = [permutations.identity(n)] * walks
        curve = [stats.empirical_tv_uniform(Counter(states), n)]
        for h in range(steps):
            states = [permutations.compose(step_permutation(n, sampler, rng).sigma, rho) for rho in states]
            curve.append(stats.empirical_tv_uniform(Counter(states), n))
        return curve
