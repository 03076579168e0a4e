# -*- coding: utf-8 -*-

from fractions import Fraction

from shuffles import serializers, stats
from shuffles.exceptions import CapExceeded, ExactUnavailable
from shuffles.kernels import kernel_matrix, sample_steps
from shuffles.management.base import ShuffleCommand


class Command(ShuffleCommand):
    help = "Tabulate the step law kappa_n(id, .) of a shuffle, sampled or exact."
    options = ("measure", "sampler", "type", "n", "samples", "mode", "seed")

    def requires_seed(self, options):
        return options.get("mode") == "mc"

    def run(self, config, stream, options):
        data = config.cleaned_data
        n = data.get("n") or 3
        sampler = config.build_sampler()
        if data.get("mode") != "mc":
            law = kernel_matrix(n, sampler, "exact")
            serializers.write(stream, data.get("format"), ("permutation", "probability"),
                              sorted(law.probs.items()), document=law.to_dict())
            return

        samples = data.get("samples") or 1000
        counts = sample_steps(n, sampler, samples, self.get_rng(config))
        try:
            exact = kernel_matrix(n, sampler, "exact")
        except (ExactUnavailable, CapExceeded):
            exact = None
        keys = sorted(set(counts) | set(exact.probs if exact else ()))
        rows = [(p, counts.get(p, 0), float(Fraction(counts.get(p, 0), samples)),
                 exact[p] if exact is not None else None) for p in keys]
        serializers.write(stream, data.get("format"), ("permutation", "count", "frequency", "exact"), rows)
        if exact is not None:
            self.summary(config).write("empirical TV %.6f" % stats.empirical_tv(counts, exact))
