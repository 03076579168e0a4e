# -*- coding: utf-8 -*-

import numpy as np

from shuffles import serializers
from shuffles.kernels import walk
from shuffles.management.base import ShuffleCommand


class Command(ShuffleCommand):
    help = "Run independent random walks on S_n driven by a shuffle; --samples is the number of walks."
    options = ("measure", "sampler", "type", "n", "samples", "steps", "seed")

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.set_defaults(samples=1)

    def run(self, config, stream, options):
        data = config.cleaned_data
        n, steps = data.get("n") or 3, data.get("steps")
        steps = 10 if steps is None else steps
        walks = data.get("samples") or 1
        sampler = config.build_sampler()
        # One stream per walk, so adding walks leaves the earlier ones unchanged.
        streams = np.random.SeedSequence(data["seed"]).spawn(walks)
        rows = []
        for index, seed in enumerate(streams, 1):
            trajectory = walk(n, sampler, steps, np.random.default_rng(seed))
            rows.extend((index, h, state) for h, state in enumerate(trajectory))
        serializers.write(stream, data.get("format"), ("walk", "h", "state"), rows)
