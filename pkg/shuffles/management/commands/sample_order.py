# -*- coding: utf-8 -*-

import io
from collections import Counter

from shuffles import permutations, serializers
from shuffles.management.base import ShuffleCommand
from shuffles.ordering import LabelSet, sample_ordering

HISTOGRAM_SUFFIX = ".histogram.csv"


class Command(ShuffleCommand):
    help = ("Sample orderings of the labels 1..n (or --labels) from a measure or a mixture. "
            "With --out in CSV mode the histogram is written next to the output file.")

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument("--labels", help="Comma separated increasing labels, instead of 1..n.")

    def run(self, config, stream, options):
        data = config.cleaned_data
        if options.get("labels"):
            labels = LabelSet.of(int(k) for k in options["labels"].split(","))
        else:
            labels = LabelSet.first(data.get("n") or 3)
        samples = data.get("samples") or 1000
        rng = self.get_rng(config)
        rows = [sample_ordering(data["measure"], labels, rng).permutation() for _ in range(samples)]
        histogram = serializers.histogram(Counter(rows))
        serializers.write(stream, data.get("format"), ("sample", "permutation"),
                          [(i, p) for i, p in enumerate(rows, 1)],
                          document={"labels": list(labels.labels),
                                    "rows": [permutations.to_string(p) for p in rows],
                                    "histogram": dict(histogram)})
        if data.get("format") != "json":
            table = io.StringIO()
            serializers.write_csv(table, ("permutation", "count"), histogram)
            self.sidecars[HISTOGRAM_SUFFIX] = table.getvalue()
        summary = self.summary(config)
        for key, count in histogram:
            summary.write("%s %d" % (key, count))
