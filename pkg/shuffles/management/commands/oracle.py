# -*- coding: utf-8 -*-

from shuffles import oracle, serializers
from shuffles.management.base import ShuffleCommand


class Command(ShuffleCommand):
    help = "Print an exact law on S_n: the ordering law, a step law or its marginal."
    stochastic = False
    options = ("measure", "sampler", "type", "n")

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument("--marginal", type=int, help="Restrict the law to the first m cards.")

    def run(self, config, stream, options):
        data = config.cleaned_data
        n = data.get("n") or 3
        if data.get("sampler") is None and data.get("type") == "one":
            law = oracle.exact_source_distribution(data["measure"], n)
        else:
            law = config.build_sampler().exact_step(n)
        if options.get("marginal"):
            law = law.marginal(options["marginal"])
        serializers.write(stream, data.get("format"), ("permutation", "probability"),
                          sorted(law.probs.items()), document=law.to_dict())
