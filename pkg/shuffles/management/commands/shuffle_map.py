# -*- coding: utf-8 -*-

from fractions import Fraction

from shuffles import serializers
from shuffles.kernels import shuffle_map_from_measure
from shuffles.oracle import require_measure
from shuffles.management.base import ShuffleCommand


class Command(ShuffleCommand):
    help = "Describe the shuffle map S of a purely atomic measure, optionally with a table of S(x)."
    stochastic = False
    options = ("measure", )

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument("--grid", type=int, help="Tabulate S at x = k/grid for k = 0..grid.")
        parser.add_argument("--power", type=int, default=1, help="Describe the h-fold iterate of S.")

    def run(self, config, stream, options):
        data = config.cleaned_data
        if options.get("power", 1) < 1:
            raise ValueError("--power must be at least 1")
        shuffle_map = shuffle_map_from_measure(require_measure(data["measure"])).iterate(options.get("power", 1))
        grid = options.get("grid")
        table = shuffle_map.table(Fraction(k, grid) for k in range(grid + 1)) if grid else None
        if data.get("format") == "json":
            document = shuffle_map.to_dict()
            if table is not None:
                document["table"] = [{"x": x, "s": s} for x, s in table]
            serializers.write(stream, "json", (), (), document=document)
        elif table is not None:
            serializers.write(stream, "csv", ("x", "s"), table)
        else:
            serializers.write(stream, "csv", ("a", "b", "slope", "intercept"),
                              [(p.a, p.b, p.slope, p.intercept) for p in shuffle_map.pieces])
