# -*- coding: utf-8 -*-

from shuffles import serializers
from shuffles.management.base import ShuffleCommand
from shuffles.signals import check_completed
from shuffles.suite import PropertySuite


class Command(ShuffleCommand):
    help = "Run the property suite for a measure; exits with 1 if any check fails."
    options = ("measure", "n", "samples", "seed")

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.set_defaults(format="json", seed=0, n=None, samples=None)

    def run(self, config, stream, options):
        data = config.cleaned_data
        summary = self.summary(config)

        def progress(sender, name, passed, detail="", **kwargs):
            style = self.style.SUCCESS if passed else self.style.ERROR
            summary.write(style("%s %s" % ("ok  " if passed else "FAIL", name)))

        check_completed.connect(progress, dispatch_uid="verify-progress")
        try:
            suite = PropertySuite(data["measure"], data["seed"], name=options.get("measure"),
                                  max_n=data.get("n"), samples=data.get("samples"))
            report = suite.run()
        finally:
            check_completed.disconnect(dispatch_uid="verify-progress")

        if data.get("format") == "csv":
            serializers.write(stream, "csv", ("check", "passed", "detail"),
                              [(c.name, c.passed, c.detail) for c in report.checks])
        else:
            serializers.write(stream, "json", (), (), document=report.to_dict())
        if not report.passed:
            return "Failed checks: %s" % ", ".join(report.failures)
