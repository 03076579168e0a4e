# -*- coding: utf-8 -*-

import io
import logging

import numpy as np
from django.core.management.base import BaseCommand, CommandError

from shuffles.exceptions import ShuffleError
from shuffles.forms import RunConfigForm

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
PROPERTY_FAILURE = 1


class ShuffleCommand(BaseCommand):
    """
    Base class for the shuffles commands. Options are validated with
    RunConfigForm before anything is sampled, library errors end the
    command with exit code 2 and output is buffered so nothing is
    written when a command fails.
    """
    stochastic = True
    needs_source = True
    options = ("measure", "n", "samples", "seed", "out", "format")

    def add_arguments(self, parser):
        if "measure" in self.options:
            parser.add_argument("--measure", help="Built-in name, gap(lo,hi,side), JSON file or stored measure.")
        if "sampler" in self.options:
            parser.add_argument("--sampler", help="Sampler spec, as a JSON file or inline JSON.")
        if "type" in self.options:
            parser.add_argument("--type", default="one", choices=("one", "two", "deterministic"))
        if "n" in self.options:
            parser.add_argument("--n", type=int, default=3, help="Number of cards.")
        if "samples" in self.options:
            parser.add_argument("--samples", type=int, default=1000)
        if "steps" in self.options:
            parser.add_argument("--steps", type=int, default=10)
        if "mode" in self.options:
            parser.add_argument("--mode", default="exact", choices=("exact", "mc"))
        if "seed" in self.options:
            parser.add_argument("--seed", type=int, help="Seed of the random stream.")
        parser.add_argument("--out", help="Output file (default: standard output).")
        parser.add_argument("--format", default="csv", choices=("csv", "json"))

    def requires_seed(self, options):
        return self.stochastic

    def get_config(self, options):
        data = {k: options.get(k) for k in RunConfigForm.base_fields if options.get(k) is not None}
        form = RunConfigForm(data, require_seed=self.requires_seed(options),
                             require_source=self.needs_source)
        if not form.is_valid():
            errors = "; ".join("%s: %s" % (field, " ".join(messages))
                               for field, messages in form.errors.items())
            raise CommandError(errors, returncode=USAGE_ERROR)
        return form

    def get_rng(self, config):
        return np.random.default_rng(config.cleaned_data["seed"])

    def handle(self, *args, **options):
        config = self.get_config(options)
        buffer = io.StringIO()
        self.sidecars = {}
        try:
            status = self.run(config, buffer, options)
        except ShuffleError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)
        except ValueError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)
        path = config.cleaned_data.get("out")
        self.write_output(path, buffer.getvalue())
        if path:
            for suffix, content in sorted(self.sidecars.items()):
                self.write_output(path + suffix, content)
        if status:
            raise CommandError(status, returncode=PROPERTY_FAILURE)

    def write_output(self, path, content):
        if path:
            with open(path, "w", newline="") as f:
                f.write(content)
            logger.info("Wrote %s", path)
        else:
            self.stdout.write(content, ending="")

    def summary(self, config):
        """
        Human readable summary lines go to stdout when the data goes to a
        file and to stderr otherwise.
        """
        return self.stdout if config.cleaned_data.get("out") else self.stderr

    def run(self, config, stream, options):
        """
        Write the command's data to ``stream``. Return a failure message
        to exit with code 1. Extra files written next to ``--out`` go in
        ``self.sidecars``, keyed by file name suffix.
        """
        raise NotImplementedError
