# -*- coding: utf-8 -*-

import os

from django.core.management.base import BaseCommand, CommandError

from shuffles.forms import MeasureSpecForm
from shuffles.management.base import USAGE_ERROR
from shuffles.models import StoredMeasure


class Command(BaseCommand):
    help = "Save a measure spec in the database under a name usable as --measure."

    def add_arguments(self, parser):
        parser.add_argument("name")
        parser.add_argument("spec", help="JSON file or inline JSON.")
        parser.add_argument("--description", default="")

    def handle(self, *args, **options):
        spec = options["spec"]
        if os.path.isfile(spec):
            with open(spec) as f:
                spec = f.read()
        instance = StoredMeasure.objects.filter(name=options["name"]).first()
        form = MeasureSpecForm({"name": options["name"], "description": options["description"],
                                "spec": spec}, instance=instance)
        if not form.is_valid():
            raise CommandError(form.errors.as_text(), returncode=USAGE_ERROR)
        stored = form.save()
        self.stdout.write(self.style.SUCCESS("Stored %s" % stored.name))
