# -*- coding: utf-8 -*-

import json
import os

from django import forms
from django.utils.translation import gettext_lazy as _

from shuffles import get_measure
from shuffles.exceptions import ShuffleError
from shuffles.models import StoredMeasure

STEP_TYPES = (
    ("one", _("type one")),
    ("two", _("type two")),
    ("deterministic", _("deterministic shuffle map")),
)

MODES = (
    ("exact", _("exact oracle")),
    ("mc", _("Monte Carlo")),
)

FORMATS = (
    ("csv", "CSV"),
    ("json", "JSON"),
)


class RunConfigForm(forms.Form):
    """
    Validates the options shared by the management commands before any
    sampling happens. ``require_seed`` is set by stochastic commands.
    """
    measure = forms.CharField(required=False)
    sampler = forms.CharField(required=False)
    n = forms.IntegerField(required=False, min_value=1)
    samples = forms.IntegerField(required=False, min_value=1)
    steps = forms.IntegerField(required=False, min_value=0)
    seed = forms.IntegerField(required=False, min_value=0, max_value=2 ** 64 - 1)
    type = forms.ChoiceField(choices=STEP_TYPES, required=False)
    mode = forms.ChoiceField(choices=MODES, required=False)
    out = forms.CharField(required=False)
    format = forms.ChoiceField(choices=FORMATS, required=False)

    def __init__(self, *args, **kwargs):
        self.require_seed = kwargs.pop("require_seed", False)
        self.require_source = kwargs.pop("require_source", True)
        super(RunConfigForm, self).__init__(*args, **kwargs)

    def clean_measure(self):
        value = self.cleaned_data.get("measure")
        if not value:
            return None
        try:
            return get_measure(value)
        except ShuffleError as e:
            raise forms.ValidationError(str(e))

    def clean_sampler(self):
        """
        A sampler is given as a JSON file or as inline JSON.
        """
        from shuffles.kernels import sampler_from_dict

        value = self.cleaned_data.get("sampler")
        if not value:
            return None
        try:
            if os.path.isfile(value):
                with open(value) as f:
                    data = json.load(f)
            else:
                data = json.loads(value)
        except ValueError as e:
            raise forms.ValidationError(_("Sampler spec is not valid JSON: %s") % e)
        if not isinstance(data, dict):
            raise forms.ValidationError(_("Sampler spec must be a JSON object"))
        try:
            return sampler_from_dict(data, resolve=get_measure)
        except ShuffleError as e:
            raise forms.ValidationError(str(e))

    def clean_out(self):
        value = self.cleaned_data.get("out")
        if value:
            directory = os.path.dirname(os.path.abspath(value))
            if not os.path.isdir(directory):
                raise forms.ValidationError(_("Directory %s does not exist") % directory)
        return value or None

    def clean(self):
        cleaned = super(RunConfigForm, self).clean()
        if self.require_seed and cleaned.get("seed") is None and "seed" not in self.errors:
            self.add_error("seed", _("A seed is required for stochastic commands."))
        if self.require_source and not cleaned.get("measure") and not cleaned.get("sampler") \
                and "measure" not in self.errors and "sampler" not in self.errors:
            raise forms.ValidationError(_("Give a measure or a sampler."))
        return cleaned

    def build_sampler(self):
        """
        The coupling to step with: the explicit sampler if one was given,
        otherwise the shuffle of the chosen type built from the measure.
        """
        from shuffles.kernels import Deterministic, NuMu, NuMuStar, shuffle_map_from_measure
        from shuffles.oracle import require_measure

        data = self.cleaned_data
        if data.get("sampler") is not None:
            return data["sampler"]
        measure = require_measure(data["measure"])
        kind = data.get("type") or "one"
        if kind == "two":
            return NuMuStar(measure)
        if kind == "deterministic":
            return Deterministic(shuffle_map_from_measure(measure))
        return NuMu(measure)


class MeasureSpecForm(forms.ModelForm):
    """
    Create or edit a stored measure from its JSON spec.
    """

    class Meta:
        model = StoredMeasure
        fields = ("name", "description", "spec")

    def clean_spec(self):
        value = self.cleaned_data["spec"]
        try:
            data = json.loads(value)
        except ValueError as e:
            raise forms.ValidationError(_("Not valid JSON: %s") % e)
        if not isinstance(data, dict):
            raise forms.ValidationError(_("The spec must be a JSON object."))
        return json.dumps(data, sort_keys=True)
