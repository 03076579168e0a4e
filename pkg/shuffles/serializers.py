# -*- coding: utf-8 -*-
#
# CSV and JSON encoding of command output. Rationals are written as
# "p/q" strings and permutations in one-line notation, so output is
# byte-identical for identical runs.
#

import csv
import json
from fractions import Fraction

from django.core.serializers.json import DjangoJSONEncoder

from shuffles import permutations
from shuffles.measure import format_fraction


class ShuffleJSONEncoder(DjangoJSONEncoder):
    """
    Writes Fractions as "p/q" strings and library objects through
    their to_dict().
    """
    def default(self, o):
        if isinstance(o, Fraction):
            return format_fraction(o)
        if hasattr(o, "to_dict"):
            return o.to_dict()
        return super(ShuffleJSONEncoder, self).default(o)


def dumps(data):
    return json.dumps(data, cls=ShuffleJSONEncoder, sort_keys=True, indent=2) + "\n"


def cell(value):
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, tuple):
        return permutations.to_string(value)
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def write_csv(stream, header, rows):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell(v) for v in row])


def histogram(counts):
    """
    (permutation string, count) rows in lexicographic order.
    """
    return [(permutations.to_string(p), counts[p]) for p in sorted(counts)]


def write(stream, fmt, header, rows, document=None):
    """
    Write ``rows`` as CSV, or ``document`` (falling back to the rows
    keyed by header) as JSON.
    """
    if fmt == "json":
        if document is None:
            document = [dict(zip(header, (cell(v) for v in row))) for row in rows]
        stream.write(dumps(document))
    else:
        write_csv(stream, header, rows)
