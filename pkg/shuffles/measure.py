# -*- coding: utf-8 -*-
#
# Quasi-uniform measures on [0, 1] and their conjugate pairs.
#
# A quasi-uniform measure is Lebesgue measure on a closed set F plus,
# for every open component (gap) of the complement of F, an atom of
# the gap's length sitting at one of the gap's two endpoints. Only
# finitely many gaps are supported, all with rational endpoints, so
# every structural quantity below is computed exactly.
#

from __future__ import annotations

import bisect
import enum
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import pairwise

from shuffles.exceptions import (DegenerateGap, MeasureError, NotPurelyAtomic, OutOfRange,
                                 OverlappingGaps, UnknownMeasure)

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value):
    """
    Convert an integer, a Fraction or a "p/q" string into a Fraction.
    Floats are converted through their shortest repr, so 0.3 becomes 3/10.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise OutOfRange("Booleans are not rationals: %r" % value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise OutOfRange("Not a rational number: %r" % (value, ))


def format_fraction(value):
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


class AtomSide(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise UnknownMeasure("atom_side must be 'left' or 'right', got %r" % (value, ))

    def flipped(self):
        return AtomSide.RIGHT if self is AtomSide.LEFT else AtomSide.LEFT


@dataclass(frozen=True)
class GapInterval:
    """
    An open component (lo, hi) of the complement of F, carrying an atom
    of mass hi - lo at the endpoint named by ``atom_side``.
    """
    lo: Fraction
    hi: Fraction
    atom_side: AtomSide

    @property
    def mass(self):
        return self.hi - self.lo

    @property
    def atom(self):
        return self.lo if self.atom_side is AtomSide.LEFT else self.hi

    @property
    def opposite(self):
        return self.hi if self.atom_side is AtomSide.LEFT else self.lo

    def flipped(self):
        return GapInterval(self.lo, self.hi, self.atom_side.flipped())

    def contains(self, u):
        return self.lo < u < self.hi

    def to_dict(self):
        return {
            "lo": format_fraction(self.lo),
            "hi": format_fraction(self.hi),
            "atom_side": self.atom_side.value,
        }


@dataclass(frozen=True)
class MeasureSpec:
    """
    Raw, unvalidated gap list as read from JSON or built in code.
    """
    gaps: tuple = ()

    @classmethod
    def from_dict(cls, data):
        try:
            raw = data.get("gaps", [])
            gaps = tuple((g["lo"], g["hi"], g.get("atom_side", "right")) for g in raw)
        except (AttributeError, KeyError, TypeError) as e:
            raise UnknownMeasure("Malformed measure spec: %s" % e)
        return cls(gaps=gaps)


@dataclass(frozen=True)
class ConjugateSample:
    """
    One draw of a conjugate pair (X, Y). Either a diffuse point ``u`` of F,
    in which case X = Y = u, or the index of a gap whose two endpoints X
    and Y occupy, X being the atom.
    """
    u: float = None
    gap_index: int = None
    gap: GapInterval = None

    @classmethod
    def diffuse(cls, u):
        return cls(u=u)

    @classmethod
    def in_gap(cls, index, gap):
        return cls(gap_index=index, gap=gap)

    @property
    def is_diffuse(self):
        return self.gap is None

    def x(self):
        return self.u if self.gap is None else self.gap.atom

    def y(self):
        return self.u if self.gap is None else self.gap.opposite

    def component(self):
        """
        Sort key of the component of [0, 1] this sample sits in: the
        diffuse point itself, or the left end of its gap. Used to break
        ties in final positions, rightmost component above.
        """
        if self.gap is None:
            return (self.u, 0)
        return (self.gap.lo, 1)


class QuasiUniformMeasure(object):
    """
    A validated quasi-uniform measure. Instances are immutable; build them
    with :func:`validate` or one of the named constructors.
    """

    def __init__(self, gaps, name=None):
        self._gaps = tuple(sorted(gaps, key=lambda g: (g.lo, g.hi)))
        self._los = [g.lo for g in self._gaps]
        self.name = name

    @property
    def gaps(self):
        return self._gaps

    @property
    def diffuse_mass(self):
        """
        Lebesgue measure of F.
        """
        return ONE - sum((g.mass for g in self._gaps), ZERO)

    @property
    def atom_mass(self):
        return sum((g.mass for g in self._gaps), ZERO)

    @property
    def is_purely_atomic(self):
        return self.diffuse_mass == 0

    def atoms(self):
        return [(g.atom, g.mass) for g in self._gaps]

    def _lebesgue_below(self, x):
        covered = sum((min(g.hi, x) - g.lo for g in self._gaps if g.lo < x), ZERO)
        return x - covered

    def cdf(self, x):
        """
        μ[0, x].
        """
        x = _check_unit(x)
        return self._lebesgue_below(x) + sum((g.mass for g in self._gaps if g.atom <= x), ZERO)

    def cdf_left(self, x):
        """
        μ[0, x).
        """
        x = _check_unit(x)
        return self._lebesgue_below(x) + sum((g.mass for g in self._gaps if g.atom < x), ZERO)

    def breakpoints(self):
        points = {ZERO, ONE}
        for g in self._gaps:
            points.update((g.lo, g.hi))
        return sorted(points)

    def _inverse(self, y, strict):
        y = _check_unit(y)
        reached = (lambda c: c > y) if strict else (lambda c: c >= y)
        points = self.breakpoints()
        for a, b in pairwise(points):
            c = self.cdf(a)
            if reached(c):
                return a
            if not any(g.contains((a + b) / 2) for g in self._gaps):
                # cdf grows with slope one across this piece of F.
                target = a + (y - c)
                if target < b or (not strict and target == b):
                    return target
        return ONE

    def quantile(self, y):
        """
        inf{x : μ[0, x] > y}, the right-continuous inverse, which is the
        distribution function of the conjugate measure.
        """
        return self._inverse(y, strict=True)

    def quantile_left(self, y):
        """
        inf{x : μ[0, x] >= y}, which agrees with μ'[0, y).
        """
        return self._inverse(y, strict=False)

    def conjugate(self):
        name = None
        if self.name:
            name = self.name[:-len("-conjugate")] if self.name.endswith("-conjugate") \
                else "%s-conjugate" % self.name
        return QuasiUniformMeasure([g.flipped() for g in self._gaps], name=name)

    def locate(self, u):
        """
        Return the index of the gap whose interior contains ``u``, or None
        if ``u`` lies in F.
        """
        i = bisect.bisect_right(self._los, u) - 1
        if i >= 0 and self._gaps[i].contains(u):
            return i
        return None

    def classify(self, u):
        index = self.locate(u)
        if index is None:
            return ConjugateSample.diffuse(u)
        return ConjugateSample.in_gap(index, self._gaps[index])

    def sample_conjugate_pair(self, rng):
        return self.classify(float(rng.random()))

    def sample_conjugate_pairs(self, rng, size):
        return [self.classify(u) for u in rng.random(size).tolist()]

    def as_candidate(self):
        return MeasureCandidate(holes=[(g.lo, g.hi) for g in self._gaps],
                                atoms=self.atoms())

    def to_dict(self):
        return {"gaps": [g.to_dict() for g in self._gaps]}

    def __eq__(self, other):
        return isinstance(other, QuasiUniformMeasure) and self._gaps == other._gaps

    def __hash__(self):
        return hash(self._gaps)

    def __repr__(self):
        if self.name:
            return "<QuasiUniformMeasure: %s>" % self.name
        return "<QuasiUniformMeasure: %d gaps>" % len(self._gaps)


class MeasureCandidate(object):
    """
    A probability measure of the form "density one off a finite union of
    open holes, plus finitely many atoms anywhere". This is what
    :func:`is_quasi_uniform` inspects; unlike a validated measure, the
    atoms need not sit at hole endpoints.
    """

    def __init__(self, holes=(), atoms=(), name=None):
        self.holes = sorted((as_fraction(lo), as_fraction(hi)) for lo, hi in holes)
        self.atoms = [(as_fraction(p), as_fraction(m)) for p, m in atoms]
        self.name = name

    @classmethod
    def from_dict(cls, data):
        try:
            holes = [(h["lo"], h["hi"]) for h in data.get("holes", [])]
            atoms = [(a["pos"], a["mass"]) for a in data.get("atoms", [])]
        except (AttributeError, KeyError, TypeError) as e:
            raise UnknownMeasure("Malformed measure candidate: %s" % e)
        return cls(holes, atoms)

    def _lebesgue_below(self, x):
        return x - sum((min(hi, x) - lo for lo, hi in self.holes if lo < x), ZERO)

    def cdf(self, x):
        x = _check_unit(x)
        return self._lebesgue_below(x) + sum((m for p, m in self.atoms if p <= x), ZERO)

    def cdf_left(self, x):
        x = _check_unit(x)
        return self._lebesgue_below(x) + sum((m for p, m in self.atoms if p < x), ZERO)

    def total_mass(self):
        return self._lebesgue_below(ONE) + sum((m for p, m in self.atoms), ZERO)

    def diffuse_segments(self):
        segments, start = [], ZERO
        for lo, hi in self.holes:
            if lo > start:
                segments.append((start, lo))
            start = max(start, hi)
        if start < ONE:
            segments.append((start, ONE))
        return segments

    def to_dict(self):
        return {
            "holes": [{"lo": format_fraction(lo), "hi": format_fraction(hi)} for lo, hi in self.holes],
            "atoms": [{"pos": format_fraction(p), "mass": format_fraction(m)} for p, m in self.atoms],
        }

    def __repr__(self):
        return "<MeasureCandidate: %s>" % (self.name or "%d holes, %d atoms" % (len(self.holes), len(self.atoms)))


def _check_unit(x):
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise OutOfRange("%s is outside [0, 1]" % (x, ))
    return x


#
# Module level operations
#

def validate(spec, name=None):
    """
    Turn a raw :class:`MeasureSpec` (or its dict form) into a sorted,
    validated :class:`QuasiUniformMeasure`.
    """
    if isinstance(spec, dict):
        spec = MeasureSpec.from_dict(spec)
    gaps = []
    for lo, hi, side in spec.gaps:
        lo, hi = as_fraction(lo), as_fraction(hi)
        for endpoint in (lo, hi):
            if not 0 <= endpoint <= 1:
                raise OutOfRange("Gap endpoint %s is outside [0, 1]" % endpoint)
        if lo >= hi:
            raise DegenerateGap("Gap (%s, %s) is empty" % (lo, hi))
        gaps.append(GapInterval(lo, hi, AtomSide.parse(side)))
    gaps.sort(key=lambda g: (g.lo, g.hi))
    for left, right in pairwise(gaps):
        if left.hi > right.lo:
            raise OverlappingGaps("Gaps (%s, %s) and (%s, %s) overlap" %
                                  (left.lo, left.hi, right.lo, right.hi))
    measure = QuasiUniformMeasure(gaps, name=name)
    total = measure.diffuse_mass + measure.atom_mass
    if total != 1:
        raise MeasureError("Gaps %r give total mass %s instead of 1" % (spec.gaps, total))
    return measure


def cdf(measure, x):
    return measure.cdf(x)


def cdf_left(measure, x):
    return measure.cdf_left(x)


def conjugate(measure):
    return measure.conjugate()


def sample_conjugate_pair(measure, rng):
    return measure.sample_conjugate_pair(rng)


def is_quasi_uniform(candidate):
    """
    Decide whether a candidate measure is quasi-uniform, that is, whether
    it decomposes as Lebesgue measure on F plus one gap-length atom at an
    endpoint of every gap. Everything is checked exactly:

    * the sandwich μ[0, x) <= x <= μ[0, x] at every atom and hole endpoint,
    * no atom strictly inside a hole, and the distribution function is flat
      at one of the hole's endpoints across the hole,
    * μ[0, x] = x on every stretch of F between atoms.
    """
    if isinstance(candidate, QuasiUniformMeasure):
        candidate = candidate.as_candidate()
    for (lo1, hi1), (lo2, hi2) in pairwise(candidate.holes):
        if hi1 > lo2:
            return False
    for lo, hi in candidate.holes:
        if not 0 <= lo < hi <= 1:
            return False
    if any(not 0 <= p <= 1 or m < 0 for p, m in candidate.atoms):
        return False
    if candidate.total_mass() != 1:
        return False

    points = {p for p, m in candidate.atoms}
    for lo, hi in candidate.holes:
        points.update((lo, hi))
    for p in points:
        if not candidate.cdf_left(p) <= p <= candidate.cdf(p):
            return False

    for lo, hi in candidate.holes:
        if any(lo < p < hi for p, m in candidate.atoms):
            return False
        if candidate.cdf((lo + hi) / 2) not in (lo, hi):
            return False

    for a, b in candidate.diffuse_segments():
        cuts = sorted({a, b} | {p for p, m in candidate.atoms if a < p < b})
        for s, t in pairwise(cuts):
            middle = (s + t) / 2
            if candidate.cdf(middle) != middle:
                return False
    return True


#
# Named measures
#

GAP_LITERAL = re.compile(r"^gap\(\s*([^,]+?)\s*,\s*([^,]+?)\s*,\s*(left|right)\s*\)$", re.I)


def lebesgue():
    return QuasiUniformMeasure([], name="lebesgue")


def a_shuffle(k):
    """
    K equal gaps ((j - 1)/K, j/K) with their atoms on the right.
    """
    k = int(k)
    if k < 1:
        raise UnknownMeasure("a-shuffle needs K >= 1, got %d" % k)
    gaps = [(Fraction(j - 1, k), Fraction(j, k), AtomSide.RIGHT) for j in range(1, k + 1)]
    return validate(MeasureSpec(tuple(gaps)), name="a-shuffle:%d" % k)


def gsr():
    measure = a_shuffle(2)
    measure.name = "gsr"
    return measure


def two_class(p):
    """
    The two-class ordering: each label independently falls in the lower
    class with probability p, classes are stacked and natural order is
    kept inside each class.
    """
    p = as_fraction(p)
    if not 0 < p < 1:
        raise UnknownMeasure("two-class needs 0 < p < 1, got %s" % p)
    spec = MeasureSpec(((0, p, "right"), (p, 1, "right")))
    return validate(spec, name="two-class:%s" % format_fraction(p))


def mixed_fixture():
    """
    Atoms and diffuse mass together: F = [0, 1/4] u [1/2, 3/4].
    """
    spec = MeasureSpec((("1/4", "1/2", "right"), ("3/4", "1", "left")))
    return validate(spec, name="mixed")


def interior_atom():
    """
    Not quasi-uniform: density one on [0, 1/2] u [3/4, 1] and an atom of
    mass 1/4 in the middle of the hole.
    """
    return MeasureCandidate(holes=[("1/2", "3/4")], atoms=[("5/8", "1/4")],
                            name="interior-atom")


def named_measure(name):
    """
    Resolve one of the built-in names. Returns a QuasiUniformMeasure, or a
    MeasureCandidate for the non quasi-uniform fixtures.
    """
    key = name.strip()
    lowered = key.lower()
    match = GAP_LITERAL.match(key)
    if match:
        lo, hi, side = match.groups()
        return validate(MeasureSpec(((lo, hi, side), )), name=lowered.replace(" ", ""))
    if lowered.endswith("-conjugate"):
        return conjugate(named_measure(key[:-len("-conjugate")]))
    if lowered == "lebesgue":
        return lebesgue()
    if lowered == "gsr":
        return gsr()
    if lowered == "identity":
        return validate(MeasureSpec(((0, 1, "right"), )), name="identity")
    if lowered == "reversal":
        return validate(MeasureSpec(((0, 1, "left"), )), name="reversal")
    if lowered == "mixed":
        return mixed_fixture()
    if lowered == "interior-atom":
        return interior_atom()
    if lowered.startswith("a-shuffle:"):
        try:
            return a_shuffle(int(lowered.split(":", 1)[1]))
        except ValueError:
            raise UnknownMeasure("Bad a-shuffle size in %r" % name)
    if lowered.startswith("two-class:"):
        return two_class(lowered.split(":", 1)[1])
    raise UnknownMeasure("Unknown measure name %r" % name)


def from_dict(data, name=None):
    """
    Build a measure (or a candidate, when free atoms are given) from the
    JSON form.
    """
    if "atoms" in data or "holes" in data:
        candidate = MeasureCandidate.from_dict(data)
        candidate.name = name
        return candidate
    return validate(MeasureSpec.from_dict(data), name=name)


def require_purely_atomic(measure):
    if measure.diffuse_mass > 0:
        raise NotPurelyAtomic("%r has diffuse mass %s" % (measure, measure.diffuse_mass))
    return measure
