# -*- coding: utf-8 -*-
#
# Shuffle kernels.
#
# A shuffle of a pack is described by a law nu on [0, 1]^2 with uniform
# marginals: every card independently draws (u, v), starts at relative
# position u and ends at relative position v. The permutation moving the
# pack is the one carrying the u-order of the cards onto their v-order.
#
# Composition convention: a step sigma acts on positions, so the state
# moves from rho to sigma rho (see shuffles.permutations.compose).
#

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from shuffles import get_debug_assertions
from shuffles import oracle, permutations
from shuffles.exceptions import DimensionMismatch, ExactUnavailable, InvalidCoupling, MeasureError
from shuffles.measure import AtomSide, QuasiUniformMeasure, as_fraction, format_fraction, \
    require_purely_atomic

logger = logging.getLogger(__name__)

GRID_TOLERANCE = 1e-12
WALK_LOG_EVERY = 100


#
# Deterministic shuffle maps
#

@dataclass(frozen=True)
class AffinePiece:
    """
    x -> slope * x + intercept on [a, b).
    """
    a: Fraction
    b: Fraction
    slope: Fraction
    intercept: Fraction

    def apply(self, x):
        return self.slope * x + self.intercept

    def preimage(self, y):
        return (y - self.intercept) / self.slope

    def image(self):
        ends = (self.apply(self.a), self.apply(self.b))
        return min(ends), max(ends)

    def describe(self):
        slope, intercept = format_fraction(self.slope), format_fraction(self.intercept)
        return "[%s, %s): x -> %s*x + %s" % (format_fraction(self.a), format_fraction(self.b),
                                               slope, intercept)

    def to_dict(self):
        return {"a": format_fraction(self.a), "b": format_fraction(self.b),
                "slope": format_fraction(self.slope), "intercept": format_fraction(self.intercept)}


class ShuffleMap(object):
    """
    A piecewise affine map of [0, 1] into itself. Pieces are half open
    [a, b), the last one closed, so the map is right-continuous at the
    breakpoints.
    """

    def __init__(self, pieces):
        pieces = sorted(pieces, key=lambda p: p.a)
        if not pieces or pieces[0].a != 0 or pieces[-1].b != 1:
            raise InvalidCoupling("Pieces must cover [0, 1]")
        for left, right in zip(pieces, pieces[1:]):
            if left.b != right.a:
                raise InvalidCoupling("Pieces must be contiguous: %s then %s" % (left.b, right.a))
        for piece in pieces:
            if piece.a >= piece.b or piece.slope == 0:
                raise InvalidCoupling("Degenerate piece %s" % piece.describe())
            lo, hi = piece.image()
            if lo < 0 or hi > 1:
                raise InvalidCoupling("Piece %s leaves [0, 1]" % piece.describe())
        self.pieces = tuple(pieces)
        self._starts = [p.a for p in self.pieces]

    @classmethod
    def from_pieces(cls, pieces):
        """
        Build from (a, b, slope, intercept) tuples or dicts of rationals.
        """
        result = []
        for p in pieces:
            if isinstance(p, dict):
                p = (p["a"], p["b"], p["slope"], p["intercept"])
            result.append(AffinePiece(*(as_fraction(v) for v in p)))
        return cls(result)

    @classmethod
    def multiply(cls, k):
        """
        x -> k x mod 1.
        """
        return cls([AffinePiece(Fraction(j, k), Fraction(j + 1, k), Fraction(k), Fraction(-j))
                    for j in range(k)])

    def evaluate(self, x):
        """
        Exact value at x; floats are promoted to the rational they encode.
        """
        x = Fraction(x) if isinstance(x, float) else as_fraction(x)
        if not 0 <= x <= 1:
            raise ValueError("%s is outside [0, 1]" % x)
        index = max(i for i, a in enumerate(self._starts) if a <= x)
        return self.pieces[index].apply(x)

    __call__ = evaluate

    def is_measure_preserving(self):
        """
        Lebesgue measure is preserved iff, off the image breakpoints, the
        preimage densities 1/|slope| add up to one everywhere.
        """
        points = {Fraction(0), Fraction(1)}
        for piece in self.pieces:
            points.update(piece.image())
        points = sorted(points)
        for s, t in zip(points, points[1:]):
            y = (s + t) / 2
            density = sum((1 / abs(p.slope) for p in self.pieces
                           if p.image()[0] < y < p.image()[1]), Fraction(0))
            if density != 1:
                return False
        return True

    def compose(self, other):
        """
        The map x -> self(other(x)).
        """
        pieces = []
        for inner in other.pieces:
            lo, hi = inner.image()
            cuts = {inner.a, inner.b}
            for outer_start in self._starts[1:]:
                if lo < outer_start < hi:
                    cuts.add(inner.preimage(outer_start))
            cuts = sorted(cuts)
            for s, e in zip(cuts, cuts[1:]):
                outer = self.pieces[max(i for i, a in enumerate(self._starts)
                                        if a <= inner.apply((s + e) / 2))]
                pieces.append(AffinePiece(s, e, outer.slope * inner.slope,
                                          outer.slope * inner.intercept + outer.intercept))
        return ShuffleMap(pieces)

    def iterate(self, h):
        result = ShuffleMap([AffinePiece(Fraction(0), Fraction(1), Fraction(1), Fraction(0))])
        for _ in range(h):
            result = self.compose(result)
        return result

    def table(self, points):
        return [(x, self.evaluate(x)) for x in points]

    def to_dict(self):
        return {"pieces": [p.to_dict() for p in self.pieces]}

    def __eq__(self, other):
        return isinstance(other, ShuffleMap) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        return "<ShuffleMap: %s>" % "; ".join(p.describe() for p in self.pieces)


def shuffle_map_from_measure(measure):
    """
    The measure-preserving map of a purely atomic quasi-uniform measure:
    a gap (r, R) with its atom on the right is stretched increasingly
    onto [0, 1], a gap (l, L) with its atom on the left decreasingly.
    """
    require_purely_atomic(measure)
    pieces = []
    for gap in measure.gaps:
        width = gap.hi - gap.lo
        if gap.atom_side is AtomSide.RIGHT:
            pieces.append(AffinePiece(gap.lo, gap.hi, 1 / width, -gap.lo / width))
        else:
            pieces.append(AffinePiece(gap.lo, gap.hi, -1 / width, gap.hi / width))
    return ShuffleMap(pieces)


#
# Couplings
#

@dataclass(frozen=True)
class CouplingDraw:
    """
    One card's (u, v). ``mixed`` names the coordinate, if any, that was
    built as U X + (1 - U) Y from the conjugate pair ``meta``.
    """
    u: object
    v: object
    meta: object = None
    mixed: str = None

    def coordinate(self, name):
        return self.u if name == "u" else self.v

    def sort_key(self, name, partner_rank):
        """
        Tie-resolved key for ranking cards by coordinate ``name``. Equal
        values from different gaps put the rightmost gap above; equal
        values from one gap keep the partner order when the atom is on
        the right and reverse it when it is on the left.
        """
        value = self.coordinate(name)
        if self.mixed == name and self.meta is not None and not self.meta.is_diffuse:
            sign = 1 if self.meta.x() > self.meta.y() else -1
            return (value, self.meta.component(), sign * partner_rank)
        return (value, (value, 0), partner_rank)


class CouplingSampler(object):
    """
    Base class for laws on [0, 1]^2 with uniform marginals.
    """
    kind = None

    def draw(self, rng):
        raise NotImplementedError

    def draws(self, rng, size):
        return [self.draw(rng) for _ in range(size)]

    def exact_step(self, n):
        raise ExactUnavailable("%r has no exact step law" % self)

    def to_dict(self):
        raise NotImplementedError


class NuMu(CouplingSampler):
    """
    Type one coupling: (U, U X + (1 - U) Y) for a conjugate pair (X, Y)
    of mu and an independent uniform U.
    """
    kind = "nu_mu"

    def __init__(self, measure):
        if not isinstance(measure, QuasiUniformMeasure):
            raise MeasureError("%r is not a quasi-uniform measure" % (measure, ))
        self.measure = measure

    def draw(self, rng):
        pair = self.measure.sample_conjugate_pair(rng)
        u = float(rng.random())
        if pair.is_diffuse:
            v = pair.u
        else:
            exact = Fraction(u)
            v = exact * pair.x() + (1 - exact) * pair.y()
        return CouplingDraw(u=u, v=v, meta=pair, mixed="v")

    def exact_step(self, n):
        return oracle.exact_step_distribution(self.measure, n, "one")

    def to_dict(self):
        return {"type": self.kind, "measure": self.measure.to_dict()}

    def __repr__(self):
        return "<%s: %r>" % (self.__class__.__name__, self.measure)


class NuMuStar(NuMu):
    """
    Type two coupling: the coordinate swap of the type one coupling.
    """
    kind = "nu_mu_star"

    def draw(self, rng):
        d = super(NuMuStar, self).draw(rng)
        return CouplingDraw(u=d.v, v=d.u, meta=d.meta, mixed="u")

    def exact_step(self, n):
        return oracle.exact_step_distribution(self.measure, n, "two")


class Deterministic(CouplingSampler):
    """
    (U, S(U)) for a measure-preserving shuffle map S.
    """
    kind = "deterministic"

    def __init__(self, shuffle_map):
        if not shuffle_map.is_measure_preserving():
            raise InvalidCoupling("%r does not preserve Lebesgue measure" % shuffle_map)
        self.shuffle_map = shuffle_map

    def draw(self, rng):
        u = float(rng.random())
        return CouplingDraw(u=u, v=self.shuffle_map.evaluate(u))

    def exact_step(self, n):
        return oracle.exact_map_step_distribution(self.shuffle_map, n)

    def to_dict(self):
        return {"type": self.kind, "map": self.shuffle_map.to_dict()}

    def __repr__(self):
        return "<Deterministic: %r>" % self.shuffle_map


class GridCopula(CouplingSampler):
    """
    An m x m nonnegative matrix whose rows and columns each sum to 1/m;
    cell (i, j) carries its mass uniformly on [i/m, (i+1)/m) x [j/m, (j+1)/m).
    """
    kind = "grid"

    def __init__(self, matrix):
        self.exact = all(not isinstance(x, float) for row in matrix for x in row)
        convert = as_fraction if self.exact else float
        self.matrix = [[convert(x) for x in row] for row in matrix]
        self.size = len(self.matrix)
        self.validate()
        flat = [x for row in self.matrix for x in row]
        self._cumulative = list(itertools.accumulate(float(x) for x in flat))

    def validate(self):
        m = self.size
        if not m or any(len(row) != m for row in self.matrix):
            raise InvalidCoupling("A grid copula needs a square, nonempty matrix")
        if any(x < 0 for row in self.matrix for x in row):
            raise InvalidCoupling("Grid masses must be nonnegative")
        sums = [sum(row) for row in self.matrix]
        sums += [sum(self.matrix[i][j] for i in range(m)) for j in range(m)]
        for s in sums:
            off = abs(s - Fraction(1, m)) if self.exact else abs(s - 1.0 / m)
            if (self.exact and off != 0) or (not self.exact and off >= GRID_TOLERANCE):
                raise InvalidCoupling("Every row and column must sum to 1/%d, found %s" % (m, s))

    def draw(self, rng):
        target = float(rng.random()) * self._cumulative[-1]
        cell = next((i for i, c in enumerate(self._cumulative) if target < c),
                    len(self._cumulative) - 1)
        i, j = divmod(cell, self.size)
        u = (i + float(rng.random())) / self.size
        v = (j + float(rng.random())) / self.size
        return CouplingDraw(u=u, v=v)

    def to_dict(self):
        cells = [[format_fraction(x) if self.exact else x for x in row] for row in self.matrix]
        return {"type": self.kind, "grid": cells}


class MixtureSampler(CouplingSampler):
    """
    A mixture of couplings. One component is picked per step: ``draws``
    takes every card's draw from the same component, so the step law is
    the mixture of the components' step laws.
    """
    kind = "mixture"

    def __init__(self, components):
        components = [(as_fraction(w), s) for w, s in components]
        if not components or any(w <= 0 for w, s in components) or sum(w for w, s in components) != 1:
            raise InvalidCoupling("Mixture weights must be positive and sum to 1")
        self.components = tuple(components)

    def pick(self, rng):
        u = Fraction(float(rng.random()))
        total = Fraction(0)
        for weight, sampler in self.components:
            total += weight
            if u < total:
                return sampler
        return self.components[-1][1]

    def draw(self, rng):
        return self.pick(rng).draw(rng)

    def draws(self, rng, size):
        return self.pick(rng).draws(rng, size)

    def exact_step(self, n):
        return oracle.PermutationDistribution.mixture(
            n, [(w, s.exact_step(n)) for w, s in self.components])

    def to_dict(self):
        return {"type": self.kind, "components": [{"weight": format_fraction(w), "sampler": s.to_dict()}
                                                  for w, s in self.components]}


def sampler_from_dict(data, resolve):
    """
    Build a CouplingSampler from its JSON form. ``resolve`` turns a
    measure name or spec into a measure.
    """
    try:
        kind = data["type"]
        if kind in (NuMu.kind, NuMuStar.kind):
            cls = NuMu if kind == NuMu.kind else NuMuStar
            return cls(resolve(data["measure"]))
        if kind == Deterministic.kind:
            if "map" in data:
                return Deterministic(ShuffleMap.from_pieces(data["map"]["pieces"]))
            return Deterministic(shuffle_map_from_measure(resolve(data["measure"])))
        if kind == GridCopula.kind:
            return GridCopula(data["grid"])
        if kind == MixtureSampler.kind:
            return MixtureSampler([(c["weight"], sampler_from_dict(c["sampler"], resolve))
                                   for c in data["components"]])
    except (KeyError, TypeError) as e:
        raise InvalidCoupling("Malformed sampler spec: %s" % e)
    raise InvalidCoupling("Unknown sampler type %r" % (data.get("type"), ))


def draw_coupling(sampler, rng):
    d = sampler.draw(rng)
    return d.u, d.v, d.meta


#
# Steps and walks
#

@dataclass(frozen=True)
class CardRecord:
    label: int
    u: object
    v: object
    tiebreak: object = None


@dataclass(frozen=True)
class StepOutcome:
    records: tuple
    initial: tuple
    final: tuple
    sigma: tuple


def _rank(draws, name, partner_ranks):
    keys = [d.sort_key(name, partner_ranks[i]) for i, d in enumerate(draws)]
    return permutations.ranks(keys)


def step_from_draws(draws):
    """
    Rank cards by u (initial positions) and by v (final positions),
    resolving ties, and return the permutation of positions.
    """
    n = len(draws)
    plain_v = permutations.ranks([(d.v, i) for i, d in enumerate(draws)])
    initial = _rank(draws, "u", plain_v)
    final = _rank(draws, "v", initial)
    if get_debug_assertions():
        for i in range(n):
            for j in range(i + 1, n):
                a, b = draws[i], draws[j]
                if a.v == b.v and a.mixed == "v":
                    assert not (a.meta.is_diffuse and b.meta.is_diffuse), "diffuse tie in final positions"
    sigma = [0] * n
    for i in range(n):
        sigma[initial[i] - 1] = final[i]
    records = tuple(CardRecord(label=i + 1, u=d.u, v=d.v, tiebreak=d.meta)
                    for i, d in enumerate(draws))
    return StepOutcome(records=records, initial=initial, final=final, sigma=tuple(sigma))


def step_permutation(n, sampler, rng):
    if n < 1:
        raise ValueError("A pack needs at least one card")
    return step_from_draws(sampler.draws(rng, n))


def walk(n, sampler, steps, rng, start=None):
    """
    Trajectory rho_0, ..., rho_H with rho_{h+1} = sigma_{h+1} rho_h.
    """
    if steps < 0:
        raise ValueError("The number of steps must be nonnegative")
    rho = tuple(start) if start else permutations.identity(n)
    if len(rho) != n or not permutations.is_permutation(rho):
        raise DimensionMismatch("Start state %r is not a permutation of 1..%d" % (rho, n))
    trajectory = [rho]
    for h in range(steps):
        sigma = step_permutation(n, sampler, rng).sigma
        rho = permutations.compose(sigma, rho)
        trajectory.append(rho)
        if (h + 1) % WALK_LOG_EVERY == 0:
            logger.debug("Walk on %d cards at step %d of %d", n, h + 1, steps)
    return trajectory


def sample_steps(n, sampler, samples, rng):
    return Counter(step_permutation(n, sampler, rng).sigma for _ in range(samples))


def kernel_matrix(n, sampler, mode="exact", samples=None, rng=None):
    """
    The step law kappa_n(id, .), exactly or by Monte Carlo over
    ``samples`` steps. The whole matrix follows from
    kappa_n(rho, sigma rho) = kappa_n(id, sigma); see
    shuffles.oracle.transition_matrix.
    """
    if mode == "exact":
        return sampler.exact_step(n)
    if mode in ("mc", "monte_carlo"):
        if not samples or rng is None:
            raise ValueError("Monte Carlo mode needs a sample size and a random stream")
        return oracle.PermutationDistribution.from_counts(n, sample_steps(n, sampler, samples, rng))
    raise ValueError("Unknown mode %r" % (mode, ))


def exact_coupling_step_distribution(measure, n):
    """
    Exact type one step law of a purely atomic measure computed through
    the coupling: initial positions 1..n receive i.i.d. gaps, and the
    final order is the one step_from_draws produces from the sort keys.
    """
    require_purely_atomic(measure)
    oracle._check_caps(n, len(measure.gaps))
    gaps = measure.gaps
    probs = {}
    for assignment in itertools.product(range(len(gaps)), repeat=n):
        weight = Fraction(1)
        for g in assignment:
            weight *= gaps[g].mass
        keys = []
        for position, g in enumerate(assignment, 1):
            gap = gaps[g]
            sign = 1 if gap.atom_side is AtomSide.RIGHT else -1
            keys.append(((gap.lo, 1), sign * position))
        sigma = permutations.ranks(keys)
        probs[sigma] = probs.get(sigma, Fraction(0)) + weight
    return oracle.PermutationDistribution(n, probs)
