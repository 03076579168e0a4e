# -*- coding: utf-8 -*-
#
# Exact brute-force laws on small symmetric groups.
#
# Everything here is computed with Fractions, so the results are the
# ground truth the samplers are tested against. Enumeration is bounded
# by SHUFFLES_EXACT_CAP (pack size) and SHUFFLES_CELL_CAP (cells).
#

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from shuffles import get_cell_cap, get_exact_cap
from shuffles import permutations
from shuffles.exceptions import CapExceeded, DimensionMismatch, MeasureError
from shuffles.measure import AtomSide, format_fraction

logger = logging.getLogger(__name__)

STEP_TYPES = ("one", "two")


@dataclass
class PermutationDistribution:
    """
    Exact law on the permutations of {1..n}. Permutations missing from
    ``probs`` have probability zero.
    """
    n: int
    probs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.probs = {tuple(p): Fraction(q) for p, q in self.probs.items() if q}
        for p, q in self.probs.items():
            if len(p) != self.n or not permutations.is_permutation(p):
                raise DimensionMismatch("%r is not a permutation of %d cards" % (p, self.n))
            if q < 0:
                raise ValueError("Negative probability %s for %r" % (q, p))

    @classmethod
    def uniform(cls, n):
        perms = permutations.all_permutations(n)
        return cls(n, {p: Fraction(1, len(perms)) for p in perms})

    @classmethod
    def point(cls, p):
        return cls(len(p), {tuple(p): Fraction(1)})

    @classmethod
    def from_counts(cls, n, counts):
        total = sum(counts.values())
        return cls(n, {p: Fraction(c, total) for p, c in counts.items()})

    @classmethod
    def mixture(cls, n, components):
        """
        Weighted sum of (weight, distribution) pairs.
        """
        probs = {}
        for weight, dist in components:
            if dist.n != n:
                raise DimensionMismatch("Cannot mix laws on S_%d and S_%d" % (n, dist.n))
            for p, q in dist.probs.items():
                probs[p] = probs.get(p, Fraction(0)) + Fraction(weight) * q
        return cls(n, probs)

    def __getitem__(self, p):
        return self.probs.get(tuple(p), Fraction(0))

    def total(self):
        return sum(self.probs.values(), Fraction(0))

    def inverse_pushforward(self):
        return PermutationDistribution(self.n, {permutations.inverse(p): q
                                                for p, q in self.probs.items()})

    def marginal(self, m):
        """
        Law of the ordering induced on the cards 1..m.
        """
        probs = {}
        for p, q in self.probs.items():
            key = permutations.restrict(p, m)
            probs[key] = probs.get(key, Fraction(0)) + q
        return PermutationDistribution(m, probs)

    def to_dict(self):
        return {
            "n": self.n,
            "probs": {permutations.to_string(p): format_fraction(self.probs[p])
                      for p in sorted(self.probs)},
        }

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["n"]), {permutations.parse(k): Fraction(v)
                                    for k, v in data["probs"].items()})


@dataclass(frozen=True)
class Cell:
    """
    A piece of [0, 1] for exact enumeration: a stretch of F carrying
    Lebesgue mass, or the atom of one gap.
    """
    mass: Fraction
    key: tuple
    diffuse: bool
    gap_index: int = None
    atom_side: AtomSide = None


class CellDecomposition(object):
    """
    The cells of a quasi-uniform measure in the order
    :func:`shuffles.ordering.compare` ranks them: by position, atoms
    sharing a position by their conjugate value.
    """

    def __init__(self, measure):
        cells = []
        for index, gap in enumerate(measure.gaps):
            cells.append(Cell(mass=gap.mass, key=(gap.atom, gap.opposite), diffuse=False,
                              gap_index=index, atom_side=gap.atom_side))
        points = measure.breakpoints()
        for a, b in zip(points, points[1:]):
            middle = (a + b) / 2
            if measure.locate(middle) is None:
                cells.append(Cell(mass=b - a, key=(middle, middle), diffuse=True))
        self.cells = sorted(cells, key=lambda c: c.key)
        assert sum(c.mass for c in self.cells) == 1

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)


def _check_caps(n, cells=None):
    cap = get_exact_cap()
    if n < 1:
        raise ValueError("Pack size must be positive, got %d" % n)
    if n > cap:
        raise CapExceeded("Exact enumeration is capped at n = %d, got %d" % (cap, n))
    if cells is not None and cells > get_cell_cap():
        raise CapExceeded("Exact enumeration is capped at %d cells, got %d" % (get_cell_cap(), cells))


def exact_ordering_distribution(measure, n, labels=None):
    """
    Law of the ordering P^mu induced on n labels (1..n unless ``labels``,
    an increasing sequence, is given), as a law on S_n.
    """
    if labels is None:
        labels = tuple(range(1, n + 1))
    labels = tuple(labels)
    if len(labels) != n or any(a >= b for a, b in zip(labels, labels[1:])):
        raise ValueError("Labels must be %d strictly increasing integers" % n)
    decomposition = CellDecomposition(measure)
    _check_caps(n, len(decomposition))
    cells = decomposition.cells
    logger.debug("Enumerating %d^%d cell assignments for %r", len(cells), n, measure)

    position = {k: i for i, k in enumerate(labels, 1)}
    probs = {}
    for assignment in itertools.product(range(len(cells)), repeat=n):
        weight = Fraction(1)
        for c in assignment:
            weight *= cells[c].mass
        blocks = []
        for index, cell in enumerate(cells):
            members = [labels[i] for i, c in enumerate(assignment) if c == index]
            if not members:
                continue
            if cell.diffuse:
                blocks.append(list(itertools.permutations(members)))
            elif cell.atom_side is AtomSide.RIGHT:
                blocks.append([tuple(members)])
            else:
                blocks.append([tuple(reversed(members))])
        arrangements = math.prod(len(b) for b in blocks)
        share = weight / arrangements
        for choice in itertools.product(*blocks):
            order = [position[k] for block in choice for k in block]
            rho = permutations.from_order(order)
            probs[rho] = probs.get(rho, Fraction(0)) + share
    dist = PermutationDistribution(n, probs)
    assert dist.total() == 1
    return dist


def exact_step_distribution(measure, n, step_type="one"):
    """
    Step law kappa_n(id, .) of the type one (or type two) shuffle of mu.
    Type one is the ordering law itself, type two its image under
    inversion.
    """
    if step_type not in STEP_TYPES:
        raise ValueError("step_type must be one of %r" % (STEP_TYPES, ))
    dist = exact_ordering_distribution(measure, n)
    if step_type == "two":
        return dist.inverse_pushforward()
    return dist


def _multiset_arrangements(counts):
    """
    Every distinct sequence holding counts[g] copies of each key g.
    """
    if not any(counts.values()):
        yield ()
        return
    for g in sorted(counts):
        if counts[g]:
            counts[g] -= 1
            for rest in _multiset_arrangements(counts):
                yield (g, ) + rest
            counts[g] += 1


def _refine_map(shuffle_map):
    """
    Cut the domain of a piecewise affine map so that every domain cell is
    carried affinely onto exactly one cell of the target partition.
    Returns (domain cells, number of target cells); a domain cell is
    (length, target index, increasing).
    """
    targets = {Fraction(0), Fraction(1)}
    for piece in shuffle_map.pieces:
        targets.update(piece.image())
    targets = sorted(targets)
    cells = []
    for piece in shuffle_map.pieces:
        lo, hi = piece.image()
        cuts = {piece.a, piece.b}
        for t in targets:
            if lo < t < hi:
                cuts.add(piece.preimage(t))
        cuts = sorted(cuts)
        for s, e in zip(cuts, cuts[1:]):
            middle = piece.apply((s + e) / 2)
            index = next(i for i, (p, q) in enumerate(zip(targets, targets[1:])) if p < middle < q)
            cells.append((e - s, index, piece.slope > 0))
    return cells, len(targets) - 1


def exact_map_step_distribution(shuffle_map, n):
    """
    Step law of the deterministic shuffle whose card positions move by
    the piecewise affine map S: cards get i.i.d. uniform positions u,
    then are reordered by S(u).
    """
    cells, target_count = _refine_map(shuffle_map)
    _check_caps(n, len(cells))
    logger.debug("Enumerating the deterministic shuffle over %d domain cells", len(cells))
    probs = {}
    for counts in _compositions(n, len(cells)):
        weight = Fraction(math.factorial(n))
        for (length, target, increasing), k in zip(cells, counts):
            weight *= length ** k / math.factorial(k)
        if not weight:
            continue
        # Initial positions of each domain cell, bottom to top.
        starts = list(itertools.accumulate((0, ) + counts[:-1]))
        initial = [list(range(s + 1, s + 1 + k)) for s, k in zip(starts, counts)]
        per_target = []
        offset = 0
        for t in range(target_count):
            groups = {d: counts[d] for d, cell in enumerate(cells) if cell[1] == t and counts[d]}
            size = sum(groups.values())
            options = [(offset, seq) for seq in _multiset_arrangements(dict(groups))]
            per_target.append(options)
            offset += size
        arrangements = math.prod(len(o) for o in per_target)
        share = weight / arrangements
        for choice in itertools.product(*per_target):
            sigma = [0] * n
            for offset, seq in choice:
                finals = {}
                for i, d in enumerate(seq):
                    finals.setdefault(d, []).append(offset + 1 + i)
                for d, slots in finals.items():
                    if not cells[d][2]:
                        slots = slots[::-1]
                    for p, q in zip(initial[d], slots):
                        sigma[p - 1] = q
            key = tuple(sigma)
            probs[key] = probs.get(key, Fraction(0)) + share
    dist = PermutationDistribution(n, probs)
    assert dist.total() == 1
    return dist


def _compositions(n, parts):
    """
    All tuples of ``parts`` nonnegative integers summing to n.
    """
    for bars in itertools.combinations(range(n + parts - 1), parts - 1):
        previous, result = -1, []
        for b in bars:
            result.append(b - previous - 1)
            previous = b
        result.append(n + parts - 1 - previous - 1)
        yield tuple(result)


def tv_distance(p, q):
    """
    Exact total variation distance between two laws on S_n.
    """
    if p.n != q.n:
        raise DimensionMismatch("Cannot compare laws on S_%d and S_%d" % (p.n, q.n))
    keys = set(p.probs) | set(q.probs)
    return sum((abs(p[k] - q[k]) for k in keys), Fraction(0)) / 2


def transition_matrix(step):
    """
    The n! x n! matrix kappa_n(rho, sigma rho) = kappa_n(id, sigma), rows
    and columns in lexicographic order.
    """
    perms = permutations.all_permutations(step.n)
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for rho in perms:
        row = matrix[index[rho]]
        for sigma, q in step.probs.items():
            row[index[permutations.compose(sigma, rho)]] += q
    return matrix


def is_doubly_stochastic(matrix):
    size = len(matrix)
    rows = all(sum(row, Fraction(0)) == 1 for row in matrix)
    columns = all(sum((matrix[i][j] for i in range(size)), Fraction(0)) == 1 for j in range(size))
    return rows and columns


def step_mixing_curve(step, steps, start=None):
    """
    TV distance to uniform after h = 0..steps applications of the step
    law, starting from ``start`` (the identity by default).
    """
    n = step.n
    perms = permutations.all_permutations(n)
    index = {p: i for i, p in enumerate(perms)}
    matrix = transition_matrix(step)
    uniform = Fraction(1, len(perms))
    state = [Fraction(0)] * len(perms)
    state[index[tuple(start) if start else permutations.identity(n)]] = Fraction(1)
    curve = []
    for h in range(steps + 1):
        curve.append(sum((abs(s - uniform) for s in state), Fraction(0)) / 2)
        if h == steps:
            break
        following = [Fraction(0)] * len(perms)
        for i, mass in enumerate(state):
            if mass:
                for j, q in enumerate(matrix[i]):
                    if q:
                        following[j] += mass * q
        state = following
    for before, after in zip(curve, curve[1:]):
        assert after <= before, "distance to uniform increased"
    return curve


def mixing_curve(measure, n, step_type, steps):
    """
    Exact TV distance to uniform after h = 0..steps type one or type two
    shuffles of mu, started from the identity.
    """
    return step_mixing_curve(exact_step_distribution(measure, n, step_type), steps)


def mixing_time(curve, epsilon):
    """
    First h whose distance to uniform is at most epsilon, or None.
    """
    for h, distance in enumerate(curve):
        if distance <= epsilon:
            return h
    return None


def require_measure(source):
    from shuffles.measure import QuasiUniformMeasure
    if not isinstance(source, QuasiUniformMeasure):
        raise MeasureError("Exact oracles need a quasi-uniform measure, got %r" % (source, ))
    return source


def exact_source_distribution(source, n):
    """
    Ordering law of a measure or of a mixture of measures on n labels.
    """
    from shuffles.ordering import MeasureMixture
    if isinstance(source, MeasureMixture):
        return PermutationDistribution.mixture(
            n, [(w, exact_ordering_distribution(m, n)) for w, m in source.components])
    return exact_ordering_distribution(require_measure(source), n)
