# -*- coding: utf-8 -*-
#
# Permutations of {1..n} in one-line notation.
#
# A permutation is a tuple ``p`` with ``p[k - 1]`` the image of k. When
# ``p`` describes the state of a pack, ``p[k - 1]`` is the position of
# the card labelled k, and card k lies below card k' iff p(k) < p(k').
# A shuffle acts on positions, so it moves the pack from rho to
# compose(sigma, rho), i.e. (sigma rho)(k) = sigma(rho(k)).
#

import itertools


def identity(n):
    return tuple(range(1, n + 1))


def all_permutations(n):
    """
    Every permutation of {1..n}, in lexicographic order of the one-line
    notation.
    """
    return list(itertools.permutations(range(1, n + 1)))


def compose(sigma, rho):
    return tuple(sigma[r - 1] for r in rho)


def inverse(p):
    result = [0] * len(p)
    for k, image in enumerate(p, 1):
        result[image - 1] = k
    return tuple(result)


def from_order(order):
    """
    Turn a bottom-to-top list of the cards 1..n into the permutation
    giving each card its position.
    """
    result = [0] * len(order)
    for position, card in enumerate(order, 1):
        result[card - 1] = position
    return tuple(result)


def ranks(keys):
    """
    Positions (1-based) of the items of ``keys`` once sorted ascending.
    Keys must be distinct.
    """
    order = sorted(range(len(keys)), key=keys.__getitem__)
    return from_order([i + 1 for i in order])


def restrict(p, m):
    """
    The ordering of the cards 1..m induced by ``p``, relabelled as a
    permutation of {1..m}.
    """
    return ranks(p[:m])


def to_string(p):
    if len(p) <= 9:
        return "".join(str(i) for i in p)
    return ",".join(str(i) for i in p)


def parse(s):
    s = s.strip()
    if "," in s:
        return tuple(int(i) for i in s.split(","))
    return tuple(int(c) for c in s)


def is_permutation(p):
    return sorted(p) == list(range(1, len(p) + 1))
