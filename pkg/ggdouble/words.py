"""Compatible words and their parenthesizations."""
from __future__ import annotations

import math
from collections import defaultdict

from .exceptions import TermError
from .terms import HWord, leaves


def catalan(n):
    """Number of binary bracketings of ``n + 1`` leaves."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.comb(2 * n, n) // (n + 1)


def sequences(items, bound, out_key, in_key, size=None, min_length=1):
    """Chains ``t1, t2, ...`` of items with ``out_key(t_i) == in_key(t_{i+1})``
    and total size at most ``bound``."""
    size = size or (lambda t: 1)
    by_key = defaultdict(list)
    for item in items:
        by_key[in_key(item)].append(item)
    for bucket in by_key.values():
        bucket.sort(key=size)

    def extend(chain, used):
        if len(chain) >= min_length:
            yield tuple(chain)
        for item in by_key.get(out_key(chain[-1]), ()):
            cost = size(item)
            if used + cost > bound:
                break
            chain.append(item)
            yield from extend(chain, used + cost)
            chain.pop()

    for item in items:
        if size(item) <= bound:
            yield from extend([item], size(item))


def parenthesizations(seq, factory):
    """Every binary tree with leaf sequence ``seq``."""
    memo = {}

    def trees(i, j):
        if (i, j) in memo:
            return memo[(i, j)]
        if i == j:
            result = [seq[i]]
        else:
            result = [factory.hword(left, right)
                      for k in range(i, j)
                      for left in trees(i, k)
                      for right in trees(k + 1, j)]
        memo[(i, j)] = result
        return result

    return trees(0, len(seq) - 1)


def enumerate_words(X, bound, factory, size=None, accept=None):
    """All horizontally compatible words over ``X`` with at most ``bound``
    leaves (or total ``size``), in every parenthesization."""
    words = []
    for seq in sequences(sorted(X, key=str), bound, lambda t: t.right, lambda t: t.left, size):
        if accept is not None and not accept(seq):
            continue
        words.extend(parenthesizations(seq, factory))
    return words


def enumerate_paths(X, bound, factory, size=None, accept=None):
    """Vertical paths of length at least two over ``X``."""
    paths = []
    for seq in sequences(sorted(X, key=str), bound, lambda t: t.bottom, lambda t: t.top, size, min_length=2):
        if accept is not None and not accept(seq):
            continue
        paths.append(factory.vpath(seq))
    return paths


def shape(word):
    """Bracketing of a word with leaves replaced by their position."""
    counter = iter(range(len(leaves(word))))

    def walk(node):
        if isinstance(node, HWord):
            return (walk(node.left_term), walk(node.right_term))
        return next(counter)

    return walk(word)


def mu(psi, phi, word, factory):
    """Evaluate ``psi`` leafwise on ``word``, keeping the bracketing.

    ``phi`` maps vertical morphisms; every leaf image must have the sides
    ``phi`` prescribes."""
    def walk(node):
        if isinstance(node, HWord):
            return factory.hword(walk(node.left_term), walk(node.right_term))
        image = psi(node)
        if image.left != phi(node.left) or image.right != phi(node.right):
            raise TermError("leaf %(leaf)s breaks the intertwining", code='intertwining',
                            params={'leaf': str(node)})
        return image

    return walk(word)
