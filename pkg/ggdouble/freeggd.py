"""The free globularly generated double category at finite truncation.

Terms are enumerated layer by layer (words, then vertical paths over words,
then words over paths, ...) and identified by an oriented rewrite system:

* flatten: nested vertical paths are spliced, one-item paths are their item;
* vertical fusion: adjacent globular squares compose in the bicategory,
  adjacent horizontal identities compose in the decoration;
* identity drop: vertical units disappear from paths;
* reassociate: horizontal words are right combs;
* horizontal fusion: adjacent globular leaves compose horizontally;
* unit drop: horizontal units disappear from words;
* unit slide: ``L * R`` with identity inner edges and an invertible shared
  side ``g`` becomes the path ``L, i_{g^-1}, R``.

Every rule preserves boundaries and shrinks alternation depth, node count or
left depth, so rewriting terminates.
"""
from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from django.conf import settings

from .exceptions import BoundExceeded, TermError
from .terms import Gen, Glob, HId, HWord, TermFactory, VPath, leaves, render_term, sort_key
from .words import enumerate_paths, enumerate_words

logger = logging.getLogger(__name__)


def generators(B):
    return TermFactory(B).generators()


# Layers

@dataclass
class Layers:
    factory: TermFactory
    depth: int
    word_bound: int
    e: dict = field(default_factory=dict)
    f: dict = field(default_factory=dict)

    def words(self, k):
        """E_k."""
        return [t for j in range(1, k + 1) for t in self.e.get(j, ())]

    def paths(self, k):
        """F_k: E_k together with the proper paths of layer at most k."""
        return self.words(k) + [t for j in range(1, k + 1) for t in self.f.get(j, ())]

    def universe(self):
        return self.paths(self.depth)

    def counts(self):
        return {k: {'E': len(self.e.get(k, ())), 'F': len(self.f.get(k, ()))} for k in range(1, self.depth + 1)}


def _size(term):
    return term.size


def build_layers(B, depth=None, word_bound=None, size_bound=None, factory=None):
    """E_1 = words over the generators; F_k = paths over E_k; E_{k+1} = words
    whose leaves are generators or paths of F_k, with at least one new path."""
    depth = depth or settings.GGD_DEPTH
    word_bound = word_bound or settings.GGD_WORD_BOUND
    size_bound = size_bound or settings.GGD_SIZE_BOUND
    factory = factory or TermFactory(B)
    gens = factory.generators()
    layers = Layers(factory, depth, word_bound)
    total = 0

    def admit(k, kind, terms):
        nonlocal total
        total += len(terms)
        if total > size_bound:
            raise BoundExceeded("more than %(bound)s terms at layer %(k)s", code='bound_exceeded',
                                params={'bound': size_bound, 'k': k})
        getattr(layers, kind)[k] = tuple(terms)
        logger.debug("layer %d %s: %d terms", k, kind.upper(), len(terms))

    admit(1, 'e', enumerate_words(gens, word_bound, factory, _size))
    items = gens + [t for t in layers.e[1] if isinstance(t, HWord)]
    admit(1, 'f', enumerate_paths(items, word_bound, factory, _size))
    for k in range(2, depth + 1):
        paths = [t for t in layers.f[k - 1] if isinstance(t, VPath)]
        admit(k, 'e', enumerate_words(
            gens + [t for j in range(1, k) for t in layers.f[j]], word_bound, factory, _size,
            accept=lambda seq, k=k: any(isinstance(t, VPath) and t.layer == k - 1 for t in seq))
            if paths else [])
        items = gens + [t for t in layers.words(k) if isinstance(t, HWord)]
        admit(k, 'f', enumerate_paths(
            items, word_bound, factory, _size,
            accept=lambda seq, k=k: any(isinstance(t, HWord) and t.layer == k for t in seq)))
    logger.info("built layers for %s: depth=%d word_bound=%d terms=%d", B.name, depth, word_bound, total)
    return layers


# Rewriting

class RewriteSystem:
    RULES = ('flatten', 'vertical_fusion', 'identity_drop', 'reassociate', 'horizontal_fusion', 'unit_drop',
             'unit_slide', 'identity_generator')

    def __init__(self, B, factory=None):
        self.B = B
        self.factory = factory or TermFactory(B)
        self.decoration = B.decoration
        self.bicat = B.bicat
        self.base = B.bicat.base
        self._cache = {}

    def unit(self, x):
        """The unit square at object ``x``."""
        return self.factory.glob(self.bicat.id2[self.base.identity[x]])

    def normalize(self, term):
        result = self._cache.get(term)
        if result is None:
            result = self._normalize(term)
            self._cache[term] = result
        return result

    def _normalize(self, term):
        if isinstance(term, Gen):
            generator = term.generator
            if isinstance(generator, HId) and self.decoration.is_identity(generator.mor):
                return self.unit(self.decoration.dom(generator.mor))
            return term
        if isinstance(term, VPath):
            items = []
            for item in term.items:
                n = self.normalize(item)
                items.extend(n.items if isinstance(n, VPath) else [n])
            return self._fuse_vertical(items)
        out = []
        for leaf in term.leaves():
            out.extend(leaves(self.normalize(leaf)))
        return self._fuse_horizontal(out)

    def _fuse_vertical(self, items):
        stack = []
        for item in items:
            self._push_vertical(stack, item)
        return stack[0] if len(stack) == 1 else self.factory.vpath(stack)

    def _push_vertical(self, stack, item):
        is_unit = self.factory.is_vertical_unit
        while True:
            if not stack:
                stack.append(item)
                return
            if is_unit(item):
                return
            if is_unit(stack[-1]):
                stack.pop()
                continue
            fused = self.vertical_pair(stack[-1], item)
            if fused is None:
                stack.append(item)
                return
            stack.pop()
            item = fused

    def vertical_pair(self, upper, lower):
        if not (isinstance(upper, Gen) and isinstance(lower, Gen)):
            return None
        a, b = upper.generator, lower.generator
        if isinstance(a, Glob) and isinstance(b, Glob):
            return self.factory.glob(self.bicat.vcompose2[(b.cell, a.cell)])
        if isinstance(a, HId) and isinstance(b, HId):
            composite = self.decoration.comp(b.mor, a.mor)
            if self.decoration.is_identity(composite):
                return self.unit(self.decoration.dom(composite))
            return self.factory.hid(composite)
        return None

    def _fuse_horizontal(self, items):
        stack = []
        for item in items:
            self._push_horizontal(stack, item)
        return self.factory.word(stack)

    def _push_horizontal(self, stack, item):
        is_unit = self.factory.is_horizontal_unit
        while True:
            if not stack:
                stack.append(item)
                return
            if is_unit(item):
                return
            if is_unit(stack[-1]):
                stack.pop()
                continue
            fused = self.horizontal_pair(stack[-1], item)
            if fused is None:
                stack.append(item)
                return
            stack.pop()
            if isinstance(fused, HWord):
                parts = fused.leaves()
                for part in parts[:-1]:
                    self._push_horizontal(stack, part)
                item = parts[-1]
            else:
                item = fused

    def slide_inverse(self, left, right):
        """``g^-1`` when ``left * right`` can slide into a vertical path."""
        if not (self.base.is_identity(left.bottom) and self.base.is_identity(right.top)):
            return None
        return self.decoration.inverse(left.right)

    def horizontal_pair(self, left, right):
        if isinstance(left, Gen) and isinstance(right, Gen) \
                and isinstance(left.generator, Glob) and isinstance(right.generator, Glob):
            return self.factory.glob(self.bicat.hcompose2[(right.generator.cell, left.generator.cell)])
        inverse = self.slide_inverse(left, right)
        if inverse is None:
            return None
        return self.normalize(self.factory.vpath([left, self.factory.hid(inverse), right]))

    def is_normal(self, term):
        return self.normalize(term) == term

    # Single steps, for the local confluence check

    def one_step_rewrites(self, term):
        f = self.factory
        out = []
        if isinstance(term, Gen):
            generator = term.generator
            if isinstance(generator, HId) and self.decoration.is_identity(generator.mor):
                out.append(('identity_generator', self.unit(self.decoration.dom(generator.mor))))
            return out
        if isinstance(term, VPath):
            items = list(term.items)

            def path(new_items):
                return new_items[0] if len(new_items) == 1 else f.vpath(new_items)

            for i, item in enumerate(items):
                if isinstance(item, VPath):
                    out.append(('flatten', path(items[:i] + list(item.items) + items[i + 1:])))
                if f.is_vertical_unit(item):
                    out.append(('identity_drop', path(items[:i] + items[i + 1:])))
                for rule, reduct in self.one_step_rewrites(item):
                    out.append((rule, path(items[:i] + [reduct] + items[i + 1:])))
            for i in range(len(items) - 1):
                fused = self.vertical_pair(items[i], items[i + 1])
                if fused is not None:
                    out.append(('vertical_fusion', path(items[:i] + [fused] + items[i + 2:])))
            return out

        ls = term.leaves()
        if f.word(ls) != term:
            out.append(('reassociate', f.word(ls)))
        for i, leaf in enumerate(ls):
            if f.is_horizontal_unit(leaf) and len(ls) > 1:
                out.append(('unit_drop', f.word(ls[:i] + ls[i + 1:])))
            for rule, reduct in self.one_step_rewrites(leaf):
                out.append((rule, f.word(ls[:i] + leaves(reduct) + ls[i + 1:])))
        for i in range(len(ls) - 1):
            left, right = ls[i], ls[i + 1]
            if isinstance(left, Gen) and isinstance(right, Gen) \
                    and isinstance(left.generator, Glob) and isinstance(right.generator, Glob):
                fused = f.glob(self.bicat.hcompose2[(right.generator.cell, left.generator.cell)])
                out.append(('horizontal_fusion', f.word(ls[:i] + [fused] + ls[i + 2:])))
            inverse = self.slide_inverse(left, right)
            if inverse is not None:
                slid = f.vpath([left, f.hid(inverse), right])
                out.append(('unit_slide', f.word(ls[:i] + [slid] + ls[i + 2:])))
        return out

    def exchange_neighbours(self, term):
        """Terms reached by swapping two adjacent path segments whose sides are
        all identities at one object, anywhere inside ``term``."""
        f = self.factory
        out = []
        if isinstance(term, VPath):
            items = list(term.items)
            n = len(items)
            for i in range(n):
                for j in range(i + 1, n):
                    if not self._framed(items[i:j]):
                        continue
                    for k in range(j + 1, n + 1):
                        if self._framed(items[j:k]):
                            out.append(f.vpath(items[:i] + items[j:k] + items[i:j] + items[k:]))
            for i, item in enumerate(items):
                for reduct in self.exchange_neighbours(item):
                    out.append(f.vpath(items[:i] + [reduct] + items[i + 1:]))
        elif isinstance(term, HWord):
            ls = term.leaves()
            for i, leaf in enumerate(ls):
                for reduct in self.exchange_neighbours(leaf):
                    out.append(f.word(ls[:i] + [reduct] + ls[i + 1:]))
        return [self.normalize(t) for t in out]

    def _framed(self, segment):
        top, bottom = segment[0].top, segment[-1].bottom
        if top != bottom or not self.base.is_identity(top):
            return False
        left = self.decoration.composite([t.left for t in segment])
        right = self.decoration.composite([t.right for t in segment])
        return left == right and self.decoration.is_identity(left)


def normalize(term, system):
    return system.normalize(term)


@dataclass(frozen=True)
class ConfluenceReport:
    checked: int
    steps: int
    failures: tuple = ()

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {'checked': self.checked, 'steps': self.steps,
                'failures': [{'term': render_term(t), 'rule': r, 'reduct': render_term(u)}
                             for t, r, u in self.failures]}


def critical_pairs_join(system, universe):
    """Every one-step reduct of every term normalizes to the term's own normal
    form, so all critical pairs join on ``universe``."""
    failures, steps = [], 0
    for term in universe:
        target = system.normalize(term)
        for rule, reduct in system.one_step_rewrites(term):
            steps += 1
            if system.normalize(reduct) != target:
                failures.append((term, rule, reduct))
    return ConfluenceReport(len(universe), steps, tuple(failures))


# Complete invariant for (ΩG, 2ΩA)

class WreathInvariant:
    """Evaluation of terms in the wreath product of A by G; squares are pairs
    ``(k, g)`` with ``k: G -> A`` finitely supported."""

    def __init__(self, B):
        groups = B.single_object_groups()
        if groups is None:
            raise TermError("%(b)s is not of the form (ΩG, 2ΩA)", code='not_group_pair', params={'b': B.name})
        self.decoration = B.decoration
        self.bicat = B.bicat
        x = B.decoration.objects[0]
        self.e = B.decoration.identity[x]
        self.zero = B.bicat.id2[B.bicat.base.names[0]]
        self.identity = ((), self.e)

    def add(self, a, b):
        return self.bicat.vcompose2[(a, b)]

    def mul(self, x, y):
        (k1, g1), (k2, g2) = x, y
        k = dict(k1)
        for h, a in k2:
            gh = self.decoration.comp(g1, h)
            k[gh] = self.add(k.get(gh, self.zero), a)
        support = tuple(sorted((h, a) for h, a in k.items() if a != self.zero))
        return support, self.decoration.comp(g1, g2)

    def __call__(self, term):
        if isinstance(term, Gen):
            generator = term.generator
            if isinstance(generator, Glob):
                cell = generator.cell
                return ((((self.e, cell),) if cell != self.zero else ()), self.e)
            return (), generator.mor
        if isinstance(term, VPath):
            value = self.identity
            for item in term.items:
                value = self.mul(self(item), value)
            return value
        ls = term.leaves()
        value = self(ls[0])
        for leaf in ls[1:]:
            slide = ((), self.decoration.inverse(value[1]))
            value = self.mul(self.mul(self(leaf), slide), value)
        return value


def wreath_invariant(B):
    return WreathInvariant(B) if B.single_object_groups() is not None else None


class Decision(str, Enum):
    EQUAL = 'equal'
    DISTINCT = 'distinct'
    UNKNOWN = 'unknown'


def _children(term):
    if isinstance(term, HWord):
        return (term.left_term, term.right_term)
    if isinstance(term, VPath):
        return term.items
    return ()


def subterms(term):
    stack, out = [term], []
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(_children(node))
    return out


class CongruenceClosure:
    """Union-find over terms closed under the two term constructors: words
    with equivalent halves and paths with equivalent items are merged."""

    def __init__(self):
        self.parent = {}
        self.rank = {}
        self.uses = {}
        self.signatures = {}
        self.pending = []

    def find(self, term):
        parent = self.parent
        while parent[term] is not term:
            parent[term] = parent[parent[term]]
            term = parent[term]
        return term

    def add(self, term):
        if term in self.parent:
            return
        children = _children(term)
        for child in children:
            self.add(child)
        self.parent[term] = term
        self.rank[term] = 0
        for child in children:
            self.uses.setdefault(self.find(child), []).append(term)
        self._register(term)

    def _signature(self, term):
        if isinstance(term, HWord):
            return 'h', self.find(term.left_term), self.find(term.right_term)
        if isinstance(term, VPath):
            return ('v',) + tuple(self.find(t) for t in term.items)
        return None

    def _register(self, term):
        signature = self._signature(term)
        if signature is None:
            return
        other = self.signatures.setdefault(signature, term)
        if other is not term:
            self.pending.append((term, other))

    def merge(self, a, b):
        self.add(a)
        self.add(b)
        self.pending.append((a, b))
        while self.pending:
            x, y = self.pending.pop()
            rx, ry = self.find(x), self.find(y)
            if rx is ry:
                continue
            if self.rank[rx] < self.rank[ry]:
                rx, ry = ry, rx
            self.parent[ry] = rx
            if self.rank[rx] == self.rank[ry]:
                self.rank[rx] += 1
            users = self.uses.pop(rx, []) + self.uses.pop(ry, [])
            self.uses[rx] = users
            for user in users:
                self._register(user)

    def equivalent(self, a, b):
        self.add(a)
        self.add(b)
        return self.find(a) is self.find(b)


def generator_cell(term):
    """The 2-cell of a globular generator; distinct cells stay distinct under
    the unit inclusion."""
    if isinstance(term, Gen) and isinstance(term.generator, Glob):
        return term.generator.cell
    return None


def decide_eq(t1, t2, system, effort=None, invariant=None, separators=()):
    """EQUAL, DISTINCT or UNKNOWN for two terms of the same truncation.

    Normal forms are compared first, then the exact invariant of a group pair
    when there is one. ``separators`` are maps out of the free double category
    (for instance a projection onto a strict target); differing images prove
    the terms distinct. Otherwise a congruence closure grows from both normal
    forms through exchange steps until it joins them or ``effort`` terms have
    been explored.
    """
    effort = effort or settings.GGD_DECIDE_EFFORT
    if t1.boundary != t2.boundary:
        return Decision.DISTINCT
    n1, n2 = system.normalize(t1), system.normalize(t2)
    if n1 == n2:
        return Decision.EQUAL
    invariant = invariant or wreath_invariant(system.B)
    if invariant is not None:
        return Decision.EQUAL if invariant(n1) == invariant(n2) else Decision.DISTINCT
    for separate in (generator_cell, *separators):
        a, b = separate(n1), separate(n2)
        if a is not None and b is not None and a != b:
            return Decision.DISTINCT

    closure = CongruenceClosure()

    def admit(term):
        for sub in subterms(term):
            closure.merge(sub, system.normalize(sub))

    admit(n1)
    admit(n2)
    seen = {n1, n2}
    queue = deque([n1, n2])
    while queue and len(seen) < effort:
        current = queue.popleft()
        for neighbour in system.exchange_neighbours(current):
            closure.merge(current, neighbour)
            if neighbour not in seen:
                seen.add(neighbour)
                admit(neighbour)
                queue.append(neighbour)
            if closure.equivalent(n1, n2):
                return Decision.EQUAL
    if closure.equivalent(n1, n2):
        return Decision.EQUAL
    logger.debug("decide_eq gave up after %d terms", len(seen))
    return Decision.UNKNOWN


# Inverses in a decorated 2-groupoid

def vertical_inverse(term, factory):
    bicat, dec = factory.bicat, factory.decoration
    if isinstance(term, Gen):
        if isinstance(term.generator, Glob):
            inverse = bicat.vertical_inverse(term.generator.cell)
            if inverse is None:
                raise TermError("%(c)s has no vertical inverse", code='non_invertible',
                                params={'c': term.generator.cell})
            return factory.glob(inverse)
        inverse = dec.inverse(term.generator.mor)
        if inverse is None:
            raise TermError("%(m)s is not invertible", code='non_invertible', params={'m': term.generator.mor})
        return factory.hid(inverse)
    if isinstance(term, VPath):
        return factory.vpath([vertical_inverse(t, factory) for t in reversed(term.items)])
    return factory.hword(vertical_inverse(term.left_term, factory), vertical_inverse(term.right_term, factory))


def horizontal_inverse(term, factory):
    if isinstance(term, Gen):
        if isinstance(term.generator, Glob):
            inverse = factory.bicat.horizontal_inverse(term.generator.cell)
            if inverse is None:
                raise TermError("%(c)s has no horizontal inverse", code='non_invertible',
                                params={'c': term.generator.cell})
            return factory.glob(inverse)
        return term
    if isinstance(term, VPath):
        return factory.vpath([horizontal_inverse(t, factory) for t in term.items])
    return factory.hword(horizontal_inverse(term.right_term, factory), horizontal_inverse(term.left_term, factory))


def vertical_identity(term, factory):
    return factory.glob(factory.bicat.id2[term.top])


def horizontal_identity(term, factory):
    return factory.hid(term.left)


def as_reduced_word(term):
    """Letters ``('G', g)`` and ``('A', a)`` of a normal form over (ΩG, 2ΩA)."""
    items = term.items if isinstance(term, VPath) else (term,)
    letters = []
    for item in items:
        if not isinstance(item, Gen):
            raise TermError("%(t)s is not a reduced word", code='not_reduced', params={'t': render_term(term)})
        if item.weight == 0:
            continue
        generator = item.generator
        letters.append(('A', generator.cell) if isinstance(generator, Glob) else ('G', generator.mor))
    return tuple(letters)


# Truncation

@dataclass
class FreeTruncation:
    base: object
    depth: int
    word_bound: int
    system: RewriteSystem
    layers: Layers
    normal_forms: tuple
    representatives: tuple

    @property
    def factory(self):
        return self.system.factory

    def vcompose(self, psi, phi):
        """``psi`` below ``phi``."""
        return self.system.normalize(self.factory.vpath([phi, psi]))

    def hcompose(self, psi, phi):
        """``psi`` right of ``phi``."""
        return self.system.normalize(self.factory.hword(phi, psi))

    def vertical_filtration(self):
        """Representatives in V_k (layer at most k) and H_k (word layer at most k)."""
        return [
            {'k': k,
             'H': [render_term(t) for t in self.representatives if t.hlayer <= k],
             'V': [render_term(t) for t in self.representatives if t.layer <= k]}
            for k in range(1, self.depth + 1)
        ]

    def globular_representatives(self):
        dec = self.base.decoration
        return [t for t in self.representatives if dec.is_identity(t.left) and dec.is_identity(t.right)]

    def contains_base(self):
        """The 2-cells of the base are pairwise distinct globular representatives."""
        reps = set(self.representatives)
        images = set()
        for c in self.base.bicat.cells2:
            term = self.factory.glob(c.name)
            if self.system.normalize(term) != term or term not in reps:
                return False
            images.add(term)
        return len(images) == len(self.base.bicat.cells2)

    def well_defined(self, samples=200, seed=None):
        """Sampled check that composing representatives agrees with composing
        arbitrary members of their classes."""
        rng = random.Random(settings.GGD_SEED if seed is None else seed)
        universe = self.layers.universe()
        failures = []
        for _ in range(samples):
            t1, t2 = rng.choice(universe), rng.choice(universe)
            if t1.bottom == t2.top:
                raw = self.system.normalize(self.factory.vpath([t1, t2]))
                if raw != self.vcompose(self.system.normalize(t2), self.system.normalize(t1)):
                    failures.append(('v', t1, t2))
            if t1.right == t2.left:
                raw = self.system.normalize(self.factory.hword(t1, t2))
                if raw != self.hcompose(self.system.normalize(t2), self.system.normalize(t1)):
                    failures.append(('h', t1, t2))
        return failures

    def classes(self, effort=None, separators=()):
        """Representatives grouped by ``decide_eq``; unknown pairs stay apart."""
        invariant = wreath_invariant(self.base)
        groups = []
        for term in self.representatives:
            for group in groups:
                if decide_eq(group[0], term, self.system, effort, invariant, separators) == Decision.EQUAL:
                    group.append(term)
                    break
            else:
                groups.append([term])
        return groups

    def layer_counts(self):
        return {k: {'H': sum(1 for t in self.representatives if t.hlayer <= k),
                    'V': sum(1 for t in self.representatives if t.layer <= k)}
                for k in range(1, self.depth + 1)}

    def to_dict(self):
        return {
            'bounds': {'depth': self.depth, 'word': self.word_bound},
            'enumerated': len(self.layers.universe()),
            'layers': {str(k): v for k, v in self.layers.counts().items()},
            'filtration': {str(k): v for k, v in self.layer_counts().items()},
            'normal_forms': len(self.normal_forms),
            'representatives': [render_term(t) for t in self.representatives],
        }


def free_truncation(B, depth=None, word_bound=None, size_bound=None):
    depth = depth or settings.GGD_DEPTH
    word_bound = word_bound or settings.GGD_WORD_BOUND
    system = RewriteSystem(B)
    layers = build_layers(B, depth, word_bound, size_bound, factory=system.factory)
    normal_forms = sorted({system.normalize(t) for t in layers.universe()}, key=sort_key)
    representatives = tuple(t for t in normal_forms if t.weight <= word_bound)
    logger.info("truncation of %s: %d normal forms, %d representatives",
                B.name, len(normal_forms), len(representatives))
    return FreeTruncation(B, depth, word_bound, system, layers, tuple(normal_forms), representatives)


# Length evidence

@dataclass(frozen=True)
class LengthEvidence:
    consistent_with_length: int | None
    counterexample: str | None
    depth: int
    word_bound: int
    checked: int

    def to_dict(self):
        return {
            'consistent_with_length': self.consistent_with_length
            if self.consistent_with_length is not None else 'not within bound',
            'counterexample': self.counterexample,
            'bounds': {'depth': self.depth, 'word': self.word_bound},
            'checked': self.checked,
        }


def _closure(system, seeds, combine, compatible, bound, size_bound):
    """Normal forms of all chains over ``seeds`` of total weight at most
    ``bound``, each with the raw chain it came from."""
    found = {}
    for seed, raw in seeds.items():
        found.setdefault(seed, raw)
    frontier = list(found)
    steps = list(seeds)
    while frontier:
        fresh = []
        for current in frontier:
            for step in steps:
                if current.weight + step.weight > bound or not compatible(current, step):
                    continue
                raw = combine(found[current], seeds[step])
                n = system.normalize(raw)
                if n.weight <= bound and n not in found:
                    found[n] = raw
                    fresh.append(n)
        if len(found) > size_bound:
            raise BoundExceeded("more than %(bound)s normal forms", code='bound_exceeded',
                                params={'bound': size_bound})
        frontier = fresh
    return found


def free_length_evidence(B, depth=None, word_bound=None, size_bound=None):
    """Least ``k`` such that every enumerated word over V_k normalizes back into
    V_k, searching ``k = 1 .. depth``."""
    depth = depth or settings.GGD_DEPTH
    word_bound = word_bound or settings.GGD_WORD_BOUND
    size_bound = size_bound or settings.GGD_SIZE_BOUND
    system = RewriteSystem(B)
    f = system.factory
    hword = f.hword

    def vpath(upper, lower):
        return f.vpath([upper, lower])

    def side_compatible(a, b):
        return a.right == b.left

    def stack_compatible(a, b):
        return a.bottom == b.top

    gens = {}
    for g in f.generators():
        gens.setdefault(system.normalize(g), g)
    hset = _closure(system, gens, hword, side_compatible, word_bound, size_bound)
    counterexample, checked = None, 0
    for k in range(1, depth + 1):
        vset = _closure(system, hset, vpath, stack_compatible, word_bound, size_bound)
        seeds = {n: n for n in vset}
        words = _closure(system, seeds, hword, side_compatible, word_bound, size_bound)
        checked += len(words)
        escaped = sorted((n for n in words if n.layer > k), key=sort_key)
        if not escaped:
            logger.info("length evidence for %s: %d (word bound %d)", B.name, k, word_bound)
            return LengthEvidence(k, counterexample, depth, word_bound, checked)
        if counterexample is None:
            counterexample = render_term(words[escaped[0]])
        logger.debug("length evidence for %s: k=%d refuted by %s", B.name, k, render_term(escaped[0]))
        hset = words
    return LengthEvidence(None, counterexample, depth, word_bound, checked)
