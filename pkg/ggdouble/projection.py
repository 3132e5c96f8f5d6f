"""The canonical double projection from the free truncation onto γC.

``project`` evaluates terms by structural recursion; the audits check on an
enumerated universe what holds on all of the free double category.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import reduce

from .doublecat import gamma, h_star, vertical_filtration
from .exceptions import FunctorError, HypothesisError, ProjectionError, TermError
from .freeggd import RewriteSystem, horizontal_inverse, vertical_inverse
from .terms import Gen, Glob, HId, HWord, VPath, render_term

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectionContext:
    B: object
    C: object
    substituted: bool
    anchoring: dict
    system: RewriteSystem = field(compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def factory(self):
        return self.system.factory


def default_anchoring(B, C):
    anchoring = {Glob(c.name): c.name for c in B.bicat.cells2}
    anchoring.update({HId(f): C.hid[f] for f in B.decoration.names})
    return anchoring


def projection_context(B, C, anchoring=None):
    """Context for ``π^C``; ``C`` is replaced by its globularly generated piece."""
    piece = gamma(C)
    if h_star(C) != B and h_star(piece) != B:
        raise HypothesisError("the decorated horizontalization of %(c)s is not %(b)s", code='hypothesis',
                              params={'c': C.name, 'b': B.name})
    substituted = len(piece.squares) < len(C.squares)
    if substituted:
        logger.info("projection target %s replaced by its globularly generated piece", C.name)
    return ProjectionContext(B, piece, substituted, anchoring or default_anchoring(B, piece), RewriteSystem(B))


def swap_anchors(ctx, first, second):
    """Mutation control: exchange the images of two generators."""
    anchoring = dict(ctx.anchoring)
    anchoring[first], anchoring[second] = anchoring[second], anchoring[first]
    return replace(ctx, anchoring=anchoring, _cache={})


def left_fold(C, names):
    """Horizontal composite of squares listed left to right."""
    def step(acc, name):
        try:
            return C.hcomp[(name, acc)]
        except KeyError:
            raise ProjectionError("%(r)s does not compose right of %(l)s", code='incompatible',
                                  params={'l': acc, 'r': name}) from None
    return reduce(step, names[1:], names[0])


def q_eval(C, word):
    """Paste a word of squares given as a nested pair tree of names."""
    def walk(node):
        if isinstance(node, str):
            return node, [node]
        left, left_leaves = walk(node[0])
        right, right_leaves = walk(node[1])
        try:
            return C.hcomp[(right, left)], left_leaves + right_leaves
        except KeyError:
            raise ProjectionError("%(r)s does not compose right of %(l)s", code='incompatible',
                                  params={'l': left, 'r': right}) from None

    result, names = walk(word)
    if result != left_fold(C, names):
        raise ProjectionError("composite of %(w)s depends on the bracketing", code='non_strict',
                              params={'w': names})
    return result


def project(ctx, term):
    cached = ctx._cache.get(term)
    if cached is not None:
        return cached
    C = ctx.C
    if isinstance(term, Gen):
        try:
            result = ctx.anchoring[term.generator]
        except KeyError:
            raise ProjectionError("generator %(g)s is not anchored", code='anchoring',
                                  params={'g': render_term(term)}) from None
    elif isinstance(term, HWord):
        def tree(node):
            if isinstance(node, HWord):
                return (tree(node.left_term), tree(node.right_term))
            return project(ctx, node)
        result = q_eval(C, tree(term))
    else:
        result = project(ctx, term.items[0])
        for item in term.items[1:]:
            lower = project(ctx, item)
            try:
                result = C.vcomp[(lower, result)]
            except KeyError:
                raise ProjectionError("%(l)s does not compose below %(u)s", code='incompatible',
                                      params={'u': result, 'l': lower}) from None
    ctx._cache[term] = result
    return result


@dataclass
class AuditReport:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.violations

    def add(self, law, *witness):
        self.violations.append({'law': law, 'witness': [str(w) for w in witness]})

    def to_dict(self):
        return {'audit': self.name, 'passed': self.passed, 'checked': self.checked,
                'violations': self.violations, **self.details}


def _boundary(C, name):
    s = C.square(name)
    return s.top, s.bottom, s.left, s.right


def audit_strictness(ctx, truncation, kmax=None):
    """Boundaries on every enumerated term, compatibility with rewriting,
    compositions of representatives, identities, and image inside the
    filtration layer of each term."""
    C, system, f = ctx.C, ctx.system, ctx.factory
    report = AuditReport('strictness')
    universe = truncation.layers.universe()
    for term in universe:
        report.checked += 1
        try:
            image = project(ctx, term)
        except ProjectionError as exc:
            report.add('projection', render_term(term), exc.code)
            continue
        if _boundary(C, image) != (term.top, term.bottom, term.left, term.right):
            report.add('boundary', render_term(term), image)
        if project(ctx, system.normalize(term)) != image:
            report.add('rewriting', render_term(term), image)
    reps = truncation.representatives
    for x in reps:
        for y in reps:
            if x.bottom == y.top:
                report.checked += 1
                if project(ctx, truncation.vcompose(y, x)) != C.vcomp[(project(ctx, y), project(ctx, x))]:
                    report.add('vertical composition', render_term(x), render_term(y))
            if x.right == y.left:
                report.checked += 1
                if project(ctx, truncation.hcompose(y, x)) != C.hcomp[(project(ctx, y), project(ctx, x))]:
                    report.add('horizontal composition', render_term(x), render_term(y))
    for a, cell in ctx.B.bicat.id2.items():
        if project(ctx, f.glob(cell)) != C.vid[a]:
            report.add('vertical identity', a)
    for m in ctx.B.decoration.names:
        if project(ctx, f.hid(m)) != C.hid[m]:
            report.add('horizontal identity', m)
    filtration = vertical_filtration(C, kmax)
    for term in reps:
        image = project(ctx, term)
        if image not in filtration.vset(term.layer) or image not in filtration.hset(term.hlayer):
            report.add('filtration', render_term(term), image)
    if report.violations:
        logger.warning("strictness audit: %d violations", len(report.violations))
    return report


def audit_surjectivity(ctx, truncation, kmax=None):
    """For each level k, the image of the free H_k against Hset_k of γC."""
    C = ctx.C
    filtration = vertical_filtration(C, kmax)
    universe = truncation.layers.universe()
    report = AuditReport('surjectivity')
    levels, covered = [], 0
    for k in range(1, truncation.depth + 1):
        image = {project(ctx, t) for t in universe if t.hlayer <= k}
        expected = filtration.hset(k)
        missing, extra = sorted(expected - image), sorted(image - expected)
        report.checked += len(expected)
        levels.append({'k': k, 'expected': len(expected), 'reached': len(image & expected),
                       'missing': missing, 'extra': extra})
        for name in missing:
            report.add('unreached', name, k)
        for name in extra:
            report.add('outside layer', name, k)
        if not missing and not extra and covered == k - 1:
            covered = k
    report.details = {'levels': levels, 'surjective_up_to': covered}
    return report


def fold_evaluator(ctx, overrides=None):
    """An evaluation of terms built independently of ``project``: normal form
    first, then paths folded from the bottom and words from the right."""
    C, system = ctx.C, ctx.system
    anchoring = dict(ctx.anchoring)
    anchoring.update(overrides or {})

    def evaluate(term):
        term = system.normalize(term)
        return _evaluate(term)

    def _evaluate(term):
        if isinstance(term, Gen):
            return anchoring[term.generator]
        if isinstance(term, VPath):
            result = _evaluate(term.items[-1])
            for item in reversed(term.items[:-1]):
                result = C.vcomp[(result, _evaluate(item))]
            return result
        ls = term.leaves()
        result = _evaluate(ls[-1])
        for leaf in reversed(ls[:-1]):
            result = C.hcomp[(result, _evaluate(leaf))]
        return result

    return evaluate


@dataclass(frozen=True)
class UniquenessResult:
    verdict: str
    witness: str | None
    checked: int

    @property
    def equal(self):
        return self.verdict == 'equal'

    def to_dict(self):
        return {'verdict': self.verdict, 'witness': self.witness, 'checked': self.checked,
                'scope': 'enumerated universe'}


def _non_strict_term(ctx, functor, universe):
    """First term where ``functor`` breaks a boundary or fails to send a
    composite to the composite of the images of its parts."""
    C = ctx.C
    for term in universe:
        try:
            image = functor(term)
            if _boundary(C, image) != (term.top, term.bottom, term.left, term.right):
                return term
            if isinstance(term, HWord):
                expected = C.hcomp.get((functor(term.right_term), functor(term.left_term)))
            elif isinstance(term, VPath):
                expected = functor(term.items[0])
                for item in term.items[1:]:
                    expected = C.vcomp.get((functor(item), expected))
            else:
                continue
        except (KeyError, ProjectionError, TermError):
            return term
        if image != expected:
            return term
    return None


def audit_uniqueness(ctx, functor, universe):
    """Compare a strict functor out of the truncation with ``project``:
    generators first, then every enumerated term. A functor that agrees on
    generators but is not strict raises ``FunctorError``."""
    checked = 0
    for g in ctx.factory.generators():
        checked += 1
        try:
            image = functor(g)
        except (KeyError, ProjectionError, TermError):
            image = None
        if image != project(ctx, g):
            return UniquenessResult('differs', render_term(g), checked)
    broken = _non_strict_term(ctx, functor, universe)
    if broken is not None:
        raise FunctorError("the functor is not strict at %(t)s", code='not_strict',
                           params={'t': render_term(broken)})
    for term in universe:
        checked += 1
        if functor(term) != project(ctx, term):
            return UniquenessResult('differs', render_term(term), checked)
    return UniquenessResult('equal', None, checked)


def h_star_restriction_check(ctx):
    """``π`` is the identity on the 2-cells and on the decoration."""
    f = ctx.factory
    for c in ctx.B.bicat.cells2:
        if project(ctx, f.glob(c.name)) != c.name:
            return False
    for m in ctx.B.decoration.names:
        image = project(ctx, f.hid(m))
        s = ctx.C.square(image)
        if image != ctx.C.hid[m] or s.left != m or s.right != m:
            return False
    return True


def audit_inverses(ctx, terms):
    """Images of free inverses are inverses in γC."""
    C, f = ctx.C, ctx.factory
    report = AuditReport('inverses')
    for term in terms:
        report.checked += 1
        s = project(ctx, term)
        square = C.square(s)
        v = project(ctx, vertical_inverse(term, f))
        h = project(ctx, horizontal_inverse(term, f))
        if C.vcomp.get((v, s)) != C.vid[square.top] or C.vcomp.get((s, v)) != C.vid[square.bottom]:
            report.add('vertical inverse', render_term(term))
        if C.hcomp.get((h, s)) != C.hid[square.left] or C.hcomp.get((s, h)) != C.hid[square.right]:
            report.add('horizontal inverse', render_term(term))
    return report
