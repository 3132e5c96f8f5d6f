"""Free double functors, the unit and counit of ``Q ⊣ H*`` on globularly
generated double categories, and the checks that tie them together.

Everything is evaluated on the enumerated universe of a free truncation;
reports carry the bounds they were certified at.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field

from django.conf import settings

from .doublecat import double_functors, h_star, h_star_functor, is_globularly_generated
from .exceptions import FunctorError, ProjectionError, TermError
from .freeggd import RewriteSystem, free_truncation
from .presentations import compose_pseudofunctors, identity_pseudofunctor
from .projection import AuditReport, project, projection_context
from .terms import Gen, Glob, HWord, render_term
from .validation import validate

logger = logging.getLogger(__name__)


def _bounds(truncation):
    return {'depth': truncation.depth, 'word': truncation.word_bound}


# Free functors

@dataclass
class FreeDoubleFunctor:
    """``Q_G``: generators go to generators of the target, words and paths are
    mapped leafwise and the result is normalized in the target."""
    G: object
    source_system: RewriteSystem
    target_system: RewriteSystem
    _cache: dict = field(default_factory=dict, repr=False)

    def on_generator(self, generator):
        f = self.target_system.factory
        if isinstance(generator, Glob):
            return f.glob(self.G.on_cells2[generator.cell])
        return f.hid(self.G.on_morphisms[generator.mor])

    def raw(self, term):
        """Leafwise image, before normalization."""
        f = self.target_system.factory
        try:
            if isinstance(term, Gen):
                return self.on_generator(term.generator)
            if isinstance(term, HWord):
                return f.hword(self.raw(term.left_term), self.raw(term.right_term))
            return f.vpath([self.raw(t) for t in term.items])
        except TermError as exc:
            raise FunctorError("%(g)s does not preserve the boundary of %(t)s", code='boundary_mismatch',
                               params={'g': self.G.name, 't': render_term(term)}) from exc

    def __call__(self, term):
        result = self._cache.get(term)
        if result is None:
            result = self.target_system.normalize(self.raw(term))
            self._cache[term] = result
        return result


def free_double_functor(G, source_system=None, target_system=None):
    report = validate(G)
    if not report.ok:
        raise FunctorError("%(g)s is not a decorated pseudofunctor: %(laws)s", code='boundary_mismatch',
                           params={'g': G.name, 'laws': ', '.join(report.laws())})
    return FreeDoubleFunctor(G, source_system or RewriteSystem(G.source),
                             target_system or RewriteSystem(G.target))


def compose_free_double_functors(Q2, Q1):
    """``Q_{G2∘G1}`` over the systems of ``Q1`` and ``Q2``."""
    if Q1.G.target != Q2.G.source:
        raise FunctorError("codomain of %(g1)s is not the domain of %(g2)s", code='boundary_mismatch',
                           params={'g1': Q1.G.name, 'g2': Q2.G.name})
    return FreeDoubleFunctor(compose_pseudofunctors(Q2.G, Q1.G), Q1.source_system, Q2.target_system)


def functoriality_check(G1, G2, universe):
    """``Q_id = id`` and ``Q_{G2∘G1} = Q_{G2}∘Q_{G1}`` term by term."""
    report = AuditReport('functoriality')
    Q1 = free_double_functor(G1)
    Q2 = free_double_functor(G2, Q1.target_system)
    Q21 = compose_free_double_functors(Q2, Q1)
    identity = free_double_functor(identity_pseudofunctor(G1.source), Q1.source_system, Q1.source_system)
    for term in universe:
        report.checked += 1
        if identity(term) != Q1.source_system.normalize(term):
            report.add('identity', render_term(term))
        if Q21(term) != Q2(Q1(term)):
            report.add('composition', render_term(term), render_term(Q21(term)), render_term(Q2(Q1(term))))
    return report


# Unit and counit

@dataclass
class UnitInclusion:
    """``j^B``: identity on objects, 1-cells and vertical morphisms; a 2-cell
    goes to its globular representative in the truncation."""
    B: object
    truncation: object
    on_cells2: dict

    def __call__(self, cell):
        return self.on_cells2[cell]

    def is_injective(self):
        return len(set(self.on_cells2.values())) == len(self.on_cells2)

    def perturbed(self, first, second):
        """Mutation control: exchange the images of two 2-cells."""
        cells = dict(self.on_cells2)
        cells[first], cells[second] = cells[second], cells[first]
        return UnitInclusion(self.B, self.truncation, cells)


def unit(B, truncation=None):
    truncation = truncation or free_truncation(B)
    system = truncation.system
    cells = {c.name: system.normalize(system.factory.glob(c.name)) for c in B.bicat.cells2}
    return UnitInclusion(B, truncation, cells)


@dataclass
class Counit:
    """``π^C``, the component of the counit at ``C``."""
    context: object

    @property
    def C(self):
        return self.context.C

    def __call__(self, term):
        return project(self.context, term)


def counit(C, anchoring=None):
    return Counit(projection_context(h_star(C), C, anchoring))


def naturality_check(T, truncation=None):
    """``T ∘ π^C = π^{C'} ∘ Q_{H*T}`` on the enumerated universe over ``H*C``."""
    source, target = counit(T.source), counit(T.target)
    QT = free_double_functor(h_star_functor(T), source.context.system, target.context.system)
    truncation = truncation or free_truncation(h_star(T.source))
    report = AuditReport('naturality')
    for term in truncation.layers.universe():
        report.checked += 1
        try:
            left, right = T(source(term)), target(QT(term))
        except (KeyError, ProjectionError) as exc:
            report.add('evaluation', render_term(term), getattr(exc, 'code', 'unmapped'))
            continue
        if left != right:
            report.add('naturality', render_term(term), left, right)
    report.details = {'functor': T.name, 'bounds': _bounds(truncation)}
    if report.violations:
        logger.warning("naturality of the counit fails for %s", T.name)
    return report


# Triangle identities

@dataclass
class TriangleReport:
    first: AuditReport
    second: AuditReport
    bounds: dict

    @property
    def passed(self):
        return self.first.passed and self.second.passed

    def to_dict(self):
        return {
            'triangle1': 'pass' if self.first.passed else 'fail',
            'triangle2': 'pass' if self.second.passed else 'fail',
            'witnesses': {'triangle1': self.first.violations, 'triangle2': self.second.violations},
            'checked': {'triangle1': self.first.checked, 'triangle2': self.second.checked},
            'bounds': self.bounds,
        }


def _first_triangle(ctx, j):
    """``H*π^C ∘ j_{H*C}`` is the identity of ``H*C``."""
    report = AuditReport('triangle1')
    f = ctx.factory
    for c in ctx.B.bicat.cells2:
        report.checked += 1
        try:
            image = project(ctx, j(c.name))
        except ProjectionError:
            image = None
        if image != c.name:
            report.add('2-cell', c.name, image)
    for m in ctx.B.decoration.names:
        report.checked += 1
        square = ctx.C.square(project(ctx, f.hid(m)))
        if square.left != m or square.right != m:
            report.add('vertical morphism', m)
    return report


def _second_triangle(truncation, j):
    """``π^{Q_B} ∘ Q_{j_B}`` is the identity: re-evaluating a term with its
    generators replaced by their representatives gives its own class."""
    system = truncation.system
    report = AuditReport('triangle2')

    def evaluate(term):
        if isinstance(term, Gen):
            if isinstance(term.generator, Glob):
                return j(term.generator.cell)
            return system.normalize(term)
        if isinstance(term, HWord):
            return truncation.hcompose(evaluate(term.right_term), evaluate(term.left_term))
        result = evaluate(term.items[0])
        for item in term.items[1:]:
            result = truncation.vcompose(evaluate(item), result)
        return result

    for term in truncation.layers.universe():
        report.checked += 1
        try:
            image = evaluate(term)
        except TermError:
            report.add('composition', render_term(term))
            continue
        if image != system.normalize(term):
            report.add('identity', render_term(term), render_term(image))
    return report


def triangle_identities(B, C, truncation=None, j=None):
    truncation = truncation or free_truncation(B)
    j = j or unit(B, truncation)
    ctx = projection_context(B, C)
    first, second = _first_triangle(ctx, j), _second_triangle(truncation, j)
    logger.info("triangle identities for %s: %s/%s", B.name,
                'pass' if first.passed else 'fail', 'pass' if second.passed else 'fail')
    return TriangleReport(first, second, _bounds(truncation))


# Faithfulness

@dataclass(frozen=True)
class FaithfulnessReport:
    status: str
    mode: str
    functors: int
    witness: tuple = ()
    seed: int | None = None

    @property
    def passed(self):
        return self.status != 'counterexample'

    def to_dict(self):
        return {'status': self.status, 'mode': self.mode, 'functors': self.functors,
                'witness': list(self.witness), 'seed': self.seed}


def _h_star_key(T):
    H = h_star_functor(T)
    return tuple(tuple(m.items()) for m in (H.on_objects, H.on_morphisms, H.on_cells1, H.on_cells2))


def _first_collision(functors):
    seen, count = {}, 0
    for T in functors:
        count += 1
        key = _h_star_key(T)
        other = seen.setdefault(key, T)
        if other.on_squares != T.on_squares:
            differing = sorted(s for s in T.on_squares if T.on_squares[s] != other.on_squares[s])
            return count, differing
    return count, None


def _pair_collision(pairs):
    count = 0
    for first, second in pairs:
        count += 1
        if _h_star_key(first) == _h_star_key(second) and first.on_squares != second.on_squares:
            return count, sorted(s for s in first.on_squares if first.on_squares[s] != second.on_squares[s])
    return count, None


def faithfulness_probe(C, D, pairs=None, threshold=None, samples=200, seed=None):
    """Two double functors ``C -> D`` with the same ``H*`` must agree on every
    square. Without explicit ``pairs`` all functors are enumerated when ``C``
    is small, otherwise a seeded sample is drawn."""
    threshold = threshold or settings.GGD_FAITHFUL_THRESHOLD
    seed = settings.GGD_SEED if seed is None else seed
    if pairs is not None:
        mode, report_seed = 'pairs', None
        count, witness = _pair_collision(pairs)
    elif len(C.squares) <= threshold:
        mode, functors, report_seed = 'exhaustive', double_functors(C, D), None
    else:
        rng = random.Random(seed)
        mode, report_seed = 'sampled', seed
        functors = itertools.islice(double_functors(C, D, rng=rng), samples)
    if pairs is None:
        count, witness = _first_collision(functors)
    if witness is None:
        return FaithfulnessReport('faithful', mode, count, (), report_seed)
    if not is_globularly_generated(C):
        logger.info("%s is not globularly generated: collision is out of hypothesis", C.name)
        return FaithfulnessReport('out-of-hypothesis', mode, count, tuple(witness), report_seed)
    logger.warning("faithfulness counterexample on %s: %s", C.name, witness)
    return FaithfulnessReport('counterexample', mode, count, tuple(witness), report_seed)
