from django.test import SimpleTestCase

from ggdouble.exceptions import FunctorError, HypothesisError, ProjectionError
from ggdouble.projection import (
    audit_inverses, audit_strictness, audit_surjectivity, audit_uniqueness, fold_evaluator,
    h_star_restriction_check, left_fold, project, projection_context, q_eval, swap_anchors,
)
from ggdouble.terms import Glob, parse_term

from .utils import PAIRS, corpus_path, load, pair, truncation

AUDITED = ('z2_z3', 'z3_z2', 'arrow_squares', 'labelled')


class ContextTests(SimpleTestCase):
    def test_hypothesis_failure(self):
        B = load('omega_z2_2omega_z3.dcat')
        with self.assertRaises(HypothesisError):
            projection_context(B, load('arrow_squares.dcat'))

    def test_gamma_substitution(self):
        ctx = projection_context(*pair('arrow_squares'))
        self.assertTrue(ctx.substituted)
        self.assertEqual(len(ctx.C.squares), 4)
        self.assertFalse(projection_context(*pair('z2_z3')).substituted)


class EvaluationTests(SimpleTestCase):
    def setUp(self):
        self.ctx = projection_context(*pair('z2_z3'))
        self.f = self.ctx.factory

    def test_generators(self):
        self.assertEqual(project(self.ctx, self.f.glob('2')), '2')
        self.assertEqual(project(self.ctx, self.f.hid('g')), '0@g')

    def test_paths_and_words(self):
        term = parse_term(corpus_path('mixed.term').read_text(), self.f)
        # 1 + 2 + 1 in Z3, decorated once by g
        self.assertEqual(project(self.ctx, term), '1@g')
        slide = parse_term(corpus_path('unit_slide.term').read_text(), self.f)
        self.assertEqual(project(self.ctx, slide), project(self.ctx, self.ctx.system.normalize(slide)))

    def test_word_evaluation_is_bracketing_free(self):
        C = self.ctx.C
        self.assertEqual(q_eval(C, (('1', '2'), '1')), q_eval(C, ('1', ('2', '1'))))
        self.assertEqual(left_fold(C, ['1', '1', '1']), '0')

    def test_incompatible_word(self):
        with self.assertRaises(ProjectionError) as ctx:
            left_fold(self.ctx.C, ['1', '0@g'])
        self.assertEqual(ctx.exception.code, 'incompatible')

    def test_restriction_to_the_base(self):
        for key in AUDITED:
            with self.subTest(pair=key):
                self.assertTrue(h_star_restriction_check(projection_context(*pair(key))))


class AuditTests(SimpleTestCase):
    def test_strictness(self):
        for key in AUDITED:
            with self.subTest(pair=key):
                ctx = projection_context(*pair(key))
                report = audit_strictness(ctx, truncation(key))
                self.assertTrue(report.passed, report.violations[:3])
                self.assertGreater(report.checked, 0)

    def test_rewriting_compatibility_on_the_whole_universe(self):
        ctx = projection_context(*pair('z2_z3'))
        universe = truncation('z2_z3').layers.universe()
        self.assertGreaterEqual(len(universe), 1000)
        mismatched = [t for t in universe if project(ctx, t) != project(ctx, ctx.system.normalize(t))]
        self.assertEqual(mismatched, [])

    def test_surjectivity(self):
        ctx = projection_context(*pair('z2_z3'))
        report = audit_surjectivity(ctx, truncation('z2_z3'))
        self.assertTrue(report.passed)
        self.assertEqual(report.details['surjective_up_to'], 2)
        self.assertEqual([level['expected'] for level in report.details['levels']], [4, 6])

    def test_surjectivity_on_every_pair(self):
        for key in PAIRS:
            with self.subTest(pair=key):
                ctx = projection_context(*pair(key))
                report = audit_surjectivity(ctx, truncation(key))
                self.assertTrue(report.passed, report.violations[:3])
                self.assertEqual(report.details['surjective_up_to'], 2)

    def test_uniqueness(self):
        for key in AUDITED:
            with self.subTest(pair=key):
                ctx = projection_context(*pair(key))
                result = audit_uniqueness(ctx, fold_evaluator(ctx), truncation(key).layers.universe())
                self.assertTrue(result.equal, result.witness)
                self.assertEqual(result.to_dict()['scope'], 'enumerated universe')

    def test_uniqueness_detects_a_different_functor(self):
        ctx = projection_context(*pair('z2_z3'))
        other = fold_evaluator(ctx, overrides={Glob('1'): '2', Glob('2'): '1'})
        result = audit_uniqueness(ctx, other, truncation('z2_z3').layers.universe())
        self.assertEqual(result.verdict, 'differs')
        self.assertEqual(result.witness, '(g 1)')

    def test_uniqueness_rejects_a_functor_that_is_not_strict(self):
        ctx = projection_context(*pair('z2_z3'))
        f = ctx.factory
        bent = f.vpath([f.glob('1'), f.glob('1')])

        def functor(term):
            return '0' if term == bent else project(ctx, term)

        universe = [bent] + list(truncation('z2_z3').layers.universe())
        with self.assertRaises(FunctorError) as raised:
            audit_uniqueness(ctx, functor, universe)
        self.assertEqual(raised.exception.code, 'not_strict')
        self.assertEqual(raised.exception.params['t'], '(v (g 1) (g 1))')

    def test_swapped_generators_break_strictness(self):
        ctx = swap_anchors(projection_context(*pair('z2_z3')), Glob('0'), Glob('1'))
        report = audit_strictness(ctx, truncation('z2_z3'))
        self.assertFalse(report.passed)
        self.assertIn('vertical composition', {v['law'] for v in report.violations})

    def test_automorphic_swap_is_strict_but_not_the_identity_on_the_base(self):
        ctx = swap_anchors(projection_context(*pair('z2_z3')), Glob('1'), Glob('2'))
        self.assertTrue(audit_strictness(ctx, truncation('z2_z3')).passed)
        self.assertFalse(h_star_restriction_check(ctx))

    def test_inverses(self):
        for key in ('z2_z3', 'z3_z2'):
            with self.subTest(pair=key):
                ctx = projection_context(*pair(key))
                report = audit_inverses(ctx, truncation(key).representatives)
                self.assertTrue(report.passed, report.violations[:3])
