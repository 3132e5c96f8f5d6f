import itertools

from django.test import SimpleTestCase
from hypothesis import given, settings as hsettings, strategies as st

from ggdouble.doublecat import length
from ggdouble.exceptions import BoundExceeded, ParseError, TermError
from ggdouble.freeggd import (
    CongruenceClosure, Decision, RewriteSystem, as_reduced_word, build_layers, critical_pairs_join, decide_eq,
    free_length_evidence, free_truncation, horizontal_identity, horizontal_inverse, vertical_identity,
    vertical_inverse, wreath_invariant,
)
from ggdouble.projection import project, projection_context
from ggdouble.terms import HWord, VPath, parse_term, render_term

from .utils import PAIRS, corpus_path, load, pair, reduced_words, truncation


class TermTests(SimpleTestCase):
    def setUp(self):
        self.system = RewriteSystem(load('omega_z2_2omega_z3.dcat'))
        self.f = self.system.factory

    def test_boundaries(self):
        f = self.f
        path = f.vpath([f.glob('1'), f.hid('g')])
        self.assertEqual((path.top, path.bottom, path.left, path.right), ('i', 'i', 'g', 'g'))
        self.assertEqual(path.weight, 2)
        self.assertEqual(path.hlayer, 2)
        self.assertEqual(f.glob('0').weight, 0)

    def test_short_path(self):
        with self.assertRaises(TermError) as ctx:
            self.f.vpath([self.f.glob('1')])
        self.assertEqual(ctx.exception.code, 'short_path')

    def test_incompatible_word(self):
        with self.assertRaises(TermError) as ctx:
            self.f.hword(self.f.glob('1'), self.f.hid('g'))
        self.assertEqual(ctx.exception.code, 'incompatible')

    def test_parse_and_render(self):
        text = corpus_path('unit_slide.term').read_text()
        term = parse_term(text, self.f)
        self.assertIsInstance(term, HWord)
        self.assertEqual(parse_term(render_term(term), self.f), term)
        self.assertEqual(render_term(term), '(h (v (g 1) (id g)) (v (id g) (g 2)))')

    def test_parse_errors(self):
        for text in ('(g 1', '(q 1)', '(h (g 1))', '(g 1) (g 2)'):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_term(text, self.f)


class RewriteTests(SimpleTestCase):
    def setUp(self):
        self.system = RewriteSystem(load('omega_z2_2omega_z3.dcat'))
        self.f = self.system.factory

    def test_vertical_fusion_and_identity_drop(self):
        f, n = self.f, self.system.normalize
        self.assertEqual(n(f.vpath([f.glob('1'), f.glob('2')])), f.glob('0'))
        self.assertEqual(n(f.vpath([f.hid('g'), f.hid('g')])), f.glob('0'))
        self.assertEqual(n(f.vpath([f.glob('1'), f.glob('1')])), f.glob('2'))

    def test_horizontal_units_disappear(self):
        f, n = self.f, self.system.normalize
        self.assertEqual(n(f.hword(f.hid('g'), f.hid('g'))), f.hid('g'))
        self.assertEqual(n(f.hword(f.glob('1'), f.glob('1'))), f.glob('2'))

    def test_unit_slide(self):
        f = self.f
        term = parse_term(corpus_path('unit_slide.term').read_text(), f)
        normal = self.system.normalize(term)
        self.assertIsInstance(normal, VPath)
        self.assertEqual(normal, f.vpath([f.glob('1'), f.hid('g'), f.glob('2')]))
        self.assertEqual(normal.layer, 1)
        self.assertTrue(self.system.is_normal(normal))

    def test_normal_forms_are_fixed_points(self):
        for term in truncation('z2_z3').representatives:
            self.assertEqual(self.system.normalize(term), term)

    def test_local_confluence(self):
        trunc = free_truncation(load('omega_z2_2omega_z3.dcat'), depth=1, word_bound=3)
        report = critical_pairs_join(trunc.system, trunc.layers.universe())
        self.assertTrue(report.ok, report.to_dict()['failures'][:3])
        self.assertGreater(report.steps, 0)


class TruncationTests(SimpleTestCase):
    def test_representatives_are_the_reduced_words(self):
        trunc = truncation('z2_z3')
        B = load('omega_z2_2omega_z3.dcat')
        g_letters = [m for m in B.decoration.names if not B.decoration.is_identity(m)]
        a_letters = [c.name for c in B.bicat.cells2 if not B.bicat.is_identity2(c.name)]
        self.assertEqual(len(trunc.representatives), 22)
        words = {as_reduced_word(t) for t in trunc.representatives}
        oracle = reduced_words(g_letters, a_letters, 4)
        self.assertEqual(len(oracle), 22)
        self.assertEqual(words, set(oracle))

    def test_classes_match_the_wreath_product(self):
        self.assertEqual(len(truncation('z2_z3').classes()), 18)

    def test_base_is_contained(self):
        trunc = truncation('z2_z3')
        self.assertTrue(trunc.contains_base())
        self.assertEqual(trunc.well_defined(samples=100, seed=3), [])

    def test_universe_is_large(self):
        self.assertGreaterEqual(len(truncation('z2_z3').layers.universe()), 1000)

    def test_trivial(self):
        trunc = truncation('trivial')
        self.assertEqual(len(trunc.representatives), 1)
        self.assertEqual(trunc.layer_counts(), {1: {'H': 1, 'V': 1}, 2: {'H': 1, 'V': 1}})

    def test_bound_exceeded(self):
        with self.assertRaises(BoundExceeded):
            build_layers(load('omega_z2_2omega_z3.dcat'), depth=2, word_bound=4, size_bound=10)

    def test_report(self):
        data = truncation('z2_z3').to_dict()
        self.assertEqual(data['bounds'], {'depth': 2, 'word': 4})
        self.assertEqual(len(data['representatives']), 22)


class DecisionTests(SimpleTestCase):
    def setUp(self):
        self.system = RewriteSystem(load('omega_z2_2omega_z3.dcat'))
        self.f = self.system.factory

    def test_wreath_identifications(self):
        f = self.f
        a, g = f.glob('1'), f.hid('g')
        agag, gaga = f.vpath([a, g, a, g]), f.vpath([g, a, g, a])
        self.assertNotEqual(self.system.normalize(agag), self.system.normalize(gaga))
        self.assertEqual(decide_eq(agag, gaga, self.system), Decision.EQUAL)
        self.assertEqual(decide_eq(f.vpath([a, g]), f.vpath([g, a]), self.system), Decision.DISTINCT)

    def test_boundaries_decide_first(self):
        f = self.f
        self.assertEqual(decide_eq(f.glob('1'), f.hid('g'), self.system), Decision.DISTINCT)

    def test_invariant_only_for_group_pairs(self):
        self.assertIsNotNone(wreath_invariant(load('omega_z2_2omega_z3.dcat')))
        self.assertIsNone(wreath_invariant(load('arrow_z2.dcat')))


class InverseTests(SimpleTestCase):
    def test_inverses_in_decorated_two_groupoids(self):
        for key in ('z2_z3', 'z3_z2'):
            trunc = truncation(key)
            f, n = trunc.factory, trunc.system.normalize
            for t in trunc.representatives:
                with self.subTest(pair=key, term=render_term(t)):
                    v, h = vertical_inverse(t, f), horizontal_inverse(t, f)
                    self.assertEqual(n(f.vpath([t, v])), n(vertical_identity(t, f)))
                    self.assertEqual(n(f.vpath([v, t])), n(vertical_identity(v, f)))
                    self.assertEqual(n(f.hword(t, h)), n(horizontal_identity(t, f)))
                    self.assertEqual(n(f.hword(h, t)), n(horizontal_identity(h, f)))

    def test_non_invertible(self):
        B, _ = pair('arrow_squares')
        f = RewriteSystem(B).factory
        with self.assertRaises(TermError) as ctx:
            vertical_inverse(f.hid('u'), f)
        self.assertEqual(ctx.exception.code, 'non_invertible')


class LengthEvidenceTests(SimpleTestCase):
    def test_group_pair_has_length_one(self):
        evidence = free_length_evidence(load('omega_z2_2omega_z3.dcat'), depth=2, word_bound=6)
        self.assertEqual(evidence.consistent_with_length, 1)
        self.assertIsNone(evidence.counterexample)

    def test_labelled_arrow_needs_two_layers(self):
        evidence = free_length_evidence(load('labelled_arrow.dcat'), depth=2, word_bound=4)
        self.assertEqual(evidence.consistent_with_length, 2)
        self.assertIsNotNone(evidence.counterexample)
        self.assertEqual(evidence.to_dict()['bounds'], {'depth': 2, 'word': 4})

    def test_trivial_has_length_one(self):
        evidence = free_length_evidence(load('trivial.dcat'))
        self.assertEqual(evidence.consistent_with_length, 1)
        self.assertIsNone(evidence.counterexample)

    def test_length_is_bounded_by_the_free_evidence(self):
        depth = 2
        for key in PAIRS:
            with self.subTest(pair=key):
                B, C = pair(key)
                evidence = free_length_evidence(B, depth=depth, word_bound=4)
                free_bound = evidence.consistent_with_length or depth + 1
                self.assertIsNotNone(length(C))
                self.assertLessEqual(length(C), free_bound)


class SeparationTests(SimpleTestCase):
    def test_distinct_base_cells_are_distinct(self):
        for key, first, second in (('labelled', '1a@0', '1a@1'), ('arrow_z2', 'u0', 'u1')):
            with self.subTest(pair=key):
                system = truncation(key).system
                f = system.factory
                self.assertEqual(decide_eq(f.glob(first), f.glob(second), system), Decision.DISTINCT)

    def test_projection_separates_representatives(self):
        trunc = truncation('labelled')
        ctx = projection_context(*pair('labelled'))

        def image(term):
            return project(ctx, term)

        for s, t in itertools.combinations(trunc.representatives, 2):
            if s.boundary != t.boundary or image(s) == image(t):
                continue
            with self.subTest(s=render_term(s), t=render_term(t)):
                self.assertEqual(decide_eq(s, t, trunc.system, separators=[image]), Decision.DISTINCT)

    def test_classes_accept_separators(self):
        trunc = truncation('labelled')
        ctx = projection_context(*pair('labelled'))
        groups = trunc.classes(separators=[lambda t: project(ctx, t)])
        self.assertEqual(sum(len(g) for g in groups), len(trunc.representatives))


class CongruenceClosureTests(SimpleTestCase):
    def setUp(self):
        self.f = RewriteSystem(load('omega_z2_2omega_z3.dcat')).factory

    def test_merged_parts_give_merged_composites(self):
        f = self.f
        x, y, z = f.glob('1'), f.vpath([f.glob('2'), f.glob('2')]), f.glob('2')
        closure = CongruenceClosure()
        closure.merge(x, y)
        self.assertTrue(closure.equivalent(f.vpath([x, z]), f.vpath([y, z])))
        self.assertTrue(closure.equivalent(f.hword(z, x), f.hword(z, y)))
        self.assertFalse(closure.equivalent(x, z))
        self.assertFalse(closure.equivalent(f.vpath([x, z]), f.vpath([z, z])))

    def test_merges_propagate_through_nested_terms(self):
        f = self.f
        x, y, z = f.glob('1'), f.vpath([f.glob('2'), f.glob('2')]), f.hid('g')
        outer_x = f.hword(f.vpath([x, z]), f.hid('g'))
        outer_y = f.hword(f.vpath([y, z]), f.hid('g'))
        closure = CongruenceClosure()
        closure.add(outer_x)
        closure.add(outer_y)
        self.assertFalse(closure.equivalent(outer_x, outer_y))
        closure.merge(x, y)
        self.assertTrue(closure.equivalent(outer_x, outer_y))


class InvariantPropertyTests(SimpleTestCase):
    def test_normal_forms_keep_boundaries(self):
        for key in PAIRS:
            trunc = truncation(key)
            moved = [render_term(t) for t in trunc.layers.universe()
                     if trunc.system.normalize(t).boundary != t.boundary]
            self.assertEqual(moved, [], key)

    @hsettings(max_examples=60, deadline=None)
    @given(st.data())
    def test_normalize_preserves_boundaries(self, data):
        trunc = truncation(data.draw(st.sampled_from(sorted(PAIRS))), depth=1, word_bound=3)
        term = data.draw(st.sampled_from(trunc.layers.universe()))
        self.assertEqual(trunc.system.normalize(term).boundary, term.boundary)

    @hsettings(max_examples=60, deadline=None)
    @given(st.data())
    def test_equal_terms_stay_equal_in_any_context(self, data):
        trunc = truncation(data.draw(st.sampled_from(['z2_z3', 'arrow_z2', 'labelled'])), depth=1, word_bound=3)
        system, f = trunc.system, trunc.factory
        universe = trunc.layers.universe()
        s = data.draw(st.sampled_from(universe))
        t = data.draw(st.sampled_from([u for u in universe if system.normalize(u) == system.normalize(s)]))
        self.assertEqual(decide_eq(s, t, system), Decision.EQUAL)
        below = data.draw(st.sampled_from([u for u in universe if u.top == s.bottom]))
        self.assertEqual(decide_eq(f.vpath([s, below]), f.vpath([t, below]), system), Decision.EQUAL)
        right = data.draw(st.sampled_from([u for u in universe if u.left == s.right]))
        self.assertEqual(decide_eq(f.hword(s, right), f.hword(t, right), system), Decision.EQUAL)

    def test_exchanged_words_stay_equal_in_context(self):
        trunc = truncation('z2_z3')
        system, f = trunc.system, trunc.factory
        merged = [g for g in trunc.classes() if len(g) > 1]
        self.assertTrue(merged)
        for group in merged:
            s, t = group[:2]
            for g in f.generators():
                with self.subTest(s=render_term(s), t=render_term(t), g=render_term(g)):
                    self.assertEqual(decide_eq(f.vpath([s, g]), f.vpath([t, g]), system), Decision.EQUAL)
                    self.assertEqual(decide_eq(f.vpath([g, s]), f.vpath([g, t]), system), Decision.EQUAL)
                    if s.right == g.left:
                        self.assertEqual(decide_eq(f.hword(s, g), f.hword(t, g), system), Decision.EQUAL)
