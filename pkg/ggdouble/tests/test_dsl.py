from django.test import SimpleTestCase

from ggdouble.doublecat import h_star
from ggdouble.dsl import parse_document, parse_presentation, render
from ggdouble.exceptions import ParseError, PresentationError
from ggdouble.presentations import (
    DecoratedBicategory, DoubleCategory, arrow_category, commuting_squares, cyclic_group, delooping,
    double_delooping, quintets,
)
from ggdouble.validation import validate

from .utils import PAIRS, corpus_path, document, load

OMEGA_Z2 = """
category Omega_Z2 {
  objects: [x];
  morphisms: [e: x -> x, g: x -> x];
  compose: {(e, e): e, (e, g): g, (g, e): g, (g, g): e};
  groupoid: true;
}
"""


class ParseTests(SimpleTestCase):
    def test_expanded_category(self):
        C = parse_presentation(OMEGA_Z2)
        self.assertEqual(C, delooping(cyclic_group(2, ['e', 'g'])))
        self.assertEqual(C.identity, {'x': 'e'})

    def test_derived_blocks(self):
        values = parse_document("""
            group Z3 = cyclic(3);
            two_category S = double_delooping(Z3);
            double Q = quintets(S);
        """)
        self.assertEqual(list(values), ['Z3', 'S', 'Q'])
        self.assertEqual(values['Q'], quintets(double_delooping(cyclic_group(3))))
        self.assertEqual(values['Q'].name, 'Q')

    def test_corpus_parses_and_validates(self):
        for base, target in PAIRS.values():
            for name in (base, target):
                with self.subTest(file=name):
                    value = load(name)
                    self.assertIsInstance(value, (DecoratedBicategory, DoubleCategory))
                    self.assertTrue(validate(value).ok)

    def test_corpus_pairs_are_internalizations(self):
        for key, (base, target) in PAIRS.items():
            with self.subTest(pair=key):
                self.assertEqual(h_star(load(target)), load(base))

    def test_double_functor_block(self):
        values = document('omega_z2_2omega_z3_negation.dcat')
        N = values['N']
        self.assertEqual(N('1@g'), '2@g')
        self.assertTrue(validate(N).ok)


class RenderTests(SimpleTestCase):
    def test_render_reads_back(self):
        for value in (delooping(cyclic_group(3)), double_delooping(cyclic_group(2)),
                      commuting_squares(arrow_category()), quintets(double_delooping(cyclic_group(3))),
                      load('arrow_z2.dcat')):
            with self.subTest(value=value.name):
                self.assertEqual(parse_presentation(render(value)), value)

    def test_render_is_deterministic(self):
        value = load('omega_z2_2omega_z3_internal.dcat')
        self.assertEqual(render(value), render(parse_presentation(render(value))))


class DiagnosticTests(SimpleTestCase):
    def test_syntax_error_carries_position(self):
        with self.assertRaises(ParseError) as ctx:
            parse_presentation(corpus_path('broken.dcat').read_text())
        self.assertEqual(ctx.exception.line, 4)
        self.assertIn('line 4', str(ctx.exception))

    def test_unresolved_reference(self):
        with self.assertRaises(PresentationError) as ctx:
            parse_presentation("decorated B { decoration: Nope; bicat: Nope; }")
        self.assertEqual(ctx.exception.code, 'unresolved')

    def test_non_composable_pair(self):
        text = """
        category A {
          objects: [a, b];
          morphisms: [1a: a -> a, 1b: b -> b, u: a -> b];
          compose: {(1a, 1a): 1a, (1b, 1b): 1b, (u, 1a): u, (1b, u): u, (u, u): u};
        }
        """
        with self.assertRaises(PresentationError) as ctx:
            parse_presentation(text)
        self.assertEqual(ctx.exception.code, 'non_composable')

    def test_duplicate_names(self):
        with self.assertRaises(PresentationError) as ctx:
            parse_presentation("group Z = cyclic(2); group Z = cyclic(3);")
        self.assertEqual(ctx.exception.code, 'duplicate')

    def test_unknown_field(self):
        with self.assertRaises(PresentationError) as ctx:
            parse_presentation(OMEGA_Z2.replace('groupoid: true;', 'colour: red;'))
        self.assertEqual(ctx.exception.code, 'unknown_field')

    def test_partial_table_is_reported_not_raised(self):
        text = OMEGA_Z2.replace(', (g, g): e', '')
        C = parse_presentation(text)
        self.assertIn('partial composition', validate(C).laws())

    def test_wrong_constructor_kind(self):
        with self.assertRaises(PresentationError) as ctx:
            parse_presentation("category C = quintets(cyclic(2));")
        self.assertEqual(ctx.exception.code, 'kind')
