from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from ggdouble.exceptions import TermError
from ggdouble.terms import TermFactory
from ggdouble.words import catalan, enumerate_words, mu, parenthesizations, sequences, shape

from .utils import load


class CatalanTests(SimpleTestCase):
    def test_first_values(self):
        self.assertEqual([catalan(n) for n in range(7)], [1, 1, 2, 5, 14, 42, 132])

    def test_negative(self):
        with self.assertRaises(ValueError):
            catalan(-1)

    @given(st.integers(min_value=1, max_value=6))
    def test_parenthesizations_are_counted_by_catalan(self, n):
        f = TermFactory(load('omega_z2_2omega_z3.dcat'))
        leaf = f.glob('1')
        trees = parenthesizations([leaf] * n, f)
        self.assertEqual(len(trees), catalan(n - 1))
        self.assertEqual(len({shape(t) for t in trees}), len(trees))


class SequenceTests(SimpleTestCase):
    def test_chains_follow_the_keys(self):
        chains = list(sequences(['ab', 'bc', 'ca'], 3, lambda s: s[1], lambda s: s[0]))
        self.assertIn(('ab', 'bc', 'ca'), chains)
        self.assertNotIn(('ab', 'ca'), chains)
        self.assertTrue(all(len(c) <= 3 for c in chains))

    def test_words_over_generators(self):
        B = load('omega_z2_2omega_z3.dcat')
        f = TermFactory(B)
        words = enumerate_words(f.generators(), 2, f)
        self.assertTrue(all(w.size <= 2 for w in words))
        self.assertIn(f.hword(f.glob('1'), f.glob('2')), words)
        self.assertTrue(all(w.left_term.right == w.right_term.left for w in words if w.size == 2))


class MuTests(SimpleTestCase):
    def setUp(self):
        self.f = TermFactory(load('omega_z2_2omega_z3.dcat'))

    def test_leafwise_evaluation_keeps_the_bracketing(self):
        f = self.f
        word = f.hword(f.hword(f.glob('1'), f.glob('2')), f.glob('1'))
        image = mu(lambda t: f.glob('0') if t.generator.cell == '1' else t, lambda m: m, word, f)
        self.assertEqual(shape(image), shape(word))
        self.assertEqual(image.left_term.left_term, f.glob('0'))

    def test_broken_intertwining(self):
        f = self.f
        with self.assertRaises(TermError) as ctx:
            mu(lambda t: t, lambda m: 'g', f.glob('1'), f)
        self.assertEqual(ctx.exception.code, 'intertwining')
