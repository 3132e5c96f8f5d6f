from django.test import SimpleTestCase

from ggdouble.doublecat import (
    compose_double_functors, double_functors, gamma, gamma_minimality, h_star, h_star_functor, horizontal_inverse,
    identity_double_functor, is_double_groupoid, is_globularly_generated, length, vertical_filtration,
)
from ggdouble.exceptions import FunctorError
from ggdouble.presentations import (
    arrow_category, commuting_squares, cyclic_group, identity_pseudofunctor, vertical_labelling,
)

from .utils import load


class GammaTests(SimpleTestCase):
    def test_arrow_squares(self):
        C = commuting_squares(arrow_category())
        piece = gamma(C)
        self.assertEqual(len(piece.squares), 4)
        self.assertFalse(is_globularly_generated(C))
        self.assertTrue(is_globularly_generated(piece))
        self.assertEqual(h_star(piece), h_star(C))

    def test_minimality(self):
        result = gamma_minimality(commuting_squares(arrow_category()))
        self.assertEqual(result.status, 'minimal')
        self.assertEqual(result.searched, 15)

    def test_minimality_threshold(self):
        C = load('arrow_z2_quintets.dcat')
        self.assertEqual(gamma_minimality(C, threshold=1).status, 'not attempted')


class FiltrationTests(SimpleTestCase):
    def test_length_of_the_arrow_squares(self):
        self.assertEqual(length(commuting_squares(arrow_category())), 1)

    def test_redecorated_quintets(self):
        C = load('omega_z2_2omega_z3_internal.dcat')
        filtration = vertical_filtration(C)
        self.assertEqual(filtration.stabilized_at, 1)
        self.assertEqual(filtration.hset(1), frozenset({'0', '1', '2', '0@g'}))
        self.assertEqual(len(filtration.vset(1)), 6)
        self.assertEqual(filtration.hset(2), filtration.vset(1))

    def test_labelled_arrow(self):
        C = vertical_labelling(arrow_category(), cyclic_group(2))
        filtration = vertical_filtration(C)
        self.assertEqual(len(filtration.hset(1)), 5)
        self.assertEqual(filtration.stabilized_at, 1)

    def test_report_shape(self):
        data = vertical_filtration(commuting_squares(arrow_category()), kmax=3).to_dict()
        self.assertEqual(data['stabilized_at'], 1)
        self.assertEqual(data['kmax'], 3)
        self.assertEqual(data['layers'][0]['k'], 1)


class GroupoidTests(SimpleTestCase):
    def test_redecorated_quintets_are_a_double_groupoid(self):
        for name in ('omega_z2_2omega_z3_internal.dcat', 'omega_z3_2omega_z2_internal.dcat'):
            with self.subTest(name=name):
                self.assertTrue(is_double_groupoid(load(name)))

    def test_arrow_is_not_invertible(self):
        check = is_double_groupoid(commuting_squares(arrow_category()))
        self.assertFalse(check)
        self.assertEqual(check.witness, 'u|u|1a|1b')
        self.assertEqual(check.to_dict()['reason'], 'square on a non-invertible horizontal morphism u')
        self.assertIsNone(horizontal_inverse(commuting_squares(arrow_category()), check.witness))


class DoubleFunctorTests(SimpleTestCase):
    def test_functors_on_the_arrow_piece(self):
        G = gamma(commuting_squares(arrow_category()))
        functors = list(double_functors(G, G))
        self.assertEqual(len(functors), 3)
        self.assertIn(identity_double_functor(G), functors)

    def test_identity_is_neutral(self):
        C = load('omega_z2_2omega_z3_internal.dcat')
        T = identity_double_functor(C)
        self.assertEqual(compose_double_functors(T, T), T)
        self.assertEqual(h_star_functor(T), identity_pseudofunctor(h_star(C)))

    def test_composition_needs_matching_ends(self):
        C = load('omega_z2_2omega_z3_internal.dcat')
        D = commuting_squares(arrow_category())
        with self.assertRaises(FunctorError) as ctx:
            compose_double_functors(identity_double_functor(C), identity_double_functor(D))
        self.assertEqual(ctx.exception.code, 'boundary_mismatch')
