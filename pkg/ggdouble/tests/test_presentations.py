import random
from dataclasses import replace

from django.test import SimpleTestCase
from hypothesis import given, settings as hsettings, strategies as st

from ggdouble.doublecat import gamma, h_star
from ggdouble.exceptions import GroupError
from ggdouble.presentations import (
    DecoratedBicategory, arrow_category, commuting_squares, cyclic_group, delooping, discrete_category,
    double_delooping, klein_four_group, locally_discrete, quintets, redecorate_by_group, symmetric_group,
    vertical_labelling,
)
from ggdouble.validation import validate


def mutate(value, table_names, rng):
    """Change one entry of one composition table to another value of the same carrier."""
    table_name = rng.choice(table_names)
    table = dict(getattr(value, table_name))
    key = rng.choice(sorted(table))
    if table_name == 'compose':
        carrier = sorted(value.names)
    elif table_name in ('vcompose2', 'hcompose2'):
        carrier = sorted(c.name for c in value.cells2)
    else:
        carrier = sorted(value.square_names)
    table[key] = rng.choice([x for x in carrier if x != table[key]])
    return replace(value, **{table_name: table})


class GroupTests(SimpleTestCase):
    def test_cyclic_group_table(self):
        Z3 = cyclic_group(3)
        self.assertEqual(Z3.elements, ('0', '1', '2'))
        self.assertEqual(Z3.mul('2', '2'), '1')
        self.assertEqual(Z3.inverse('1'), '2')

    def test_symmetric_group_is_not_abelian(self):
        self.assertFalse(symmetric_group(3).is_abelian())
        self.assertTrue(klein_four_group().is_abelian())

    def test_double_delooping_rejects_non_abelian_groups(self):
        with self.assertRaises(GroupError) as ctx:
            double_delooping(symmetric_group(3))
        self.assertEqual(ctx.exception.code, 'non_abelian')

    @given(st.integers(min_value=1, max_value=7))
    def test_delooping_validates(self, n):
        self.assertTrue(validate(delooping(cyclic_group(n))).ok)
        self.assertTrue(validate(double_delooping(cyclic_group(n))).ok)


class ConstructionTests(SimpleTestCase):
    def test_commuting_squares_of_the_arrow(self):
        C = commuting_squares(arrow_category())
        self.assertEqual(len(C.squares), 6)
        self.assertEqual(len(C.globular_squares()), 3)
        self.assertTrue(validate(C).ok)

    def test_commuting_squares_of_small_categories(self):
        for D, expected in ((discrete_category(['x', 'y']), 2), (delooping(cyclic_group(2)), 8)):
            with self.subTest(category=D.name):
                C = commuting_squares(D)
                self.assertEqual(len(C.squares), expected)
                self.assertTrue(validate(C).ok)

    def test_quintets_of_the_locally_discrete_arrow(self):
        C = quintets(locally_discrete(arrow_category()))
        self.assertEqual(len(C.squares), 6)
        self.assertEqual(len(C.globular_squares()), 3)

    def test_delooping_of_the_trivial_group(self):
        D = delooping(cyclic_group(1))
        self.assertEqual(D.objects, ('x',))
        self.assertEqual(D.names, ('0',))
        self.assertEqual(D.identity['x'], '0')
        self.assertTrue(validate(D).ok)

    def test_delooping_composes_modulo_three(self):
        D = delooping(cyclic_group(3))
        for p in range(3):
            for q in range(3):
                self.assertEqual(D.comp(str(p), str(q)), str((p + q) % 3))

    def test_quintets_recover_the_two_category(self):
        for sigma in (double_delooping(cyclic_group(3)), double_delooping(klein_four_group()),
                      locally_discrete(arrow_category())):
            with self.subTest(sigma=sigma.name):
                C = quintets(sigma)
                self.assertTrue(validate(C).ok)
                self.assertEqual(h_star(C).bicat, sigma)

    def test_redecoration_internalizes_the_pair(self):
        Z2, Z3 = cyclic_group(2, ['e', 'g']), cyclic_group(3)
        C = redecorate_by_group(quintets(double_delooping(Z3)), Z2)
        self.assertEqual(len(C.squares), 6)
        self.assertTrue(validate(C).ok)
        self.assertEqual(h_star(C), DecoratedBicategory(delooping(Z2), double_delooping(Z3)))
        self.assertEqual(C.hid['g'], '0@g')

    def test_vertical_labelling(self):
        C = vertical_labelling(arrow_category(), cyclic_group(2))
        self.assertEqual(len(C.squares), 6)
        self.assertTrue(validate(C).ok)
        self.assertEqual(C.vcomp[('1b@1', 'u@1')], 'u@0')
        self.assertEqual(len(gamma(C).squares), 6)
        self.assertEqual(h_star(C).decoration, arrow_category())

    def test_discrete_category_is_a_groupoid(self):
        D = discrete_category(['x', 'y'])
        self.assertTrue(D.groupoid)
        self.assertEqual(D.inverse('1y'), '1y')


class MutationTests(SimpleTestCase):
    """Every single-entry change to a rigid table is reported."""

    def targets(self):
        return [
            (delooping(cyclic_group(3)), ('compose',)),
            (delooping(symmetric_group(3)), ('compose',)),
            (double_delooping(cyclic_group(3)), ('vcompose2', 'hcompose2')),
            (double_delooping(klein_four_group()), ('vcompose2', 'hcompose2')),
            (commuting_squares(arrow_category()), ('vcomp', 'hcomp')),
        ]

    def test_fifty_seeded_mutations_are_caught(self):
        targets = self.targets()
        for seed in range(50):
            rng = random.Random(seed)
            value, tables = targets[seed % len(targets)]
            mutant = mutate(value, tables, rng)
            with self.subTest(seed=seed, value=value.name):
                self.assertFalse(validate(mutant).ok)

    @hsettings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_group_table_mutations(self, seed):
        value = delooping(cyclic_group(4))
        self.assertFalse(validate(mutate(value, ('compose',), random.Random(seed))).ok)
