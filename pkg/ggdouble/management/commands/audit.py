from django.core.management.base import CommandError

from ...adjunction import faithfulness_probe, naturality_check, triangle_identities
from ...doublecat import DoubleFunctor, h_star
from ...dsl import load_presentation
from ...exceptions import FunctorError
from ...freeggd import free_truncation
from ...presentations import DecoratedBicategory, DoubleCategory
from ...projection import (
    audit_inverses, audit_strictness, audit_surjectivity, audit_uniqueness, fold_evaluator,
    h_star_restriction_check, projection_context, swap_anchors,
)
from ...terms import Glob
from ..base import EXIT_INPUT_ERROR, CalculusCommand


class Command(CalculusCommand):
    help = "Run the projection and adjunction audits for a pair (B, C) with H*C = B."
    path_arguments = ('base', 'target', 'functor')

    def add_arguments(self, parser):
        parser.add_argument('base', help="decorated bicategory B (.dcat)")
        parser.add_argument('target', help="double category C (.dcat)")
        parser.add_argument('--functor', help="a double functor out of C, for the naturality of the counit")
        parser.add_argument('--swap', nargs=2, metavar=('CELL', 'CELL'),
                            help="exchange the images of two 2-cells (mutation control)")
        super().add_arguments(parser)

    def run(self, config, **options):
        B, C = load_presentation(options['base']), load_presentation(options['target'])
        if not isinstance(B, DecoratedBicategory) or not isinstance(C, DoubleCategory):
            raise CommandError("expected a decorated bicategory and a double category", returncode=EXIT_INPUT_ERROR)
        ctx = projection_context(B, C)
        if options.get('swap'):
            first, second = options['swap']
            ctx = swap_anchors(ctx, Glob(first), Glob(second))
        truncation = free_truncation(B, config.depth, config.word_bound, config.size_bound)
        universe = truncation.layers.universe()

        strictness = audit_strictness(ctx, truncation, config.kmax)
        surjectivity = audit_surjectivity(ctx, truncation, config.kmax)
        try:
            uniqueness = audit_uniqueness(ctx, fold_evaluator(ctx), universe).to_dict()
        except FunctorError as exc:
            uniqueness = {'verdict': exc.code, 'witness': exc.params['t'], 'scope': 'enumerated universe'}
        triangles = triangle_identities(B, C, truncation)
        faithfulness = faithfulness_probe(ctx.C, ctx.C, seed=config.seed)
        ill_defined = truncation.well_defined(seed=config.seed)
        payload = {
            'gamma_substituted': ctx.substituted,
            'strict': strictness.passed,
            'strictness': strictness.to_dict(),
            'surjective_up_to': surjectivity.details['surjective_up_to'],
            'surjectivity': surjectivity.to_dict(),
            'unique_vs': [{'against': 'fold evaluator', **uniqueness}],
            'restricts_to_identity': h_star_restriction_check(ctx),
            'adjunction': triangles.to_dict(),
            'faithfulness': faithfulness.to_dict(),
            'well_defined': {'samples': 200, 'failures': len(ill_defined)},
            'violations': strictness.violations + surjectivity.violations,
        }
        passed = [strictness.passed, surjectivity.passed, uniqueness['verdict'] == 'equal',
                  payload['restricts_to_identity'], triangles.passed, faithfulness.passed, not ill_defined]
        if B.is_2groupoid():
            inverses = audit_inverses(ctx, truncation.representatives)
            payload['inverses'] = inverses.to_dict()
            passed.append(inverses.passed)
        if options.get('functor'):
            T = load_presentation(options['functor'])
            if not isinstance(T, DoubleFunctor):
                raise CommandError("--functor expects a double functor", returncode=EXIT_INPUT_ERROR)
            naturality = naturality_check(T, free_truncation(h_star(T.source), config.depth, config.word_bound,
                                                                config.size_bound))
            payload['naturality'] = naturality.to_dict()
            passed.append(naturality.passed)
        return payload, all(passed)
