from django.core.management.base import CommandError

from ...doublecat import gamma, h_star, vertical_filtration
from ...dsl import load_presentation
from ...freeggd import free_length_evidence
from ...presentations import DecoratedBicategory, DoubleCategory
from ..base import EXIT_INPUT_ERROR, CalculusCommand


class Command(CalculusCommand):
    help = ("Length of a double category, bounded length evidence for a decorated bicategory, "
            "or both side by side.")
    path_arguments = ('inputs',)

    def add_arguments(self, parser):
        parser.add_argument('inputs', nargs='+', help="one or two .dcat files")
        super().add_arguments(parser)

    def run(self, config, **options):
        if len(options['inputs']) > 2:
            raise CommandError("length takes at most two inputs", returncode=EXIT_INPUT_ERROR)
        values = [load_presentation(path) for path in options['inputs']]
        doubles = [v for v in values if isinstance(v, DoubleCategory)]
        bicats = [v for v in values if isinstance(v, DecoratedBicategory)]
        if len(doubles) + len(bicats) != len(values) or len(doubles) > 1 or len(bicats) > 1:
            raise CommandError("expected a double category and/or a decorated bicategory",
                               returncode=EXIT_INPUT_ERROR)
        payload, passed = {}, True
        if doubles:
            C = doubles[0]
            filtration = vertical_filtration(C, config.kmax)
            payload['double'] = {
                'name': C.name,
                'squares': len(C.squares),
                'gamma_squares': len(gamma(C).squares),
                'length': filtration.stabilized_at if filtration.stabilized_at is not None else 'not within bound',
                'filtration': filtration.to_dict(),
            }
        if bicats:
            B = bicats[0]
            evidence = free_length_evidence(B, config.depth, config.word_bound, config.size_bound)
            payload['decorated'] = {'name': B.name, **evidence.to_dict()}
        if doubles and bicats:
            C, B = doubles[0], bicats[0]
            internal = h_star(C) == B or h_star(gamma(C)) == B
            lc, lb = filtration.stabilized_at, evidence.consistent_with_length
            bounded = lc is not None and lb is not None and lc <= lb
            payload['comparison'] = {'internalization': internal, 'length_at_most_evidence': bounded}
            passed = internal and bounded
        return payload, passed
