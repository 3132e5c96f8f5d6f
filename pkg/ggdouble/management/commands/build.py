from ...dsl import load_presentation
from ...exceptions import PresentationError
from ...freeggd import critical_pairs_join, free_truncation
from ...presentations import DecoratedBicategory
from ..base import CalculusCommand


class Command(CalculusCommand):
    help = "Enumerate the free truncation of a decorated bicategory and print its representatives."
    path_arguments = ('presentation',)

    def add_arguments(self, parser):
        parser.add_argument('presentation', help="a .dcat file whose last block is a decorated bicategory")
        parser.add_argument('--classes', action='store_true', help="group representatives by decide_eq")
        super().add_arguments(parser)

    def run(self, config, **options):
        B = load_presentation(options['presentation'])
        if not isinstance(B, DecoratedBicategory):
            raise PresentationError("%(name)s is not a decorated bicategory", code='kind', params={'name': B.name})
        truncation = free_truncation(B, config.depth, config.word_bound, config.size_bound)
        payload = truncation.to_dict()
        confluence = critical_pairs_join(truncation.system, truncation.layers.universe())
        payload['confluence'] = confluence.to_dict()
        if options.get('classes'):
            payload['classes'] = len(truncation.classes())
        return payload, confluence.ok
