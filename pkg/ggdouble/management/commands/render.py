from ...dsl import load_presentation, render
from ..base import CalculusCommand


class Command(CalculusCommand):
    help = "Print the canonical expanded form of the last block of a document."
    path_arguments = ('document',)

    def add_arguments(self, parser):
        parser.add_argument('document')
        super().add_arguments(parser)

    def run(self, config, **options):
        value = load_presentation(options['document'])
        return render(value), True

    def render(self, config, payload):
        return payload
