from ...dsl import load_document
from ...validation import validate
from ..base import CalculusCommand


class Command(CalculusCommand):
    help = "Check every block of a presentation document against its axioms."
    path_arguments = ('document',)

    def add_arguments(self, parser):
        parser.add_argument('document')
        super().add_arguments(parser)

    def run(self, config, **options):
        values = load_document(options['document'])
        reports = {name: validate(value) for name, value in values.items()}
        payload = {name: report.to_dict() for name, report in reports.items()}
        return payload, all(report.ok for report in reports.values())
