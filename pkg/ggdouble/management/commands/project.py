from pathlib import Path

from django.core.management.base import CommandError

from ...dsl import load_presentation
from ...presentations import DecoratedBicategory, DoubleCategory
from ...projection import project, projection_context
from ...terms import parse_term, render_term
from ..base import EXIT_INPUT_ERROR, CalculusCommand


class Command(CalculusCommand):
    help = "Evaluate a free term under the canonical double projection onto C."
    path_arguments = ('base', 'target')

    def add_arguments(self, parser):
        parser.add_argument('base', help="decorated bicategory B (.dcat)")
        parser.add_argument('target', help="double category C with H*C = B (.dcat)")
        parser.add_argument('term', help="a .term file or an inline s-expression")
        super().add_arguments(parser)

    def run(self, config, **options):
        B, C = load_presentation(options['base']), load_presentation(options['target'])
        if not isinstance(B, DecoratedBicategory) or not isinstance(C, DoubleCategory):
            raise CommandError("expected a decorated bicategory and a double category", returncode=EXIT_INPUT_ERROR)
        ctx = projection_context(B, C)
        source = options['term']
        text = Path(source).read_text(encoding='utf-8') if source.endswith('.term') else source
        term = parse_term(text.strip(), ctx.factory)
        image = project(ctx, term)
        square = ctx.C.square(image)
        normal = ctx.system.normalize(term)
        return {
            'term': render_term(term),
            'normal_form': render_term(normal),
            'image': image,
            'boundary': {'top': square.top, 'bottom': square.bottom, 'left': square.left, 'right': square.right},
            'layer': term.layer,
            'gamma_substituted': ctx.substituted,
        }, True
