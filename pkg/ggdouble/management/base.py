"""Shared plumbing for the calculus commands: bound flags, run configuration
and the mapping from errors to exit codes."""
import logging

from django.core.management.base import BaseCommand, CommandError

from ..exceptions import BoundExceeded, CalculusError, HypothesisError
from ..forms import RunConfigForm
from ..reports import render_report

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_AUDIT_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_HYPOTHESIS = 3


class CalculusCommand(BaseCommand):
    """Subclasses implement ``run(config, **options)`` and return the report
    payload together with a pass flag."""

    path_arguments = ()

    def add_arguments(self, parser):
        parser.add_argument('--depth', type=int)
        parser.add_argument('--word-bound', dest='word_bound', type=int)
        parser.add_argument('--kmax', type=int)
        parser.add_argument('--seed', type=int)
        parser.add_argument('--size-bound', dest='size_bound', type=int)
        parser.add_argument('--format', choices=['json', 'text'])

    def paths(self, options):
        paths = []
        for name in self.path_arguments:
            value = options.get(name)
            if isinstance(value, (list, tuple)):
                paths.extend(value)
            elif value:
                paths.append(value)
        return paths

    def config(self, options):
        data = {key: options.get(key) for key in ('depth', 'word_bound', 'kmax', 'seed', 'size_bound', 'format')}
        form = RunConfigForm(self.command_name(), self.paths(options), data=data)
        if not form.is_valid():
            messages = '; '.join(e for errors in form.errors.values() for e in errors)
            raise CommandError(messages, returncode=EXIT_INPUT_ERROR)
        return form.config()

    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def handle(self, *args, **options):
        config = self.config(options)
        try:
            payload, passed = self.run(config, **options)
        except HypothesisError as exc:
            raise CommandError(f"out-of-hypothesis: {exc}", returncode=EXIT_HYPOTHESIS) from exc
        except BoundExceeded as exc:
            raise CommandError(f"bound exceeded: {exc}", returncode=EXIT_INPUT_ERROR) from exc
        except CalculusError as exc:
            raise CommandError(str(exc), returncode=EXIT_INPUT_ERROR) from exc
        except OSError as exc:
            raise CommandError(str(exc), returncode=EXIT_INPUT_ERROR) from exc
        self.stdout.write(self.render(config, payload), ending='')
        if not passed:
            raise CommandError(f"{config.command} failed", returncode=EXIT_AUDIT_FAILURE)

    def render(self, config, payload):
        return render_report(config, payload)

    def run(self, config, **options):
        raise NotImplementedError
