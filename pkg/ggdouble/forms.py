from dataclasses import dataclass
from pathlib import Path

from django import forms
from django.conf import settings


@dataclass(frozen=True)
class RunConfig:
    command: str
    paths: tuple
    depth: int
    word_bound: int
    kmax: int
    seed: int
    size_bound: int
    format: str

    def bounds(self):
        return {'depth': self.depth, 'word': self.word_bound, 'kmax': self.kmax}


class RunConfigForm(forms.Form):
    FORMATS = [('json', 'JSON'), ('text', 'Texto')]

    depth = forms.IntegerField(min_value=1, required=False)
    word_bound = forms.IntegerField(min_value=1, required=False)
    kmax = forms.IntegerField(min_value=1, required=False)
    seed = forms.IntegerField(min_value=0, required=False)
    size_bound = forms.IntegerField(min_value=1, required=False)
    format = forms.ChoiceField(choices=FORMATS, required=False)

    def __init__(self, command, paths, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.command = command
        self.paths = tuple(paths)

    def clean(self):
        cleaned_data = super().clean()
        defaults = {
            'depth': settings.GGD_DEPTH,
            'word_bound': settings.GGD_WORD_BOUND,
            'kmax': settings.GGD_KMAX,
            'seed': settings.GGD_SEED,
            'size_bound': settings.GGD_SIZE_BOUND,
            'format': 'json',
        }
        for key, value in defaults.items():
            if cleaned_data.get(key) in (None, ''):
                cleaned_data[key] = value

        missing = [p for p in self.paths if not Path(p).is_file()]
        if missing:
            raise forms.ValidationError("Input file not found: %(paths)s", code='missing_input',
                                        params={'paths': ', '.join(missing)})
        if cleaned_data['kmax'] < cleaned_data['depth']:
            raise forms.ValidationError("kmax must be at least the truncation depth.", code='bounds')

        return cleaned_data

    def config(self):
        data = self.cleaned_data
        return RunConfig(
            command=self.command,
            paths=self.paths,
            depth=data['depth'],
            word_bound=data['word_bound'],
            kmax=data['kmax'],
            seed=data['seed'],
            size_bound=data['size_bound'],
            format=data['format'],
        )
