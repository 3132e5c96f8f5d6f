"""Deterministic serialization of command results.

Every report embeds the bounds and the seed it was produced with; keys are
sorted so identical runs give byte-identical output.
"""
import json


def envelope(config, payload):
    return {
        'command': config.command,
        'inputs': [str(p) for p in config.paths],
        'bounds': config.bounds(),
        'seed': config.seed,
        'result': payload,
    }


def to_json(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str) + '\n'


def _lines(value, prefix=''):
    if isinstance(value, dict):
        for key in sorted(value, key=str):
            yield from _lines(value[key], f"{prefix}{key}.")
    elif isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            yield f"{prefix.rstrip('.')}: {', '.join(str(v) for v in value)}"
        else:
            for i, item in enumerate(value):
                yield from _lines(item, f"{prefix}{i}.")
    else:
        yield f"{prefix.rstrip('.')}: {value}"


def to_text(report):
    return '\n'.join(_lines(report)) + '\n'


def render_report(config, payload):
    report = envelope(config, payload)
    if config.format == 'text':
        return to_text(report)
    return to_json(report)
