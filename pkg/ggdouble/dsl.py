"""Text format for presentations (``.dcat`` files).

A document is a sequence of blocks. A block either lists its components::

    category Omega_Z2 {
      objects: [x];
      morphisms: [e: x->x, g: x->x];
      compose: {(e, e): e, (e, g): g, (g, e): g, (g, g): e};
    }

or derives them from earlier blocks with a constructor::

    double C = redecorate(quintets(double_delooping(cyclic(3))), cyclic(2, e, g));

``render`` always writes the expanded form, sorted, one entry per line.
"""
from __future__ import annotations

import logging
import re
from dataclasses import replace
from pathlib import Path
from typing import NamedTuple

from . import presentations as p
from .doublecat import DoubleFunctor, gamma, h_star
from .exceptions import ParseError, PresentationError

logger = logging.getLogger(__name__)

KINDS = ('group', 'category', 'two_category', 'decorated', 'double', 'pseudofunctor', 'double_functor')
IDENT = r"[\w'.|@]+"

TOKEN_RE = re.compile(rf"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->|=>)
  | (?P<ident>{IDENT})
  | (?P<punct>[{{}}\[\]():;,=])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


class Name(NamedTuple):
    text: str
    line: int
    column: int


class Decl(NamedTuple):
    name: Name
    parts: tuple


class Call(NamedTuple):
    func: Name
    args: tuple


def tokenize(source):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        match = TOKEN_RE.match(source, pos)
        if match is None:
            raise ParseError("unexpected character %(char)r", line, pos - line_start + 1,
                             params={'char': source[pos]})
        kind = match.lastgroup
        if kind == 'newline':
            line, line_start = line + 1, match.end()
        elif kind not in ('space', 'comment'):
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token('end', '', line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, source):
        self.tokens = tokenize(source)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        if token.kind != 'end':
            self.index += 1
        return token

    def at(self, text):
        return self.peek().text == text and self.peek().kind != 'end'

    def expect(self, text):
        token = self.advance()
        if token.text != text or token.kind == 'end':
            self.fail(f"expected {text!r}", token)
        return token

    def expect_name(self):
        token = self.advance()
        if token.kind != 'ident':
            self.fail("expected a name", token)
        return Name(token.text, token.line, token.column)

    def fail(self, message, token=None):
        token = token or self.peek()
        found = token.text or 'end of input'
        raise ParseError("%(message)s, found %(found)r", token.line, token.column,
                         params={'message': message, 'found': found})

    def document(self):
        blocks = []
        while self.peek().kind != 'end':
            blocks.append(self.block())
        return blocks

    def block(self):
        kind = self.expect_name()
        if kind.text not in KINDS:
            raise ParseError("unknown block kind %(kind)r", kind.line, kind.column, params={'kind': kind.text})
        name = self.expect_name()
        if self.at('='):
            self.advance()
            body = self.call()
            if self.at(';'):
                self.advance()
            return kind, name, body
        self.expect('{')
        fields = {}
        while not self.at('}'):
            key = self.expect_name()
            self.expect(':')
            if key.text in fields:
                raise PresentationError("duplicate field %(field)s at line %(line)s", code='duplicate',
                                        params={'field': key.text, 'line': key.line})
            fields[key.text] = (key, self.value())
            if self.at(';'):
                self.advance()
            elif not self.at('}'):
                self.fail("expected ';' or '}'")
        self.expect('}')
        return kind, name, fields

    def call(self):
        func = self.expect_name()
        if not self.at('('):
            return func
        self.advance()
        args = []
        while not self.at(')'):
            args.append(self.call())
            if not self.at(')'):
                self.expect(',')
        self.expect(')')
        return Call(func, tuple(args))

    def value(self):
        token = self.peek()
        if token.text == '[' and token.kind == 'punct':
            self.advance()
            items = []
            while not self.at(']'):
                items.append(self.item())
                if not self.at(']'):
                    self.expect(',')
            self.expect(']')
            return items
        if token.text == '{' and token.kind == 'punct':
            self.advance()
            entries = []
            while not self.at('}'):
                key = self.value()
                self.expect(':')
                entries.append((key, self.value()))
                if not self.at('}'):
                    self.expect(',')
            self.expect('}')
            return entries
        if token.text == '(' and token.kind == 'punct':
            self.advance()
            parts = []
            while not self.at(')'):
                parts.append(self.value())
                if not self.at(')'):
                    self.expect(',')
            self.expect(')')
            return tuple(parts)
        return self.expect_name()

    def item(self):
        head = self.value()
        if not self.at(':'):
            return head
        self.advance()
        first = self.value()
        if self.peek().kind == 'arrow':
            arrow = self.advance().text
            return Decl(head, (first, arrow, self.value()))
        return Decl(head, first)


# Block interpretation

def _unresolved(name, what='name'):
    return PresentationError("unresolved %(what)s %(name)s at line %(line)s, column %(column)s",
                             code='unresolved',
                             params={'what': what, 'name': name.text, 'line': name.line, 'column': name.column})


def _duplicate(name):
    return PresentationError("duplicate name %(name)s at line %(line)s", code='duplicate',
                             params={'name': name.text, 'line': name.line})


def _non_composable(first, second):
    return PresentationError("non-composable pair (%(g)s, %(f)s) at line %(line)s", code='non_composable',
                             params={'g': first.text, 'f': second.text, 'line': first.line})


def _names(value, known=None):
    if not isinstance(value, list) or not all(isinstance(v, Name) for v in value):
        raise PresentationError("expected a list of names", code='shape')
    seen = set()
    for v in value:
        if v.text in seen:
            raise _duplicate(v)
        if known is not None and v.text not in known:
            raise _unresolved(v)
        seen.add(v.text)
    return [v.text for v in value]


def _decls(value, arrow):
    if not isinstance(value, list):
        raise PresentationError("expected a list of declarations", code='shape')
    out, seen = [], set()
    for item in value:
        if not isinstance(item, Decl) or not isinstance(item.parts, tuple) or len(item.parts) != 3 \
                or item.parts[1] != arrow:
            raise PresentationError("expected declarations of the form name: a %(arrow)s b", code='shape',
                                    params={'arrow': arrow})
        if item.name.text in seen:
            raise _duplicate(item.name)
        seen.add(item.name.text)
        out.append((item.name, item.parts[0], item.parts[2]))
    return out


def _mapping(value, keys, values, pair=False):
    """Entries of a ``{k: v}`` literal; keys are names or, with ``pair``, name pairs."""
    if not isinstance(value, list):
        raise PresentationError("expected a mapping", code='shape')
    out = {}
    for key, val in value:
        if pair:
            if not isinstance(key, tuple) or len(key) != 2:
                raise PresentationError("expected a key of the form (g, f)", code='shape')
            for part in key:
                if part.text not in keys:
                    raise _unresolved(part)
            k = (key[0].text, key[1].text)
        else:
            if not isinstance(key, Name):
                raise PresentationError("expected a name key", code='shape')
            if key.text not in keys:
                raise _unresolved(key)
            k = key.text
        if not isinstance(val, Name):
            raise PresentationError("expected a name value", code='shape')
        if val.text not in values:
            raise _unresolved(val)
        if k in out:
            raise _duplicate(key[0] if pair else key)
        out[k] = val.text
    return out


def _pair_entries(value):
    return [key for key, _ in value if isinstance(key, tuple)]


def _check_pairs(value, composable):
    for key in _pair_entries(value):
        if not composable(key[0].text, key[1].text):
            raise _non_composable(key[0], key[1])


def _flag(fields, key):
    if key not in fields:
        return False
    name = fields[key][1]
    if not isinstance(name, Name) or name.text not in ('true', 'false'):
        raise PresentationError("%(key)s must be true or false", code='shape', params={'key': key})
    return name.text == 'true'


def _required(fields, key, block):
    if key not in fields:
        raise PresentationError("block %(block)s is missing %(key)s", code='missing_field',
                                params={'block': block.text, 'key': key})
    return fields[key][1]


def _check_fields(fields, allowed, block):
    for key, (name, _) in fields.items():
        if key not in allowed:
            raise PresentationError("unknown field %(key)s in %(block)s at line %(line)s", code='unknown_field',
                                    params={'key': key, 'block': block.text, 'line': name.line})


def _infer_units(carriers, endo, table):
    """For each carrier, the endomorphism acting as a two-sided unit in ``table``."""
    units = {}
    for x in carriers:
        for m in endo(x):
            left = [(g, f) for (g, f) in table if f == m]
            right = [(g, f) for (g, f) in table if g == m]
            if table.get((m, m)) == m and all(table[k] == k[0] for k in left) \
                    and all(table[k] == k[1] for k in right):
                units[x] = m
                break
        else:
            raise PresentationError("no identity can be inferred at %(x)s", code='unresolved', params={'x': x})
    return units


def _category(fields, block, morphisms_key='morphisms', compose_key='compose', name=None):
    objects = _names(_required(fields, 'objects', block))
    decls = _decls(_required(fields, morphisms_key, block), '->')
    for mor, dom, cod in decls:
        for end in (dom, cod):
            if end.text not in objects:
                raise _unresolved(end, 'object')
    morphisms = {mor.text: p.Morphism(mor.text, dom.text, cod.text) for mor, dom, cod in decls}
    raw = _required(fields, compose_key, block)
    compose = _mapping(raw, morphisms, morphisms, pair=True)
    _check_pairs(raw, lambda g, f: morphisms[f].cod == morphisms[g].dom)
    if 'identity' in fields:
        identity = _mapping(fields['identity'][1], objects, morphisms)
    else:
        identity = _infer_units(objects, lambda x: [m for m, v in morphisms.items() if v.dom == v.cod == x],
                                compose)
    return p.FiniteCategory(objects=tuple(objects), morphisms=tuple(morphisms.values()), identity=identity,
                            compose=compose, groupoid=_flag(fields, 'groupoid'), name=name or block.text)


def _two_category(fields, block):
    base = _category(fields, block, 'cells1', 'hcompose1', name=f"{block.text}_1")
    decls = _decls(_required(fields, 'cells2', block), '=>')
    cells = {}
    for name, dom, cod in decls:
        for end in (dom, cod):
            if not base.has(end.text):
                raise _unresolved(end, '1-cell')
        cells[name.text] = p.Cell2(name.text, dom.text, cod.text)
    raw_v = _required(fields, 'vcompose2', block)
    raw_h = _required(fields, 'hcompose2', block)
    vcompose2 = _mapping(raw_v, cells, cells, pair=True)
    hcompose2 = _mapping(raw_h, cells, cells, pair=True)
    _check_pairs(raw_v, lambda psi, phi: cells[phi].cod == cells[psi].dom)
    _check_pairs(raw_h, lambda psi, phi: base.cod(cells[phi].dom) == base.dom(cells[psi].dom))
    if 'id2' in fields:
        id2 = _mapping(fields['id2'][1], base.names, cells)
    else:
        id2 = _infer_units(base.names, lambda a: [c for c, v in cells.items() if v.dom == v.cod == a], vcompose2)
    return p.Strict2Category(base=base, cells2=tuple(cells.values()), id2=id2, vcompose2=vcompose2,
                             hcompose2=hcompose2, name=block.text)


class Interpreter:
    def __init__(self):
        self.env = {}

    def resolve(self, name, kinds):
        if not isinstance(name, Name):
            raise PresentationError("expected a reference", code='shape')
        value = self.env.get(name.text)
        if value is None:
            raise _unresolved(name, 'reference')
        if not isinstance(value, kinds):
            raise PresentationError("%(name)s has the wrong kind", code='kind', params={'name': name.text})
        return value

    def run(self, blocks):
        out = {}
        for kind, name, body in blocks:
            if name.text in self.env:
                raise _duplicate(name)
            if isinstance(body, dict):
                value = self.expand(kind, name, body)
            else:
                value = self.derive(body)
                expected = _KIND_TYPES[kind.text]
                if not isinstance(value, expected):
                    raise PresentationError("block %(name)s is declared %(kind)s", code='kind',
                                            params={'name': name.text, 'kind': kind.text})
                value = _renamed(value, name.text)
            self.env[name.text] = value
            out[name.text] = value
        return out

    def expand(self, kind, block, fields):
        k = kind.text
        if k == 'category':
            _check_fields(fields, {'objects', 'morphisms', 'identity', 'compose', 'groupoid'}, block)
            return _category(fields, block)
        if k == 'two_category':
            _check_fields(fields, {'objects', 'cells1', 'identity', 'hcompose1', 'cells2', 'id2',
                                   'vcompose2', 'hcompose2', 'groupoid'}, block)
            return _two_category(fields, block)
        if k == 'decorated':
            _check_fields(fields, {'decoration', 'bicat'}, block)
            return p.DecoratedBicategory(
                decoration=self.resolve(_required(fields, 'decoration', block), p.FiniteCategory),
                bicat=self.resolve(_required(fields, 'bicat', block), p.Strict2Category),
                name=block.text)
        if k == 'double':
            _check_fields(fields, {'horizontal', 'vertical', 'squares', 'vcomp', 'hcomp', 'vid', 'hid'}, block)
            return self.double(fields, block)
        if k == 'pseudofunctor':
            _check_fields(fields, {'source', 'target', 'objects', 'morphisms', 'cells1', 'cells2'}, block)
            source = self.resolve(_required(fields, 'source', block), p.DecoratedBicategory)
            target = self.resolve(_required(fields, 'target', block), p.DecoratedBicategory)
            return p.DecoratedPseudofunctor(
                source=source, target=target,
                on_objects=_mapping(_required(fields, 'objects', block), source.decoration.objects,
                                    target.decoration.objects),
                on_morphisms=_mapping(_required(fields, 'morphisms', block), source.decoration.names,
                                      target.decoration.names),
                on_cells1=_mapping(_required(fields, 'cells1', block), source.bicat.base.names,
                                   target.bicat.base.names),
                on_cells2=_mapping(_required(fields, 'cells2', block), {c.name for c in source.bicat.cells2},
                                   {c.name for c in target.bicat.cells2}),
                name=block.text)
        if k == 'double_functor':
            _check_fields(fields, {'source', 'target', 'objects', 'hmor', 'vmor', 'squares'}, block)
            source = self.resolve(_required(fields, 'source', block), p.DoubleCategory)
            target = self.resolve(_required(fields, 'target', block), p.DoubleCategory)
            return DoubleFunctor(
                source=source, target=target,
                on_objects=_mapping(_required(fields, 'objects', block), source.objects, target.objects),
                on_hmor=_mapping(_required(fields, 'hmor', block), source.horizontal.names,
                                 target.horizontal.names),
                on_vmor=_mapping(_required(fields, 'vmor', block), source.vertical.names, target.vertical.names),
                on_squares=_mapping(_required(fields, 'squares', block), source.square_names,
                                    target.square_names),
                name=block.text)
        raise PresentationError("block kind %(kind)s has no expanded form", code='kind', params={'kind': k})

    def double(self, fields, block):
        hor = self.resolve(_required(fields, 'horizontal', block), p.FiniteCategory)
        ver = self.resolve(_required(fields, 'vertical', block), p.FiniteCategory)
        raw = _required(fields, 'squares', block)
        if not isinstance(raw, list):
            raise PresentationError("expected a list of squares", code='shape')
        squares = {}
        for item in raw:
            if not isinstance(item, Decl) or not isinstance(item.parts, tuple) or len(item.parts) != 4:
                raise PresentationError("expected squares of the form s: (top, bottom, left, right)",
                                        code='shape')
            if item.name.text in squares:
                raise _duplicate(item.name)
            top, bottom, left, right = item.parts
            for end, cat in ((top, hor), (bottom, hor), (left, ver), (right, ver)):
                if not isinstance(end, Name) or not cat.has(end.text):
                    raise _unresolved(end if isinstance(end, Name) else item.name, 'boundary')
            squares[item.name.text] = p.Square(item.name.text, top.text, bottom.text, left.text, right.text)
        raw_v = _required(fields, 'vcomp', block)
        raw_h = _required(fields, 'hcomp', block)
        vcomp = _mapping(raw_v, squares, squares, pair=True)
        hcomp = _mapping(raw_h, squares, squares, pair=True)
        _check_pairs(raw_v, lambda psi, phi: squares[phi].bottom == squares[psi].top)
        _check_pairs(raw_h, lambda psi, phi: squares[phi].right == squares[psi].left)
        return p.DoubleCategory(
            horizontal=hor, vertical=ver, squares=tuple(squares.values()), vcomp=vcomp, hcomp=hcomp,
            vid=_mapping(_required(fields, 'vid', block), hor.names, squares),
            hid=_mapping(_required(fields, 'hid', block), ver.names, squares),
            name=block.text)

    def derive(self, call):
        if isinstance(call, Name):
            value = self.env.get(call.text)
            if value is None:
                raise _unresolved(call, 'reference')
            return value
        func = call.func.text
        if func in ('cyclic', 'symmetric'):
            if not call.args or not all(isinstance(a, Name) for a in call.args) or not call.args[0].text.isdigit():
                raise PresentationError("%(func)s needs an order", code='shape', params={'func': func})
            order = int(call.args[0].text)
            if func == 'symmetric':
                return p.symmetric_group(order)
            return p.cyclic_group(order, [a.text for a in call.args[1:]] or None)
        if func == 'klein':
            return p.klein_four_group()
        if func == 'arrow':
            return p.arrow_category()
        if func == 'discrete':
            return p.discrete_category([a.text for a in call.args])
        constructors = {
            'delooping': (p.delooping, (p.FiniteGroup,)),
            'double_delooping': (p.double_delooping, (p.FiniteGroup,)),
            'locally_discrete': (p.locally_discrete, (p.FiniteCategory,)),
            'quintets': (p.quintets, (p.Strict2Category,)),
            'commuting_squares': (p.commuting_squares, (p.FiniteCategory,)),
            'redecorate': (p.redecorate_by_group, (p.DoubleCategory, p.FiniteGroup)),
            'h_star': (h_star, (p.DoubleCategory,)),
            'gamma': (gamma, (p.DoubleCategory,)),
            'labelled': (p.vertical_labelling, (p.FiniteCategory, p.FiniteGroup)),
        }
        if func not in constructors:
            raise _unresolved(call.func, 'constructor')
        builder, kinds = constructors[func]
        if len(call.args) != len(kinds):
            raise PresentationError("%(func)s takes %(n)s arguments", code='shape',
                                    params={'func': func, 'n': len(kinds)})
        args = []
        for arg, kind in zip(call.args, kinds):
            value = self.derive(arg)
            if not isinstance(value, kind):
                raise PresentationError("argument of %(func)s has the wrong kind", code='kind',
                                        params={'func': func})
            args.append(value)
        return builder(*args)


_KIND_TYPES = {
    'group': p.FiniteGroup,
    'category': p.FiniteCategory,
    'two_category': p.Strict2Category,
    'decorated': p.DecoratedBicategory,
    'double': p.DoubleCategory,
    'pseudofunctor': p.DecoratedPseudofunctor,
    'double_functor': DoubleFunctor,
}


def _renamed(value, name):
    return replace(value, name=name)


def parse_document(text):
    """All blocks of a document, by name, in source order."""
    blocks = Parser(text).document()
    values = Interpreter().run(blocks)
    logger.debug("parsed %d blocks", len(values))
    return values


def parse_presentation(text):
    values = parse_document(text)
    if not values:
        raise PresentationError("empty document", code='empty')
    return list(values.values())[-1]


def load_presentation(path):
    return parse_presentation(Path(path).read_text(encoding='utf-8'))


def load_document(path):
    return parse_document(Path(path).read_text(encoding='utf-8'))


# Canonical rendering

def _ident(name, fallback):
    name = re.sub(r"[^\w'.|@]", '_', name or '') or fallback
    return name


def _pairs(table):
    return [f"({g}, {f}): {h}" for (g, f), h in sorted(table.items())]


def _singles(table):
    return [f"{k}: {v}" for k, v in sorted(table.items())]


def _block(kind, name, fields):
    out = [f"{kind} {name} {{"]
    for key, entries, is_map in fields:
        if isinstance(entries, str):
            out.append(f"  {key}: {entries};")
            continue
        open_, close = ('{', '}') if is_map else ('[', ']')
        if not entries:
            out.append(f"  {key}: {open_}{close};")
            continue
        out.append(f"  {key}: {open_}")
        out.extend(f"    {e}," for e in entries[:-1])
        out.append(f"    {entries[-1]}")
        out.append(f"  {close};")
    out.append("}")
    return "\n".join(out)


def _render_category(C, name):
    fields = [
        ('objects', list(C.objects), False),
        ('morphisms', [f"{m.name}: {m.dom}->{m.cod}" for m in C.morphisms], False),
        ('identity', _singles(C.identity), True),
        ('compose', _pairs(C.compose), True),
    ]
    if C.groupoid:
        fields.append(('groupoid', 'true', False))
    return [_block('category', name, fields)]


def _render_two_category(S, name):
    base = S.base
    fields = [
        ('objects', list(base.objects), False),
        ('cells1', [f"{m.name}: {m.dom}->{m.cod}" for m in base.morphisms], False),
        ('identity', _singles(base.identity), True),
        ('hcompose1', _pairs(base.compose), True),
        ('cells2', [f"{c.name}: {c.dom}=>{c.cod}" for c in S.cells2], False),
        ('id2', _singles(S.id2), True),
        ('vcompose2', _pairs(S.vcompose2), True),
        ('hcompose2', _pairs(S.hcompose2), True),
    ]
    if base.groupoid:
        fields.append(('groupoid', 'true', False))
    return [_block('two_category', name, fields)]


def _render_decorated(B, name):
    return [
        *_render_category(B.decoration, f"{name}_star"),
        *_render_two_category(B.bicat, f"{name}_bicat"),
        _block('decorated', name, [('decoration', f"{name}_star", False), ('bicat', f"{name}_bicat", False)]),
    ]


def _render_double(C, name):
    fields = [
        ('horizontal', f"{name}_h", False),
        ('vertical', f"{name}_v", False),
        ('squares', [f"{s.name}: ({s.top}, {s.bottom}, {s.left}, {s.right})" for s in C.squares], False),
        ('vcomp', _pairs(C.vcomp), True),
        ('hcomp', _pairs(C.hcomp), True),
        ('vid', _singles(C.vid), True),
        ('hid', _singles(C.hid), True),
    ]
    return [*_render_category(C.horizontal, f"{name}_h"), *_render_category(C.vertical, f"{name}_v"),
            _block('double', name, fields)]


def _render_pseudofunctor(G, name):
    return [
        *_render_decorated(G.source, f"{name}_src"),
        *_render_decorated(G.target, f"{name}_tgt"),
        _block('pseudofunctor', name, [
            ('source', f"{name}_src", False), ('target', f"{name}_tgt", False),
            ('objects', _singles(G.on_objects), True), ('morphisms', _singles(G.on_morphisms), True),
            ('cells1', _singles(G.on_cells1), True), ('cells2', _singles(G.on_cells2), True),
        ]),
    ]


def _render_double_functor(T, name):
    return [
        *_render_double(T.source, f"{name}_src"),
        *_render_double(T.target, f"{name}_tgt"),
        _block('double_functor', name, [
            ('source', f"{name}_src", False), ('target', f"{name}_tgt", False),
            ('objects', _singles(T.on_objects), True), ('hmor', _singles(T.on_hmor), True),
            ('vmor', _singles(T.on_vmor), True), ('squares', _singles(T.on_squares), True),
        ]),
    ]


_RENDERERS = (
    (p.FiniteCategory, _render_category, 'C'),
    (p.Strict2Category, _render_two_category, 'S'),
    (p.DecoratedBicategory, _render_decorated, 'B'),
    (p.DoubleCategory, _render_double, 'D'),
    (p.DecoratedPseudofunctor, _render_pseudofunctor, 'G'),
    (DoubleFunctor, _render_double_functor, 'T'),
)


def render(value, name=None):
    """Canonical expanded text of ``value``; ``parse_presentation`` reads it back."""
    for kind, renderer, fallback in _RENDERERS:
        if isinstance(value, kind):
            return "\n\n".join(renderer(value, _ident(name or value.name, fallback))) + "\n"
    raise PresentationError("%(kind)s cannot be rendered", code='kind', params={'kind': type(value).__name__})
