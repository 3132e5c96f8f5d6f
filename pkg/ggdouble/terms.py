"""Square terms of the free globularly generated double category.

A term is a generator, a horizontal word (binary tree) or a vertical path.
Boundaries and layers are computed once by a ``TermFactory`` bound to a
decorated bicategory and cached on the term; they never take part in
equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dsl import tokenize
from .exceptions import ParseError, TermError


@dataclass(frozen=True, order=True)
class Glob:
    cell: str


@dataclass(frozen=True, order=True)
class HId:
    mor: str


@dataclass(frozen=True)
class Boundary:
    top: str
    bottom: str
    left: str
    right: str


@dataclass(frozen=True)
class Term:
    boundary: Boundary = field(default=None, compare=False, repr=False, kw_only=True)
    layer: int = field(default=1, compare=False, repr=False, kw_only=True)
    size: int = field(default=1, compare=False, repr=False, kw_only=True)
    weight: int = field(default=1, compare=False, repr=False, kw_only=True)

    @property
    def top(self):
        return self.boundary.top

    @property
    def bottom(self):
        return self.boundary.bottom

    @property
    def left(self):
        return self.boundary.left

    @property
    def right(self):
        return self.boundary.right

    @property
    def hlayer(self):
        return self.layer

    def __str__(self):
        return render_term(self)


@dataclass(frozen=True)
class Gen(Term):
    generator: Glob | HId


@dataclass(frozen=True)
class HWord(Term):
    left_term: Term
    right_term: Term

    def leaves(self):
        out = []
        stack = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, HWord):
                stack.append(node.right_term)
                stack.append(node.left_term)
            else:
                out.append(node)
        return out


@dataclass(frozen=True)
class VPath(Term):
    items: tuple[Term, ...]

    @property
    def hlayer(self):
        return self.layer + 1


def leaves(term):
    return term.leaves() if isinstance(term, HWord) else [term]


def _word_layer(term):
    if isinstance(term, VPath):
        return term.layer + 1
    return term.layer


class TermFactory:
    """Builds boundary-checked terms over a decorated bicategory."""

    def __init__(self, B):
        self.B = B
        self.decoration = B.decoration
        self.bicat = B.bicat
        self.base = B.bicat.base

    def glob(self, cell):
        if not self.bicat.has(cell):
            raise TermError("unknown 2-cell %(cell)s", code='unknown', params={'cell': cell})
        c = self.bicat.cell(cell)
        x, y = self.base.dom(c.dom), self.base.cod(c.dom)
        weight = 0 if self.bicat.is_identity2(cell) else 1
        boundary = Boundary(c.dom, c.cod, self.decoration.identity[x], self.decoration.identity[y])
        return Gen(Glob(cell), boundary=boundary, weight=weight)

    def hid(self, mor):
        if not self.decoration.has(mor):
            raise TermError("unknown vertical morphism %(mor)s", code='unknown', params={'mor': mor})
        x, y = self.decoration.dom(mor), self.decoration.cod(mor)
        weight = 0 if self.decoration.is_identity(mor) else 1
        boundary = Boundary(self.base.identity[x], self.base.identity[y], mor, mor)
        return Gen(HId(mor), boundary=boundary, weight=weight)

    def gen(self, generator):
        if isinstance(generator, Glob):
            return self.glob(generator.cell)
        return self.hid(generator.mor)

    def hword(self, left, right):
        if left.right != right.left:
            raise TermError("%(r)s is not horizontally composable after %(l)s", code='incompatible',
                            params={'l': render_term(left), 'r': render_term(right)})
        boundary = Boundary(self.base.comp(right.top, left.top), self.base.comp(right.bottom, left.bottom),
                            left.left, right.right)
        return HWord(left, right, boundary=boundary, layer=max(_word_layer(left), _word_layer(right)),
                     size=left.size + right.size, weight=left.weight + right.weight)

    def word(self, terms):
        """Right comb over ``terms``."""
        terms = list(terms)
        result = terms[-1]
        for term in reversed(terms[:-1]):
            result = self.hword(term, result)
        return result

    def vpath(self, items):
        items = tuple(items)
        if len(items) < 2:
            raise TermError("a vertical path needs at least two items", code='short_path')
        for upper, lower in zip(items, items[1:]):
            if upper.bottom != lower.top:
                raise TermError("%(l)s is not vertically composable below %(u)s", code='incompatible',
                                params={'u': render_term(upper), 'l': render_term(lower)})
        left = self.decoration.composite([t.left for t in items])
        right = self.decoration.composite([t.right for t in items])
        boundary = Boundary(items[0].top, items[-1].bottom, left, right)
        return VPath(items, boundary=boundary, layer=max(t.layer for t in items),
                     size=sum(t.size for t in items), weight=sum(t.weight for t in items))

    def generators(self):
        out = [self.glob(c.name) for c in self.bicat.cells2]
        out.extend(self.hid(m) for m in self.decoration.names)
        return out

    def rebuild(self, term):
        """Recompute the cached data of a term built elsewhere."""
        if isinstance(term, Gen):
            return self.gen(term.generator)
        if isinstance(term, HWord):
            return self.hword(self.rebuild(term.left_term), self.rebuild(term.right_term))
        return self.vpath([self.rebuild(t) for t in term.items])

    def is_vertical_unit(self, term):
        return isinstance(term, Gen) and isinstance(term.generator, Glob) \
            and self.bicat.is_identity2(term.generator.cell)

    def is_horizontal_unit(self, term):
        if not isinstance(term, Gen):
            return False
        if isinstance(term.generator, HId):
            return True
        cell = self.bicat.cell(term.generator.cell)
        return self.bicat.is_identity2(cell.name) and self.base.is_identity(cell.dom)


def render_term(term):
    if isinstance(term, Gen):
        if isinstance(term.generator, Glob):
            return f"(g {term.generator.cell})"
        return f"(id {term.generator.mor})"
    if isinstance(term, HWord):
        return f"(h {render_term(term.left_term)} {render_term(term.right_term)})"
    return "(v " + " ".join(render_term(t) for t in term.items) + ")"


def sort_key(term):
    return (term.weight, term.size, render_term(term))


def parse_term(text, factory):
    """Read the s-expression form, e.g. ``(v (h (g phi) (id f)) (g psi))``."""
    tokens = tokenize(text)
    position = 0

    def expect(value):
        nonlocal position
        token = tokens[position]
        if token.text != value or token.kind == 'end':
            raise ParseError("expected %(value)r", token.line, token.column, params={'value': value})
        position += 1

    def name():
        nonlocal position
        token = tokens[position]
        if token.kind != 'ident':
            raise ParseError("expected a name", token.line, token.column)
        position += 1
        return token

    def term():
        nonlocal position
        expect('(')
        head = name()
        if head.text == 'g':
            result = factory.glob(name().text)
        elif head.text == 'id':
            result = factory.hid(name().text)
        elif head.text in ('h', 'v'):
            parts = []
            while tokens[position].text == '(':
                parts.append(term())
            if len(parts) < 2:
                raise ParseError("%(head)s needs at least two terms", head.line, head.column,
                                 params={'head': head.text})
            result = factory.word(parts) if head.text == 'h' else factory.vpath(parts)
        else:
            raise ParseError("unknown term constructor %(head)r", head.line, head.column,
                             params={'head': head.text})
        expect(')')
        return result

    result = term()
    if tokens[position].kind != 'end':
        token = tokens[position]
        raise ParseError("trailing input", token.line, token.column)
    return result
