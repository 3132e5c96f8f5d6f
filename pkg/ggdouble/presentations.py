"""Finite presentations: categories, strict 2-categories, decorated bicategories,
double categories and the functors between them.

Every value is a frozen dataclass whose component lists are sorted on
construction, so two values compare equal exactly when they are structurally
equal. Names of the values themselves (``name``) never take part in equality.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Mapping

from .exceptions import GroupError

logger = logging.getLogger(__name__)


def _sorted_map(mapping):
    return dict(sorted(mapping.items()))


@dataclass(frozen=True, order=True)
class Morphism:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True)
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identity: Mapping[str, str]
    compose: Mapping[tuple[str, str], str]
    groupoid: bool = False
    name: str = field(default='', compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'objects', tuple(sorted(set(self.objects))))
        object.__setattr__(self, 'morphisms', tuple(sorted(set(self.morphisms))))
        object.__setattr__(self, 'identity', _sorted_map(self.identity))
        object.__setattr__(self, 'compose', _sorted_map(self.compose))
        object.__setattr__(self, '_index', {m.name: m for m in self.morphisms})

    def mor(self, name):
        return self._index[name]

    def has(self, name):
        return name in self._index

    @property
    def names(self):
        return tuple(m.name for m in self.morphisms)

    def dom(self, name):
        return self._index[name].dom

    def cod(self, name):
        return self._index[name].cod

    def composable(self, g, f):
        return self.cod(f) == self.dom(g)

    def comp(self, g, f):
        """g after f."""
        return self.compose[(g, f)]

    def composite(self, path):
        """Composite of a path listed in order of application."""
        result = path[0]
        for step in path[1:]:
            result = self.comp(step, result)
        return result

    def is_identity(self, name):
        return self.identity.get(self.dom(name)) == name

    def hom(self, x, y):
        return tuple(m.name for m in self.morphisms if m.dom == x and m.cod == y)

    def inverse(self, name):
        m = self._index[name]
        for candidate in self.hom(m.cod, m.dom):
            if (self.compose.get((candidate, name)) == self.identity.get(m.dom)
                    and self.compose.get((name, candidate)) == self.identity.get(m.cod)):
                return candidate
        return None

    def composable_pairs(self):
        for g, f in itertools.product(self.morphisms, repeat=2):
            if f.cod == g.dom:
                yield g.name, f.name


@dataclass(frozen=True, order=True)
class Cell2:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True)
class Strict2Category:
    """A strict 2-category: ``base`` carries the 0-cells, the 1-cells, their
    identities and their (horizontal) composition."""
    base: FiniteCategory
    cells2: tuple[Cell2, ...]
    id2: Mapping[str, str]
    vcompose2: Mapping[tuple[str, str], str]
    hcompose2: Mapping[tuple[str, str], str]
    name: str = field(default='', compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'cells2', tuple(sorted(set(self.cells2))))
        object.__setattr__(self, 'id2', _sorted_map(self.id2))
        object.__setattr__(self, 'vcompose2', _sorted_map(self.vcompose2))
        object.__setattr__(self, 'hcompose2', _sorted_map(self.hcompose2))
        object.__setattr__(self, '_index', {c.name: c for c in self.cells2})

    @property
    def cells0(self):
        return self.base.objects

    @property
    def cells1(self):
        return self.base.morphisms

    @property
    def id1(self):
        return self.base.identity

    @property
    def hcompose1(self):
        return self.base.compose

    def cell(self, name):
        return self._index[name]

    def has(self, name):
        return name in self._index

    def src(self, cell2):
        return self.base.dom(self._index[cell2].dom)

    def tgt(self, cell2):
        return self.base.cod(self._index[cell2].dom)

    def is_identity2(self, name):
        return self.id2.get(self._index[name].dom) == name

    def vertical_inverse(self, name):
        c = self._index[name]
        for other in self.cells2:
            if other.dom == c.cod and other.cod == c.dom:
                if (self.vcompose2.get((other.name, name)) == self.id2[c.dom]
                        and self.vcompose2.get((name, other.name)) == self.id2[c.cod]):
                    return other.name
        return None

    def horizontal_inverse(self, name):
        c = self._index[name]
        x, y = self.src(name), self.tgt(name)
        for other in self.cells2:
            if self.src(other.name) != y or self.tgt(other.name) != x:
                continue
            left = self.hcompose2.get((other.name, name))
            right = self.hcompose2.get((name, other.name))
            if left == self.id2[self.id1[x]] and right == self.id2[self.id1[y]]:
                return other.name
        return None


@dataclass(frozen=True)
class DecoratedBicategory:
    decoration: FiniteCategory
    bicat: Strict2Category
    name: str = field(default='', compare=False)

    def is_2groupoid(self):
        """Decoration a groupoid, 1-cells invertible, 2-cells invertible both ways."""
        if any(self.decoration.inverse(m) is None for m in self.decoration.names):
            return False
        if any(self.bicat.base.inverse(m) is None for m in self.bicat.base.names):
            return False
        return all(self.bicat.vertical_inverse(c.name) is not None
                   and self.bicat.horizontal_inverse(c.name) is not None
                   for c in self.bicat.cells2)

    def single_object_groups(self):
        """``(G, A)`` names when this is ``(ΩG, 2ΩA)``: one object, one 1-cell,
        a group of vertical morphisms and abelian 2-cells; otherwise ``None``."""
        bicat = self.bicat
        if len(bicat.cells0) != 1 or len(bicat.cells1) != 1:
            return None
        if len(self.decoration.objects) != 1 or not self.is_2groupoid():
            return None
        return self.decoration.names, tuple(c.name for c in bicat.cells2)


@dataclass(frozen=True, order=True)
class Square:
    name: str
    top: str
    bottom: str
    left: str
    right: str


@dataclass(frozen=True)
class DoubleCategory:
    """``horizontal`` and ``vertical`` share their objects. ``vcomp[(psi, phi)]``
    stacks ``psi`` below ``phi``; ``hcomp[(psi, phi)]`` places ``psi`` to the
    right of ``phi``."""
    horizontal: FiniteCategory
    vertical: FiniteCategory
    squares: tuple[Square, ...]
    vcomp: Mapping[tuple[str, str], str]
    hcomp: Mapping[tuple[str, str], str]
    vid: Mapping[str, str]
    hid: Mapping[str, str]
    name: str = field(default='', compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'squares', tuple(sorted(set(self.squares))))
        object.__setattr__(self, 'vcomp', _sorted_map(self.vcomp))
        object.__setattr__(self, 'hcomp', _sorted_map(self.hcomp))
        object.__setattr__(self, 'vid', _sorted_map(self.vid))
        object.__setattr__(self, 'hid', _sorted_map(self.hid))
        object.__setattr__(self, '_index', {s.name: s for s in self.squares})

    @property
    def objects(self):
        return self.horizontal.objects

    def square(self, name):
        return self._index[name]

    def has(self, name):
        return name in self._index

    @property
    def square_names(self):
        return tuple(s.name for s in self.squares)

    def is_globular(self, name):
        s = self._index[name]
        return self.vertical.is_identity(s.left) and self.vertical.is_identity(s.right)

    def globular_squares(self):
        return tuple(s.name for s in self.squares if self.is_globular(s.name))

    def generators(self):
        """Globular squares together with the horizontal identities."""
        return tuple(sorted(set(self.globular_squares()) | set(self.hid.values())))

    def v_composable(self, psi, phi):
        return self._index[phi].bottom == self._index[psi].top

    def h_composable(self, psi, phi):
        return self._index[phi].right == self._index[psi].left

    def restrict(self, names, name=''):
        """Sub double category on the given squares; tables are restricted."""
        keep = set(names)
        return DoubleCategory(
            horizontal=self.horizontal,
            vertical=self.vertical,
            squares=tuple(s for s in self.squares if s.name in keep),
            vcomp={k: v for k, v in self.vcomp.items() if k[0] in keep and k[1] in keep},
            hcomp={k: v for k, v in self.hcomp.items() if k[0] in keep and k[1] in keep},
            vid=self.vid,
            hid=self.hid,
            name=name or self.name,
        )


@dataclass(frozen=True)
class DecoratedPseudofunctor:
    source: DecoratedBicategory
    target: DecoratedBicategory
    on_objects: Mapping[str, str]
    on_morphisms: Mapping[str, str]
    on_cells1: Mapping[str, str]
    on_cells2: Mapping[str, str]
    name: str = field(default='', compare=False)

    def __post_init__(self):
        for attr in ('on_objects', 'on_morphisms', 'on_cells1', 'on_cells2'):
            object.__setattr__(self, attr, _sorted_map(getattr(self, attr)))


def identity_pseudofunctor(B):
    bicat = B.bicat
    return DecoratedPseudofunctor(
        source=B, target=B,
        on_objects={x: x for x in bicat.cells0},
        on_morphisms={m: m for m in B.decoration.names},
        on_cells1={a: a for a in bicat.base.names},
        on_cells2={c.name: c.name for c in bicat.cells2},
        name=f"id_{B.name}",
    )


def compose_pseudofunctors(G2, G1):
    """``G2`` after ``G1``."""
    return DecoratedPseudofunctor(
        source=G1.source, target=G2.target,
        on_objects={k: G2.on_objects[v] for k, v in G1.on_objects.items()},
        on_morphisms={k: G2.on_morphisms[v] for k, v in G1.on_morphisms.items()},
        on_cells1={k: G2.on_cells1[v] for k, v in G1.on_cells1.items()},
        on_cells2={k: G2.on_cells2[v] for k, v in G1.on_cells2.items()},
        name=f"{G2.name}.{G1.name}",
    )


# Finite groups

@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple[str, ...]
    unit: str
    table: Mapping[tuple[str, str], str]
    name: str = field(default='', compare=False)

    def mul(self, x, y):
        return self.table[(x, y)]

    def inverse(self, x):
        for y in self.elements:
            if self.table[(x, y)] == self.unit:
                return y
        raise GroupError("element %(x)s has no inverse", code='non_invertible', params={'x': x})

    def is_abelian(self):
        return all(self.table[(x, y)] == self.table[(y, x)]
                   for x, y in itertools.product(self.elements, repeat=2))


def check_group(G):
    elements = set(G.elements)
    for x, y in itertools.product(G.elements, repeat=2):
        if (x, y) not in G.table or G.table[(x, y)] not in elements:
            raise GroupError("table of %(g)s is not total at (%(x)s, %(y)s)",
                             code='partial', params={'g': G.name, 'x': x, 'y': y})
    for x in G.elements:
        if G.table[(G.unit, x)] != x or G.table[(x, G.unit)] != x:
            raise GroupError("%(u)s is not a unit for %(x)s", code='unit',
                             params={'u': G.unit, 'x': x})
    for x, y, z in itertools.product(G.elements, repeat=3):
        if G.table[(G.table[(x, y)], z)] != G.table[(x, G.table[(y, z)])]:
            raise GroupError("non-associative at (%(x)s, %(y)s, %(z)s)", code='associativity',
                             params={'x': x, 'y': y, 'z': z})
    for x in G.elements:
        G.inverse(x)
    return G


def cyclic_group(n, names=None):
    names = tuple(names) if names else tuple(str(i) for i in range(n))
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return FiniteGroup(elements=names, unit=names[0], table=table, name=f"Z{n}")


def klein_four_group():
    names = ('e', 'a', 'b', 'c')
    bits = {'e': 0, 'a': 1, 'b': 2, 'c': 3}
    table = {(x, y): names[bits[x] ^ bits[y]] for x in names for y in names}
    return FiniteGroup(elements=names, unit='e', table=table, name='V4')


def symmetric_group(n):
    perms = list(itertools.permutations(range(n)))
    label = {p: ''.join(str(i) for i in p) for p in perms}
    # (p, q) -> p after q
    table = {(label[p], label[q]): label[tuple(p[q[i]] for i in range(n))]
             for p in perms for q in perms}
    return FiniteGroup(elements=tuple(label[p] for p in perms), unit=label[tuple(range(n))],
                       table=table, name=f"S{n}")


# Constructions

def delooping(G, obj='x'):
    """ΩG: one object, one morphism per element, composition = multiplication."""
    check_group(G)
    return FiniteCategory(
        objects=(obj,),
        morphisms=tuple(Morphism(g, obj, obj) for g in G.elements),
        identity={obj: G.unit},
        compose=dict(G.table),
        groupoid=True,
        name=f"Omega_{G.name}",
    )


def point_category(obj='x', arrow='i'):
    return FiniteCategory(objects=(obj,), morphisms=(Morphism(arrow, obj, obj),),
                          identity={obj: arrow}, compose={(arrow, arrow): arrow},
                          groupoid=True, name='point')


def double_delooping(A, obj='x', arrow='i'):
    """2ΩA: one 0-cell, one 1-cell, 2-cells the elements of the abelian group A."""
    check_group(A)
    if not A.is_abelian():
        raise GroupError("%(g)s is non-abelian", code='non_abelian', params={'g': A.name})
    return Strict2Category(
        base=point_category(obj, arrow),
        cells2=tuple(Cell2(a, arrow, arrow) for a in A.elements),
        id2={arrow: A.unit},
        vcompose2=dict(A.table),
        hcompose2=dict(A.table),
        name=f"2Omega_{A.name}",
    )


def arrow_category(a='a', b='b', arrow='u'):
    return FiniteCategory(
        objects=(a, b),
        morphisms=(Morphism(f"1{a}", a, a), Morphism(f"1{b}", b, b), Morphism(arrow, a, b)),
        identity={a: f"1{a}", b: f"1{b}"},
        compose={(f"1{a}", f"1{a}"): f"1{a}", (f"1{b}", f"1{b}"): f"1{b}",
                 (arrow, f"1{a}"): arrow, (f"1{b}", arrow): arrow},
        name='arrow',
    )


def discrete_category(objects):
    return FiniteCategory(
        objects=tuple(objects),
        morphisms=tuple(Morphism(f"1{x}", x, x) for x in objects),
        identity={x: f"1{x}" for x in objects},
        compose={(f"1{x}", f"1{x}"): f"1{x}" for x in objects},
        groupoid=True,
        name='discrete',
    )


def locally_discrete(D):
    """A category seen as a strict 2-category with identity 2-cells only."""
    cells2 = tuple(Cell2(f"1_{m.name}", m.name, m.name) for m in D.morphisms)
    vcompose2 = {(f"1_{m.name}", f"1_{m.name}"): f"1_{m.name}" for m in D.morphisms}
    hcompose2 = {(f"1_{g}", f"1_{f}"): f"1_{h}" for (g, f), h in D.compose.items()}
    return Strict2Category(base=D, cells2=cells2, id2={m.name: f"1_{m.name}" for m in D.morphisms},
                           vcompose2=vcompose2, hcompose2=hcompose2, name=f"ld_{D.name}")


def quintet_name(sigma, alpha, a, b, f, g):
    if sigma.base.is_identity(f) and sigma.base.is_identity(g):
        return alpha
    return f"{alpha}|{a}|{b}|{f}|{g}"


def quintets(sigma):
    """Ehresmann quintets: a square (top a, bottom b, left f, right g) is a
    2-cell ``g∘a ⇒ b∘f``."""
    base = sigma.base
    by_boundary = {}
    for c in sigma.cells2:
        by_boundary.setdefault((c.dom, c.cod), []).append(c.name)

    records = {}
    for a, f, g in itertools.product(base.morphisms, repeat=3):
        if f.dom != a.dom or g.dom != a.cod:
            continue
        for b in base.hom(f.cod, g.cod):
            dom, cod = base.comp(g.name, a.name), base.comp(b, f.name)
            for alpha in by_boundary.get((dom, cod), ()):
                name = quintet_name(sigma, alpha, a.name, b, f.name, g.name)
                records[name] = (alpha, Square(name, a.name, b, f.name, g.name))

    def whisker(left_cell, right_cell):
        return sigma.hcompose2[(left_cell, right_cell)]

    vcomp, hcomp = {}, {}
    for (alpha, phi), (beta, psi) in itertools.product(records.values(), repeat=2):
        if phi.bottom == psi.top:
            # g'∘g∘a ⇒ g'∘b∘f ⇒ c∘f'∘f
            first = whisker(sigma.id2[psi.right], alpha)
            second = whisker(beta, sigma.id2[phi.left])
            cell = sigma.vcompose2[(second, first)]
            left, right = base.comp(psi.left, phi.left), base.comp(psi.right, phi.right)
            vcomp[(psi.name, phi.name)] = quintet_name(sigma, cell, phi.top, psi.bottom, left, right)
        if phi.right == psi.left:
            # h∘a'∘a ⇒ b'∘g∘a ⇒ b'∘b∘f
            first = whisker(beta, sigma.id2[phi.top])
            second = whisker(sigma.id2[psi.bottom], alpha)
            cell = sigma.vcompose2[(second, first)]
            top, bottom = base.comp(psi.top, phi.top), base.comp(psi.bottom, phi.bottom)
            hcomp[(psi.name, phi.name)] = quintet_name(sigma, cell, top, bottom, phi.left, psi.right)

    vid = {a: sigma.id2[a] for a in base.names}
    hid = {}
    for f in base.morphisms:
        idx, idz = base.identity[f.dom], base.identity[f.cod]
        hid[f.name] = quintet_name(sigma, sigma.id2[f.name], idx, idz, f.name, f.name)

    logger.debug("quintets(%s): %d squares", sigma.name, len(records))
    return DoubleCategory(
        horizontal=base, vertical=base,
        squares=tuple(sq for _, sq in records.values()),
        vcomp=vcomp, hcomp=hcomp, vid=vid, hid=hid,
        name=f"Q_{sigma.name}",
    )


def commuting_squares(D):
    """Squares (top t, bottom b, left l, right r) of D with ``b∘l = r∘t``."""
    squares = {}
    for t, l, r in itertools.product(D.morphisms, repeat=3):
        if l.dom != t.dom or r.dom != t.cod:
            continue
        for b in D.hom(l.cod, r.cod):
            if D.comp(b, l.name) == D.comp(r.name, t.name):
                name = f"{t.name}|{b}|{l.name}|{r.name}"
                squares[name] = Square(name, t.name, b, l.name, r.name)

    def named(t, b, l, r):
        return f"{t}|{b}|{l}|{r}"

    vcomp, hcomp = {}, {}
    for phi, psi in itertools.product(squares.values(), repeat=2):
        if phi.bottom == psi.top:
            vcomp[(psi.name, phi.name)] = named(phi.top, psi.bottom, D.comp(psi.left, phi.left),
                                                D.comp(psi.right, phi.right))
        if phi.right == psi.left:
            hcomp[(psi.name, phi.name)] = named(D.comp(psi.top, phi.top), D.comp(psi.bottom, phi.bottom),
                                                phi.left, psi.right)
    vid = {m.name: named(m.name, m.name, D.identity[m.dom], D.identity[m.cod]) for m in D.morphisms}
    hid = {m.name: named(D.identity[m.dom], D.identity[m.cod], m.name, m.name) for m in D.morphisms}
    return DoubleCategory(horizontal=D, vertical=D, squares=tuple(squares.values()),
                          vcomp=vcomp, hcomp=hcomp, vid=vid, hid=hid, name=f"Sq_{D.name}")


def redecorate_by_group(D, G):
    """Re-decorate a one-object, one-horizontal-morphism double category whose
    squares form an abelian group by the group ``G``: squares become pairs
    ``(s, g)`` with both vertical sides ``g``."""
    if len(D.objects) != 1 or len(D.horizontal.morphisms) != 1 or len(D.vertical.morphisms) != 1:
        raise GroupError("redecoration needs a single object, horizontal and vertical morphism",
                         code='shape')
    if any(D.vcomp[(x, y)] != D.vcomp[(y, x)]
           for x, y in itertools.product(D.square_names, repeat=2)):
        raise GroupError("squares of %(d)s are non-abelian", code='non_abelian', params={'d': D.name})
    check_group(G)
    obj, arrow = D.objects[0], D.horizontal.names[0]

    def named(s, g):
        return s if g == G.unit else f"{s}@{g}"

    pairs = list(itertools.product(D.square_names, G.elements))
    squares = tuple(Square(named(s, g), arrow, arrow, g, g) for s, g in pairs)
    vcomp, hcomp = {}, {}
    for (s1, g1), (s2, g2) in itertools.product(pairs, repeat=2):
        vcomp[(named(s2, g2), named(s1, g1))] = named(D.vcomp[(s2, s1)], G.mul(g2, g1))
        if g1 == g2:
            hcomp[(named(s2, g2), named(s1, g1))] = named(D.vcomp[(s2, s1)], g1)
    unit_square = D.vid[arrow]
    return DoubleCategory(
        horizontal=D.horizontal, vertical=delooping(G, obj),
        squares=squares, vcomp=vcomp, hcomp=hcomp,
        vid={arrow: unit_square},
        hid={g: named(unit_square, g) for g in G.elements},
        name=f"{D.name}_by_{G.name}",
    )


def vertical_labelling(D, A):
    """Squares ``f@a`` for a morphism ``f`` of ``D`` and an element ``a`` of the
    abelian group ``A``; both vertical sides are ``f`` and the horizontal
    morphisms are identities only."""
    check_group(A)
    if not A.is_abelian():
        raise GroupError("%(g)s is non-abelian", code='non_abelian', params={'g': A.name})
    horizontal = discrete_category(D.objects)

    def named(f, a):
        return f"{f}@{a}"

    squares = tuple(Square(named(m.name, a), horizontal.identity[m.dom], horizontal.identity[m.cod],
                           m.name, m.name)
                    for m in D.morphisms for a in A.elements)
    vcomp, hcomp = {}, {}
    for (g, f), h in D.compose.items():
        for a1, a2 in itertools.product(A.elements, repeat=2):
            vcomp[(named(g, a2), named(f, a1))] = named(h, A.mul(a1, a2))
    for m in D.morphisms:
        for a1, a2 in itertools.product(A.elements, repeat=2):
            hcomp[(named(m.name, a2), named(m.name, a1))] = named(m.name, A.mul(a1, a2))
    return DoubleCategory(
        horizontal=horizontal, vertical=D, squares=squares, vcomp=vcomp, hcomp=hcomp,
        vid={horizontal.identity[x]: named(D.identity[x], A.unit) for x in D.objects},
        hid={m.name: named(m.name, A.unit) for m in D.morphisms},
        name=f"{D.name}_labelled_{A.name}",
    )
