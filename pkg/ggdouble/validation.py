"""Exhaustive axiom checking for presentations.

``validate`` never raises on a broken table: every failed law becomes a
``Violation`` carrying a concrete witness tuple.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import singledispatch

from .presentations import (
    DecoratedBicategory, DecoratedPseudofunctor, DoubleCategory, FiniteCategory, Strict2Category,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    where: str = ''

    def to_dict(self):
        return {'law': self.law, 'witness': list(self.witness), 'where': self.where}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, law, *witness, where=''):
        self.violations.append(Violation(law, tuple(witness), where))

    def extend(self, other, where=''):
        for v in other.violations:
            self.violations.append(Violation(v.law, v.witness, f"{where}.{v.where}" if v.where else where))

    def laws(self):
        return sorted({v.law for v in self.violations})

    def to_dict(self):
        return {'valid': self.ok, 'violations': [v.to_dict() for v in self.violations]}


@singledispatch
def validate(value):
    raise TypeError(f"cannot validate {type(value).__name__}")


def _check_table(report, table, composable, where):
    """Table must be defined exactly on the composable pairs."""
    for pair in table:
        if pair not in composable:
            report.add('non-composable pair', *pair, where=where)
    for pair in composable:
        if pair not in table:
            report.add('partial composition', *pair, where=where)


@validate.register
def _(value: FiniteCategory):
    report = ValidationReport()
    names = set(value.names)
    objects = set(value.objects)
    for m in value.morphisms:
        if m.dom not in objects or m.cod not in objects:
            report.add('unknown object', m.name, m.dom, m.cod)
    for x in value.objects:
        ident = value.identity.get(x)
        if ident is None or ident not in names:
            report.add('missing identity', x)
        elif value.dom(ident) != x or value.cod(ident) != x:
            report.add('identity boundary', x, ident)
    if not report.ok:
        return report

    composable = set(value.composable_pairs())
    _check_table(report, value.compose, composable, 'compose')
    for (g, f), h in value.compose.items():
        if (g, f) not in composable:
            continue
        if h not in names or value.dom(h) != value.dom(f) or value.cod(h) != value.cod(g):
            report.add('composite boundary', g, f, h)
    if not report.ok:
        return report

    for m in value.morphisms:
        if (value.comp(m.name, value.identity[m.dom]) != m.name
                or value.comp(value.identity[m.cod], m.name) != m.name):
            report.add('identity/inverse law', m.name, value.identity[m.dom])
    for h, g, f in itertools.product(value.morphisms, repeat=3):
        if f.cod != g.dom or g.cod != h.dom:
            continue
        left = value.comp(value.comp(h.name, g.name), f.name)
        right = value.comp(h.name, value.comp(g.name, f.name))
        if left != right:
            report.add('associativity', h.name, g.name, f.name)

    if value.groupoid:
        for m in value.morphisms:
            if value.inverse(m.name) is None:
                report.add('identity/inverse law', m.name, m.name)
        # composition in a groupoid is cancellative
        for f in value.morphisms:
            seen = {}
            for g in value.names:
                if value.dom(g) != f.cod:
                    continue
                h = value.comp(g, f.name)
                if h in seen:
                    report.add('identity/inverse law', f.name, seen[h], g)
                seen[h] = g
    if report.violations:
        logger.debug("category %s: %d violations", value.name, len(report.violations))
    return report


@validate.register
def _(value: Strict2Category):
    report = ValidationReport()
    base = value.base
    report.extend(validate(base), 'cells1')
    if not report.ok:
        return report
    for c in value.cells2:
        if not base.has(c.dom) or not base.has(c.cod):
            report.add('unknown 1-cell', c.name, c.dom, c.cod)
        elif base.dom(c.dom) != base.dom(c.cod) or base.cod(c.dom) != base.cod(c.cod):
            report.add('parallel', c.name, c.dom, c.cod)
    for a in base.names:
        ident = value.id2.get(a)
        if ident is None or not value.has(ident):
            report.add('missing identity', a, where='id2')
        elif value.cell(ident).dom != a or value.cell(ident).cod != a:
            report.add('identity boundary', a, ident, where='id2')
    if not report.ok:
        return report

    cells = value.cells2
    vpairs = {(psi.name, phi.name) for phi, psi in itertools.product(cells, repeat=2) if phi.cod == psi.dom}
    hpairs = {(psi.name, phi.name) for phi, psi in itertools.product(cells, repeat=2)
              if value.tgt(phi.name) == value.src(psi.name)}
    _check_table(report, value.vcompose2, vpairs, 'vcompose2')
    _check_table(report, value.hcompose2, hpairs, 'hcompose2')
    if not report.ok:
        return report

    for (psi, phi), r in value.vcompose2.items():
        if not value.has(r) or value.cell(r).dom != value.cell(phi).dom or value.cell(r).cod != value.cell(psi).cod:
            report.add('composite boundary', psi, phi, r, where='vcompose2')
    for (psi, phi), r in value.hcompose2.items():
        p, q = value.cell(psi), value.cell(phi)
        if (not value.has(r) or value.cell(r).dom != base.comp(p.dom, q.dom)
                or value.cell(r).cod != base.comp(p.cod, q.cod)):
            report.add('composite boundary', psi, phi, r, where='hcompose2')
    if not report.ok:
        return report

    v, h, id2 = value.vcompose2, value.hcompose2, value.id2
    for c in cells:
        if v[(c.name, id2[c.dom])] != c.name or v[(id2[c.cod], c.name)] != c.name:
            report.add('identity/inverse law', c.name, where='vcompose2')
        unit_src, unit_tgt = id2[base.identity[value.src(c.name)]], id2[base.identity[value.tgt(c.name)]]
        if h[(c.name, unit_src)] != c.name or h[(unit_tgt, c.name)] != c.name:
            report.add('identity/inverse law', c.name, where='hcompose2')
    for (g, f), gf in base.compose.items():
        if h[(id2[g], id2[f])] != id2[gf]:
            report.add('identity functoriality', g, f, where='hcompose2')
    for x, y, z in itertools.product(cells, repeat=3):
        if x.cod == y.dom and y.cod == z.dom:
            if v[(v[(z.name, y.name)], x.name)] != v[(z.name, v[(y.name, x.name)])]:
                report.add('associativity', z.name, y.name, x.name, where='vcompose2')
        if value.tgt(x.name) == value.src(y.name) and value.tgt(y.name) == value.src(z.name):
            if h[(h[(z.name, y.name)], x.name)] != h[(z.name, h[(y.name, x.name)])]:
                report.add('associativity', z.name, y.name, x.name, where='hcompose2')

    for (phi2, phi), (psi2, psi) in itertools.product(sorted(vpairs), repeat=2):
        if value.tgt(phi) != value.src(psi):
            continue
        left = h[(v[(psi2, psi)], v[(phi2, phi)])]
        right = v[(h[(psi2, phi2)], h[(psi, phi)])]
        if left != right:
            report.add('interchange', psi2, psi, phi2, phi)
    return report


@validate.register
def _(value: DecoratedBicategory):
    report = ValidationReport()
    report.extend(validate(value.decoration), 'decoration')
    report.extend(validate(value.bicat), 'bicat')
    if set(value.decoration.objects) != set(value.bicat.cells0):
        report.add('decoration objects', *sorted(set(value.decoration.objects) ^ set(value.bicat.cells0)))
    return report


def _square_corners(C, s):
    hor, ver = C.horizontal, C.vertical
    return (hor.dom(s.top) == ver.dom(s.left) and hor.cod(s.top) == ver.dom(s.right)
            and hor.dom(s.bottom) == ver.cod(s.left) and hor.cod(s.bottom) == ver.cod(s.right))


@validate.register
def _(value: DoubleCategory):
    report = ValidationReport()
    hor, ver = value.horizontal, value.vertical
    report.extend(validate(hor), 'horizontal')
    report.extend(validate(ver), 'vertical')
    if set(hor.objects) != set(ver.objects):
        report.add('object sets differ', *sorted(set(hor.objects) ^ set(ver.objects)))
    if not report.ok:
        return report
    for s in value.squares:
        if not (hor.has(s.top) and hor.has(s.bottom) and ver.has(s.left) and ver.has(s.right)):
            report.add('unknown boundary', s.name)
        elif not _square_corners(value, s):
            report.add('square corners', s.name)
    for a in hor.names:
        sq = value.vid.get(a)
        if sq is None or not value.has(sq):
            report.add('missing identity', a, where='vid')
            continue
        s = value.square(sq)
        if (s.top, s.bottom) != (a, a) or not (ver.is_identity(s.left) and ver.is_identity(s.right)):
            report.add('identity boundary', a, sq, where='vid')
    for f in ver.names:
        sq = value.hid.get(f)
        if sq is None or not value.has(sq):
            report.add('missing identity', f, where='hid')
            continue
        s = value.square(sq)
        if (s.left, s.right) != (f, f) or not (hor.is_identity(s.top) and hor.is_identity(s.bottom)):
            report.add('identity boundary', f, sq, where='hid')
    if not report.ok:
        return report

    squares = value.squares
    vpairs = {(psi.name, phi.name) for phi, psi in itertools.product(squares, repeat=2) if phi.bottom == psi.top}
    hpairs = {(psi.name, phi.name) for phi, psi in itertools.product(squares, repeat=2) if phi.right == psi.left}
    _check_table(report, value.vcomp, vpairs, 'vcomp')
    _check_table(report, value.hcomp, hpairs, 'hcomp')
    if not report.ok:
        return report
    for (psi, phi), r in value.vcomp.items():
        p, q = value.square(psi), value.square(phi)
        expected = (q.top, p.bottom, ver.comp(p.left, q.left), ver.comp(p.right, q.right))
        if not value.has(r) or _boundary(value.square(r)) != expected:
            report.add('composite boundary', psi, phi, r, where='vcomp')
    for (psi, phi), r in value.hcomp.items():
        p, q = value.square(psi), value.square(phi)
        expected = (hor.comp(p.top, q.top), hor.comp(p.bottom, q.bottom), q.left, p.right)
        if not value.has(r) or _boundary(value.square(r)) != expected:
            report.add('composite boundary', psi, phi, r, where='hcomp')
    if not report.ok:
        return report

    v, h = value.vcomp, value.hcomp
    for s in squares:
        if v[(s.name, value.vid[s.top])] != s.name or v[(value.vid[s.bottom], s.name)] != s.name:
            report.add('identity/inverse law', s.name, where='vcomp')
        if h[(s.name, value.hid[s.left])] != s.name or h[(value.hid[s.right], s.name)] != s.name:
            report.add('identity/inverse law', s.name, where='hcomp')
    for (g, f), gf in ver.compose.items():
        if v[(value.hid[g], value.hid[f])] != value.hid[gf]:
            report.add('identity functoriality', g, f, where='hid')
    for (b, a), ba in hor.compose.items():
        if h[(value.vid[b], value.vid[a])] != value.vid[ba]:
            report.add('identity functoriality', b, a, where='vid')
    for x in hor.objects:
        if value.hid[ver.identity[x]] != value.vid[hor.identity[x]]:
            report.add('identity functoriality', x, where='units')
    for x, y, z in itertools.product(squares, repeat=3):
        if x.bottom == y.top and y.bottom == z.top:
            if v[(v[(z.name, y.name)], x.name)] != v[(z.name, v[(y.name, x.name)])]:
                report.add('associativity', z.name, y.name, x.name, where='vcomp')
        if x.right == y.left and y.right == z.left:
            if h[(h[(z.name, y.name)], x.name)] != h[(z.name, h[(y.name, x.name)])]:
                report.add('associativity', z.name, y.name, x.name, where='hcomp')
    for (phi2, phi), (psi2, psi) in itertools.product(sorted(vpairs), repeat=2):
        if value.square(phi).right != value.square(psi).left or value.square(phi2).right != value.square(psi2).left:
            continue
        left = h[(v[(psi2, psi)], v[(phi2, phi)])]
        right = v[(h[(psi2, phi2)], h[(psi, phi)])]
        if left != right:
            report.add('interchange', psi2, psi, phi2, phi)
    return report


def _boundary(s):
    return (s.top, s.bottom, s.left, s.right)


@validate.register
def _(value: DecoratedPseudofunctor):
    report = ValidationReport()
    src, tgt = value.source, value.target
    sdec, tdec = src.decoration, tgt.decoration
    sb, tb = src.bicat, tgt.bicat
    for x in sdec.objects:
        if value.on_objects.get(x) not in tdec.objects:
            report.add('unmapped', x, where='objects')
    for m in sdec.names:
        if not tdec.has(value.on_morphisms.get(m, '')):
            report.add('unmapped', m, where='morphisms')
    for a in sb.base.names:
        if not tb.base.has(value.on_cells1.get(a, '')):
            report.add('unmapped', a, where='cells1')
    for c in sb.cells2:
        if not tb.has(value.on_cells2.get(c.name, '')):
            report.add('unmapped', c.name, where='cells2')
    if not report.ok:
        return report

    F0, Fm, F1, F2 = value.on_objects, value.on_morphisms, value.on_cells1, value.on_cells2
    for cat, tcat, fmap, where in ((sdec, tdec, Fm, 'morphisms'), (sb.base, tb.base, F1, 'cells1')):
        for m in cat.morphisms:
            if tcat.dom(fmap[m.name]) != F0[m.dom] or tcat.cod(fmap[m.name]) != F0[m.cod]:
                report.add('boundary', m.name, where=where)
        for x in cat.objects:
            if fmap[cat.identity[x]] != tcat.identity[F0[x]]:
                report.add('identity', x, where=where)
        for (g, f), gf in cat.compose.items():
            if tcat.compose.get((fmap[g], fmap[f])) != fmap[gf]:
                report.add('composition', g, f, where=where)
    for c in sb.cells2:
        image = tb.cell(F2[c.name])
        if image.dom != F1[c.dom] or image.cod != F1[c.cod]:
            report.add('boundary', c.name, where='cells2')
    for a, ida in sb.id2.items():
        if F2[ida] != tb.id2[F1[a]]:
            report.add('identity', a, where='cells2')
    for table, ttable, where in ((sb.vcompose2, tb.vcompose2, 'vcompose2'), (sb.hcompose2, tb.hcompose2, 'hcompose2')):
        for (psi, phi), r in table.items():
            if ttable.get((F2[psi], F2[phi])) != F2[r]:
                report.add('composition', psi, phi, where=where)
    return report
