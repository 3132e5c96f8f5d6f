"""Structural calculus on finite double categories."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Mapping

from django.conf import settings

from .exceptions import FunctorError
from .presentations import (
    Cell2, DecoratedBicategory, DecoratedPseudofunctor, DoubleCategory, Strict2Category,
)
from .validation import ValidationReport, validate

logger = logging.getLogger(__name__)


def h_star(C):
    """Decorated horizontalization: the vertical category together with the
    bicategory of globular squares."""
    globular = set(C.globular_squares())
    bicat = Strict2Category(
        base=C.horizontal,
        cells2=tuple(Cell2(s.name, s.top, s.bottom) for s in C.squares if s.name in globular),
        id2=dict(C.vid),
        vcompose2={k: v for k, v in C.vcomp.items() if k[0] in globular and k[1] in globular},
        hcompose2={k: v for k, v in C.hcomp.items() if k[0] in globular and k[1] in globular},
        name=f"H_{C.name}",
    )
    return DecoratedBicategory(decoration=C.vertical, bicat=bicat, name=f"Hstar_{C.name}")


def close(seed, tables):
    """Smallest superset of ``seed`` closed under the given composition tables."""
    members = set(seed)
    frontier = sorted(members)
    while frontier:
        current = sorted(members)
        fresh = set()
        for x in frontier:
            for y in current:
                for table in tables:
                    for key in ((x, y), (y, x)):
                        result = table.get(key)
                        if result is not None and result not in members:
                            fresh.add(result)
        members |= fresh
        frontier = sorted(fresh)
    return frozenset(members)


def gamma(C):
    """The globularly generated piece of ``C``."""
    squares = close(C.generators(), (C.vcomp, C.hcomp))
    logger.debug("gamma(%s): %d of %d squares", C.name, len(squares), len(C.squares))
    return C.restrict(squares, name=f"gamma_{C.name}")


def is_globularly_generated(C):
    return len(gamma(C).squares) == len(C.squares)


@dataclass(frozen=True)
class Filtration:
    layers: tuple[tuple[frozenset, frozenset], ...]
    stabilized_at: int | None
    kmax: int

    def hset(self, k):
        if k > len(self.layers):
            return self.layers[-1][1]
        return self.layers[k - 1][0]

    def vset(self, k):
        return self.layers[min(k, len(self.layers)) - 1][1]

    def to_dict(self):
        return {
            'layers': [{'k': k, 'H': sorted(h), 'V': sorted(v)} for k, (h, v) in enumerate(self.layers, start=1)],
            'stabilized_at': self.stabilized_at if self.stabilized_at is not None else 'not within bound',
            'kmax': self.kmax,
        }


def vertical_filtration(C, kmax=None):
    """Hset_1 is the horizontal closure of the generators, Vset_k the vertical
    closure of Hset_k and Hset_{k+1} the horizontal closure of Vset_k."""
    kmax = kmax or settings.GGD_KMAX
    target = frozenset(gamma(C).square_names)
    layers = []
    hset = close(C.generators(), (C.hcomp,))
    stabilized_at = None
    for k in range(1, kmax + 1):
        vset = close(hset, (C.vcomp,))
        layers.append((hset, vset))
        logger.debug("filtration %s k=%d |H|=%d |V|=%d", C.name, k, len(hset), len(vset))
        if vset == target:
            stabilized_at = k
            break
        hset = close(vset, (C.hcomp,))
    return Filtration(layers=tuple(layers), stabilized_at=stabilized_at, kmax=kmax)


def length(C, kmax=None):
    """Length of ``C``, i.e. of its globularly generated piece; ``None`` when
    the filtration does not stabilize within ``kmax`` layers."""
    return vertical_filtration(C, kmax).stabilized_at


@dataclass(frozen=True)
class GroupoidCheck:
    ok: bool
    witness: str | None = None
    reason: str = ''

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {'double_groupoid': self.ok, 'witness': self.witness, 'reason': self.reason}


def vertical_inverse(C, name):
    s = C.square(name)
    for t in C.squares:
        if t.top == s.bottom and t.bottom == s.top:
            if C.vcomp.get((t.name, name)) == C.vid[s.top] and C.vcomp.get((name, t.name)) == C.vid[s.bottom]:
                return t.name
    return None


def horizontal_inverse(C, name):
    s = C.square(name)
    for t in C.squares:
        if t.left == s.right and t.right == s.left:
            if C.hcomp.get((t.name, name)) == C.hid[s.left] and C.hcomp.get((name, t.name)) == C.hid[s.right]:
                return t.name
    return None


def is_double_groupoid(C):
    """The witness is always a square: the identity square on a non-invertible
    morphism, or a square with no inverse."""
    for cat, identities, reason in ((C.horizontal, C.vid, 'horizontal morphism'),
                                    (C.vertical, C.hid, 'vertical morphism')):
        for m in cat.names:
            if cat.inverse(m) is None:
                return GroupoidCheck(False, identities[m], f"square on a non-invertible {reason} {m}")
    for s in C.square_names:
        if vertical_inverse(C, s) is None:
            return GroupoidCheck(False, s, 'no vertical inverse')
        if horizontal_inverse(C, s) is None:
            return GroupoidCheck(False, s, 'no horizontal inverse')
    return GroupoidCheck(True)


@dataclass(frozen=True)
class MinimalityResult:
    status: str
    witness: tuple = ()
    searched: int = 0

    def to_dict(self):
        return {'status': self.status, 'witness': list(self.witness), 'searched': self.searched}


def _is_sub_double_category(C, names):
    keep = set(names)
    if not set(C.vid.values()) <= keep or not set(C.hid.values()) <= keep:
        return False
    for table in (C.vcomp, C.hcomp):
        for (x, y), r in table.items():
            if x in keep and y in keep and r not in keep:
                return False
    return True


def gamma_minimality(C, threshold=None):
    """Search ``gamma(C)`` for a proper sub double category with the same
    decorated horizontalization."""
    threshold = threshold or settings.GGD_MINIMALITY_THRESHOLD
    piece = gamma(C)
    names = piece.square_names
    if len(names) > threshold:
        return MinimalityResult('not attempted')
    target = h_star(C)
    searched = 0
    for size in range(len(names)):
        for subset in itertools.combinations(names, size):
            searched += 1
            if _is_sub_double_category(piece, subset) and h_star(piece.restrict(subset)) == target:
                return MinimalityResult('not minimal', tuple(subset), searched)
    return MinimalityResult('minimal', (), searched)


# Double functors

@dataclass(frozen=True)
class DoubleFunctor:
    source: DoubleCategory
    target: DoubleCategory
    on_objects: Mapping[str, str]
    on_hmor: Mapping[str, str]
    on_vmor: Mapping[str, str]
    on_squares: Mapping[str, str]
    name: str = field(default='', compare=False)

    def __post_init__(self):
        for attr in ('on_objects', 'on_hmor', 'on_vmor', 'on_squares'):
            object.__setattr__(self, attr, dict(sorted(getattr(self, attr).items())))

    def __call__(self, square):
        return self.on_squares[square]

    def key(self):
        return tuple(self.on_squares.items())


@validate.register
def _(value: DoubleFunctor):
    report = ValidationReport()
    src, tgt = value.source, value.target
    F0, Fh, Fv, Fs = value.on_objects, value.on_hmor, value.on_vmor, value.on_squares
    for domain, image, fmap, where in ((src.objects, tgt.objects, F0, 'objects'),
                                       (src.horizontal.names, tgt.horizontal.names, Fh, 'hmor'),
                                       (src.vertical.names, tgt.vertical.names, Fv, 'vmor'),
                                       (src.square_names, tgt.square_names, Fs, 'squares')):
        for x in domain:
            if fmap.get(x) not in image:
                report.add('unmapped', x, where=where)
    if not report.ok:
        return report
    for cat, tcat, fmap, where in ((src.horizontal, tgt.horizontal, Fh, 'hmor'),
                                   (src.vertical, tgt.vertical, Fv, 'vmor')):
        for m in cat.morphisms:
            if tcat.dom(fmap[m.name]) != F0[m.dom] or tcat.cod(fmap[m.name]) != F0[m.cod]:
                report.add('boundary', m.name, where=where)
        for x in cat.objects:
            if fmap[cat.identity[x]] != tcat.identity[F0[x]]:
                report.add('identity', x, where=where)
        for (g, f), gf in cat.compose.items():
            if tcat.compose.get((fmap[g], fmap[f])) != fmap[gf]:
                report.add('composition', g, f, where=where)
    for s in src.squares:
        t = tgt.square(Fs[s.name])
        if (t.top, t.bottom, t.left, t.right) != (Fh[s.top], Fh[s.bottom], Fv[s.left], Fv[s.right]):
            report.add('boundary', s.name, where='squares')
    for table, ttable, where in ((src.vcomp, tgt.vcomp, 'vcomp'), (src.hcomp, tgt.hcomp, 'hcomp')):
        for (psi, phi), r in table.items():
            if ttable.get((Fs[psi], Fs[phi])) != Fs[r]:
                report.add('composition', psi, phi, where=where)
    for a, s in src.vid.items():
        if Fs[s] != tgt.vid[Fh[a]]:
            report.add('identity', a, where='vid')
    for f, s in src.hid.items():
        if Fs[s] != tgt.hid[Fv[f]]:
            report.add('identity', f, where='hid')
    return report


def identity_double_functor(C):
    return DoubleFunctor(
        source=C, target=C,
        on_objects={x: x for x in C.objects},
        on_hmor={m: m for m in C.horizontal.names},
        on_vmor={m: m for m in C.vertical.names},
        on_squares={s: s for s in C.square_names},
        name=f"id_{C.name}",
    )


def compose_double_functors(T2, T1):
    """``T2`` after ``T1``."""
    if T1.target != T2.source:
        raise FunctorError("codomain of %(t1)s is not the domain of %(t2)s", code='boundary_mismatch',
                           params={'t1': T1.name, 't2': T2.name})
    return DoubleFunctor(
        source=T1.source, target=T2.target,
        on_objects={k: T2.on_objects[v] for k, v in T1.on_objects.items()},
        on_hmor={k: T2.on_hmor[v] for k, v in T1.on_hmor.items()},
        on_vmor={k: T2.on_vmor[v] for k, v in T1.on_vmor.items()},
        on_squares={k: T2.on_squares[v] for k, v in T1.on_squares.items()},
        name=f"{T2.name}.{T1.name}",
    )


def h_star_functor(T):
    """The decorated pseudofunctor ``H*T``."""
    globular = set(T.source.globular_squares())
    return DecoratedPseudofunctor(
        source=h_star(T.source), target=h_star(T.target),
        on_objects=T.on_objects,
        on_morphisms=T.on_vmor,
        on_cells1=T.on_hmor,
        on_cells2={s: t for s, t in T.on_squares.items() if s in globular},
        name=f"Hstar_{T.name}",
    )


def _category_functors(A, B, on_objects, order=None):
    """All functors A -> B extending the object map, by backtracking."""
    morphisms = list(order or A.morphisms)
    assignment = {}

    def consistent(m):
        for (g, f), gf in A.compose.items():
            if m.name in (g, f, gf) and g in assignment and f in assignment and gf in assignment:
                if B.compose.get((assignment[g], assignment[f])) != assignment[gf]:
                    return False
        return True

    def extend(i):
        if i == len(morphisms):
            yield dict(assignment)
            return
        m = morphisms[i]
        if A.is_identity(m.name):
            candidates = (B.identity[on_objects[m.dom]],)
        else:
            candidates = B.hom(on_objects[m.dom], on_objects[m.cod])
        for candidate in candidates:
            assignment[m.name] = candidate
            if consistent(m):
                yield from extend(i + 1)
            del assignment[m.name]

    yield from extend(0)


def _square_maps(C, D, Fh, Fv, shuffle=None):
    by_boundary = {}
    for s in D.squares:
        by_boundary.setdefault((s.top, s.bottom, s.left, s.right), []).append(s.name)
    squares = list(C.squares)
    assignment = {}

    def consistent(name):
        for table, dtable in ((C.vcomp, D.vcomp), (C.hcomp, D.hcomp)):
            for (psi, phi), r in table.items():
                if name in (psi, phi, r) and psi in assignment and phi in assignment and r in assignment:
                    if dtable.get((assignment[psi], assignment[phi])) != assignment[r]:
                        return False
        return True

    def extend(i):
        if i == len(squares):
            yield dict(assignment)
            return
        s = squares[i]
        candidates = list(by_boundary.get((Fh[s.top], Fh[s.bottom], Fv[s.left], Fv[s.right]), ()))
        if shuffle:
            shuffle(candidates)
        for candidate in candidates:
            assignment[s.name] = candidate
            if consistent(s.name):
                yield from extend(i + 1)
            del assignment[s.name]

    yield from extend(0)


def double_functors(C, D, rng=None):
    """Every double functor ``C -> D``; with ``rng`` the square choices are
    visited in a seeded random order."""
    shuffle = rng.shuffle if rng is not None else None
    object_maps = itertools.product(D.objects, repeat=len(C.objects))
    for images in object_maps:
        F0 = dict(zip(C.objects, images))
        for Fv in _category_functors(C.vertical, D.vertical, F0):
            for Fh in _category_functors(C.horizontal, D.horizontal, F0):
                for Fs in _square_maps(C, D, Fh, Fv, shuffle):
                    T = DoubleFunctor(C, D, F0, Fh, Fv, Fs)
                    if validate(T).ok:
                        yield T
