"""Relation kinds, their signature contributions and concrete instances."""
from __future__ import annotations

import re
import shlex
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .homology import (CurveTable, UnknownCurveError, act_on_homology, form_matrix,
                       intersection)
from .words import EMPTY_DEFS, DefinitionTable, Word, expand_definitions, parse_word, render_word


class Kind(Enum):
    BRAID = ("Braid", 0)
    COMMUTE = ("Commute", 0)
    CHAIN_C2 = ("ChainC2", -7)
    CHAIN_C3 = ("ChainC3", -6)
    LANTERN = ("Lantern", 1)
    STAR = ("Star", -5)
    TORUS_ORDER = ("TorusOrder", 0)
    CONJUGATION_DEF = ("ConjugationDef", 0)

    def __init__(self, tag, signature):
        self.tag = tag
        self.signature = signature

    @classmethod
    def lookup(cls, tag: str) -> "Kind":
        for k in cls:
            if k.tag.lower() == tag.lower():
                return k
        raise KeyError(f"unknown relation kind {tag!r}")


def builtin_kinds() -> list:
    return list(Kind)


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class RelationInstance:
    name: str
    kind: Kind
    lhs: Word
    rhs: Word

    @property
    def relator(self) -> Word:
        """``lhs . rhs^-1``, the reading that contributes ``+I`` to a ledger."""
        from .words import invert
        return tuple(self.lhs) + invert(self.rhs)

    # lanterns are written interior = boundary
    @property
    def interior(self) -> tuple:
        return tuple(a.curve for a in self.lhs) if self.kind is Kind.LANTERN else ()

    @property
    def boundary(self) -> Counter:
        return Counter(a.curve for a in self.rhs) if self.kind is Kind.LANTERN else Counter()

    def render(self) -> str:
        return (f'relation {self.name} kind {self.kind.tag} '
                f'lhs "{render_word(self.lhs)}" rhs "{render_word(self.rhs)}"')


def relation(name, kind, lhs, rhs) -> RelationInstance:
    if isinstance(kind, str):
        kind = Kind.lookup(kind)
    if isinstance(lhs, str):
        lhs = parse_word(lhs)
    if isinstance(rhs, str):
        rhs = parse_word(rhs)
    return RelationInstance(name, kind, tuple(lhs), tuple(rhs))


def instance_curves(r: RelationInstance, defs: DefinitionTable = EMPTY_DEFS) -> list:
    names = []
    for a in expand_definitions(r.lhs + r.rhs, defs):
        if a.curve not in names:
            names.append(a.curve)
    return names


def curve_class(name: str, table: CurveTable, defs: DefinitionTable = EMPTY_DEFS) -> np.ndarray:
    """Homology class (up to sign) of a base or defined curve."""
    if name not in defs:
        return table[name]
    from .words import Letter
    M = act_on_homology((Letter(name, 1),), table, defs)
    n = len(M)
    J = form_matrix(n // 2)
    N = M - np.eye(n, dtype=np.int64)
    if not N.any():
        return np.zeros(n, dtype=np.int64)
    # N = c (Jc)^T, so N[2m+1, 2m] = c_{2m+1}^2 and N[2m, 2m+1] = -c_{2m}^2
    sq = np.empty(n, dtype=np.int64)
    sq[0::2] = -np.diag(N, 1)[0::2]
    sq[1::2] = np.diag(N, -1)[0::2]
    lead = int(np.flatnonzero(sq)[0]) if sq.any() else None
    if lead is None or sq[lead] < 0:
        raise RelationError(f"{name} does not act as a twist")
    c_lead = int(round(sq[lead] ** 0.5))
    partner = lead + 1 if lead % 2 == 0 else lead - 1
    jc_partner = -c_lead if lead % 2 == 0 else c_lead
    col = N[:, partner]
    if np.any(col % jc_partner):
        raise RelationError(f"{name} does not act as a twist")
    c = col // jc_partner
    if not np.array_equal(np.outer(c, J @ c), N):
        raise RelationError(f"{name} does not act as a twist")
    return c


def _form(a, b, table, defs):
    return intersection(curve_class(a, table, defs), curve_class(b, table, defs))


def _split_power(w: Word, n: int):
    if len(w) % n:
        return None
    k = len(w) // n
    block = w[:k]
    return block if tuple(block) * n == tuple(w) else None


def shape_ok(r: RelationInstance, table: CurveTable, defs: DefinitionTable = EMPTY_DEFS) -> bool:
    lhs, rhs = r.lhs, r.rhs
    pos = all(a.sign > 0 for a in lhs + rhs)
    names = [a.curve for a in lhs]
    f = lambda a, b: _form(a, b, table, defs)
    if r.kind is Kind.BRAID:
        if len(lhs) != 3 or len(rhs) != 3 or not pos:
            return False
        a, b = names[0], names[1]
        return (names[2] == a and [x.curve for x in rhs] == [b, a, b] and a != b
                and abs(f(a, b)) == 1)
    if r.kind is Kind.COMMUTE:
        if len(lhs) != 2 or len(rhs) != 2 or not pos:
            return False
        a, b = names
        return [x.curve for x in rhs] == [b, a] and f(a, b) == 0 and table.disjoint(a, b)
    if r.kind in (Kind.CHAIN_C2, Kind.TORUS_ORDER):
        block = _split_power(lhs, 6)
        if block is None or len(block) != 2 or not pos:
            return False
        if r.kind is Kind.TORUS_ORDER:
            return len(rhs) == 0 and table.genus == 1 and abs(f(block[0].curve, block[1].curve)) == 1
        return (len(rhs) == 1 and abs(f(block[0].curve, block[1].curve)) == 1
                and not curve_class(rhs[0].curve, table, defs).any())
    if r.kind is Kind.CHAIN_C3:
        if len(rhs) != 2 or not pos:
            return False
        b4 = _split_power(lhs, 4)
        b3 = _split_power(lhs, 3)
        if b4 is not None and len(b4) == 3:
            a, b, c = (x.curve for x in b4)
        elif b3 is not None and len(b3) == 4 and b3[0] == b3[2]:
            b, a, _, c = (x.curve for x in b3)
        else:
            return False
        return abs(f(a, b)) == 1 and abs(f(b, c)) == 1 and f(a, c) == 0
    if r.kind is Kind.LANTERN:
        if len(lhs) != 3 or len(rhs) != 4 or not pos:
            return False
        inner = [x.curve for x in lhs]
        outer = [x.curve for x in rhs]
        if any(f(x, y) for x in outer for y in outer + inner):
            return False
        return all(f(x, y) == 0 for x in inner for y in inner)
    if r.kind is Kind.STAR:
        block = _split_power(lhs, 3)
        if block is None or len(block) != 4 or len(rhs) != 3 or not pos:
            return False
        *alphas, beta = (x.curve for x in block)
        return (all(abs(f(a, beta)) == 1 for a in alphas)
                and all(f(a, b) == 0 for a in alphas for b in alphas))
    if r.kind is Kind.CONJUGATION_DEF:
        return (len(rhs) == 1 and rhs[0].sign > 0 and rhs[0].curve in defs
                and defs.is_conjugate_form(rhs[0].curve)
                and tuple(defs.entries[rhs[0].curve]) == tuple(lhs))
    return False


def check_instance(r: RelationInstance, table: CurveTable, defs: DefinitionTable = EMPTY_DEFS,
                   shape: bool = True) -> bool:
    """Both sides act identically on homology and (optionally) the shape fits the kind."""
    same = np.array_equal(act_on_homology(r.lhs, table, defs), act_on_homology(r.rhs, table, defs))
    if not same:
        return False
    return shape_ok(r, table, defs) if shape else True


def chain_c3_forms_agree(r: RelationInstance, table, defs=EMPTY_DEFS) -> bool:
    """For ``(a b c)^4`` also check ``(b a b c)^3`` and vice versa."""
    b4 = _split_power(r.lhs, 4)
    if b4 is not None and len(b4) == 3:
        a, b, c = b4
        other = (b, a, b, c) * 3
    else:
        b, a, _, c = _split_power(r.lhs, 3)
        other = (a, b, c) * 4
    return np.array_equal(act_on_homology(r.lhs, table, defs), act_on_homology(other, table, defs))


# -- registry files ----------------------------------------------------------

_REL_LINE = re.compile(r'relation\s+(\S+)\s+kind\s+(\S+)\s+lhs\s+"([^"]*)"\s+rhs\s+"([^"]*)"\s*')


def parse_relations(text: str) -> list:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _REL_LINE.fullmatch(line)
        if m is None:
            raise RelationError(f"line {lineno}: cannot parse {raw!r}")
        out.append(relation(m.group(1), m.group(2), m.group(3), m.group(4)))
    names = [r.name for r in out]
    dup = [n for n, c in Counter(names).items() if c > 1]
    if dup:
        raise RelationError(f"duplicate relation names: {', '.join(dup)}")
    return out


def render_relations(rels: Iterable[RelationInstance]) -> str:
    return "".join(r.render() + "\n" for r in rels)


class Registry(dict):
    """Relation instances keyed by name."""

    def __init__(self, rels: Iterable[RelationInstance] = ()):
        super().__init__((r.name, r) for r in rels)

    def __missing__(self, name):
        raise RelationError(f"unknown relation {name!r}")

    def validate(self, table, defs=EMPTY_DEFS) -> list:
        bad = []
        for r in self.values():
            try:
                ok = check_instance(r, table, defs)
                if ok and r.kind is Kind.CHAIN_C3:
                    ok = chain_c3_forms_agree(r, table, defs)
            except (UnknownCurveError, RelationError):
                ok = False
            if not ok:
                bad.append(r.name)
        return bad


def registry_for(genus) -> list:
    """Validated relation instances of a corpus surface (``2``..``6`` or a name like ``"g4rose"``)."""
    from .corpus import CorpusError, load_surface
    name = genus if isinstance(genus, str) else f"g{genus}"
    try:
        ctx = load_surface(name)
    except CorpusError as exc:
        raise RelationError(f"no corpus data for {name}") from exc
    bad = ctx.registry.validate(ctx.table, ctx.defs)
    if bad:
        raise RelationError(f"{name}: invalid instances {', '.join(bad)}")
    return list(ctx.registry.values())
