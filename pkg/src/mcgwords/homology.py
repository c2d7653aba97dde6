"""Integral homology of named curves and the symplectic action of twists.

Classes are integer vectors in the basis ``(a1, b1, ..., ag, bg)`` with
``<ai, bi> = +1``.  A positive twist about ``c`` acts by the transvection
``x -> x + <x, c> c``.  Words act with the leftmost letter first, so the
matrix of ``u v`` is ``M(v) @ M(u)``.
"""
from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .words import EMPTY_DEFS, DefinitionTable, Letter, expand_definitions

# products of desk-scale matrices stay far below this
_LIMIT = 2**62


class UnknownCurveError(KeyError):
    pass


class CurveFileError(ValueError):
    pass


def form_matrix(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for i in range(g):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J


def intersection(u, v) -> int:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != v.shape or u.ndim != 1 or len(u) % 2:
        raise ValueError(f"class length mismatch: {len(u)} vs {len(v)}")
    # sum over handles of a_i(u) b_i(v) - b_i(u) a_i(v)
    return int(u[0::2] @ v[1::2] - u[1::2] @ v[0::2])


def _checked_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    bound = int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0)) * A.shape[1]
    if bound >= _LIMIT:
        raise OverflowError("matrix entries exceed the 64-bit safety bound")
    return A @ B


def transvection(c, power: int = 1) -> np.ndarray:
    """Matrix of ``x -> x + power * <x, c> c`` acting on column vectors."""
    c = np.asarray(c, dtype=np.int64)
    g = len(c) // 2
    # <x, c> = (J c)^T x  up to sign: <x,c> = x^T J c
    row = form_matrix(g) @ c
    return np.eye(2 * g, dtype=np.int64) + power * np.outer(c, row)


def is_symplectic(M: np.ndarray) -> bool:
    J = form_matrix(M.shape[0] // 2)
    return bool(np.array_equal(M.T @ J @ M, J))


def is_identity(M: np.ndarray) -> bool:
    return bool(np.array_equal(M, np.eye(M.shape[0], dtype=M.dtype)))


def matrix_order(M: np.ndarray, bound: int = 12) -> Optional[int]:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    P = M.copy()
    for n in range(1, bound + 1):
        if is_identity(P):
            return n
        P = _checked_matmul(M, P)
    return None


def _pair(a, b):
    return tuple(sorted((a, b)))


@dataclass
class CurveTable:
    genus: int
    classes: dict = field(default_factory=dict)
    disjoint_pairs: set = field(default_factory=set)
    unit_pairs: set = field(default_factory=set)
    separating: set = field(default_factory=set)
    aliases: dict = field(default_factory=dict)

    def __post_init__(self):
        self.classes = {k: np.asarray(v, dtype=np.int64) for k, v in self.classes.items()}
        self.disjoint_pairs = {_pair(*p) for p in self.disjoint_pairs}
        self.unit_pairs = {_pair(*p) for p in self.unit_pairs}

    def __contains__(self, name):
        return name in self.classes or name in self.aliases

    def __getitem__(self, name) -> np.ndarray:
        name = self.aliases.get(name, name)
        try:
            return self.classes[name]
        except KeyError:
            raise UnknownCurveError(name) from None

    def resolve(self, name):
        return self.aliases.get(name, name)

    def disjoint(self, a, b) -> bool:
        return _pair(self.resolve(a), self.resolve(b)) in self.disjoint_pairs or self.resolve(a) == self.resolve(b)

    def unit(self, a, b) -> bool:
        return _pair(self.resolve(a), self.resolve(b)) in self.unit_pairs

    def copy(self) -> "CurveTable":
        return CurveTable(self.genus, dict(self.classes), set(self.disjoint_pairs),
                          set(self.unit_pairs), set(self.separating), dict(self.aliases))


def act_on_homology(w: Sequence[Letter], table: CurveTable,
                    defs: DefinitionTable = EMPTY_DEFS) -> np.ndarray:
    J = form_matrix(table.genus)
    M = np.eye(2 * table.genus, dtype=np.int64)
    rows = {}
    half = math.isqrt(_LIMIT // (2 * table.genus + 1))
    for a in expand_definitions(w, defs):
        if a.curve not in rows:
            c = table[a.curve]
            rows[a.curve] = (c, J @ c)
        c, jc = rows[a.curve]
        # (I + s c (Jc)^T) M as a rank-one update
        M = M + a.sign * np.outer(c, jc @ M)
        if np.abs(M).max() >= half:
            raise OverflowError("matrix entries exceed the 64-bit safety bound")
    return M


def word_is_trivial(w, table, defs=EMPTY_DEFS) -> bool:
    return is_identity(act_on_homology(w, table, defs))


# -- curve table files -------------------------------------------------------

def parse_curve_table(text: str) -> CurveTable:
    genus = None
    table = None
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "genus":
                genus = int(parts[1])
                table = CurveTable(genus)
            elif key == "curve":
                m = re.fullmatch(r"curve\s+([a-z][a-z0-9_]*)\s*=\s*\[([^\]]*)\]", line)
                if m is None:
                    raise ValueError(line)
                coeffs = [int(s) for s in m.group(2).split(",")]
                pending.append(("curve", m.group(1), coeffs))
            elif key in ("disjoint", "unit") and len(parts) == 3:
                pending.append((key, parts[1], parts[2]))
            elif key == "separating" and len(parts) == 2:
                pending.append((key, parts[1]))
            elif key == "alias" and len(parts) == 4 and parts[2] == "=":
                pending.append((key, parts[1], parts[3]))
            else:
                raise ValueError(line)
        except (ValueError, IndexError):
            raise CurveFileError(f"line {lineno}: cannot parse {raw!r}") from None
    if table is None:
        raise CurveFileError("missing 'genus' line")
    for item in pending:
        if item[0] == "curve":
            if len(item[2]) != 2 * genus:
                raise CurveFileError(f"curve {item[1]} needs {2 * genus} coefficients")
            table.classes[item[1]] = np.asarray(item[2], dtype=np.int64)
        elif item[0] == "disjoint":
            table.disjoint_pairs.add(_pair(item[1], item[2]))
        elif item[0] == "unit":
            table.unit_pairs.add(_pair(item[1], item[2]))
        elif item[0] == "separating":
            table.separating.add(item[1])
        else:
            table.aliases[item[1]] = item[2]
    return table


def render_curve_table(table: CurveTable) -> str:
    lines = [f"genus {table.genus}"]
    for name, v in table.classes.items():
        lines.append(f"curve {name} = [{', '.join(str(int(x)) for x in v)}]")
    for a, b in sorted(table.aliases.items()):
        lines.append(f"alias {a} = {b}")
    for name in sorted(table.separating):
        lines.append(f"separating {name}")
    for a, b in sorted(table.disjoint_pairs):
        lines.append(f"disjoint {a} {b}")
    for a, b in sorted(table.unit_pairs):
        lines.append(f"unit {a} {b}")
    return "\n".join(lines) + "\n"


# -- validation --------------------------------------------------------------

@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def extend(self, other: "ValidationReport", prefix=""):
        self.failures += [prefix + f for f in other.failures]
        self.notes += [prefix + n for n in other.notes]


def validate_table(table: CurveTable, relations: Iterable = (), defs=EMPTY_DEFS) -> ValidationReport:
    """Check the table invariants and every relation instance against it."""
    report = ValidationReport()
    n = 2 * table.genus
    for name, v in table.classes.items():
        if len(v) != n:
            report.failures.append(f"curve {name}: class has length {len(v)}, expected {n}")
    for alias, target in table.aliases.items():
        if target not in table.classes:
            report.failures.append(f"alias {alias}: unknown curve {target!r}")
    for name in table.separating:
        if name not in table:
            report.failures.append(f"separating {name}: unknown curve {name!r}")
        elif np.any(table[name]):
            report.failures.append(f"separating {name}: class is not zero")
    for kind, pairs, check in (("disjoint", table.disjoint_pairs, lambda k: k == 0),
                               ("unit", table.unit_pairs, lambda k: abs(k) == 1)):
        for a, b in sorted(pairs):
            missing = [c for c in (a, b) if c not in table]
            if missing:
                report.failures.append(f"{kind} {a} {b}: unknown curve {missing[0]!r}")
                continue
            k = intersection(table[a], table[b])
            if not check(k):
                report.failures.append(f"{kind} {a} {b}: intersection is {k}")
    for rel in relations:
        try:
            from .relations import check_instance
            if not check_instance(rel, table, defs):
                report.failures.append(f"relation {rel.name}: sides act differently or shape is wrong")
        except UnknownCurveError as exc:
            report.failures.append(f"relation {rel.name}: unknown curve {exc.args[0]!r}")
    return report


# -- class recovery ----------------------------------------------------------

@functools.lru_cache(maxsize=16)
def _candidates(dim: int, bound: int) -> np.ndarray:
    """Vectors with entries in [-bound, bound] whose first nonzero entry is positive.

    The zero vector comes first: a curve may well be null-homologous without
    having been declared separating.
    """
    side = 2 * bound + 1
    idx = np.indices((side,) * dim, dtype=np.int8).reshape(dim, -1).T
    grid = idx.astype(np.int64) - bound
    nz = grid != 0
    first = grid[np.arange(len(grid)), nz.argmax(axis=1)]
    keep = nz.any(axis=1) & (first > 0)
    out = np.vstack([np.zeros((1, dim), dtype=np.int64), grid[keep]])
    out.setflags(write=False)
    return out


def solve_classes(partial: CurveTable, unknowns: Sequence[str], constraints: Sequence = (),
                  search_bound: int = 1, defs: DefinitionTable = EMPTY_DEFS,
                  limit: int = 10_000, support=None) -> list:
    """Exhaustively complete ``partial`` with classes for ``unknowns``.

    Each unknown ranges over vectors with entries in ``[-search_bound,
    search_bound]``, taken up to sign (a twist only sees its curve up to
    orientation).  Declared separating curves are pinned to zero.  Unknowns are
    assigned in the given order; the pair declarations of ``partial`` prune
    candidates as soon as both curves have classes, and each relation instance
    in ``constraints`` is checked once all of its curves have classes.  The
    completed tables are returned in lexicographic order of the concatenated
    unknown coefficient vectors; at most ``limit`` of them are collected.

    ``support`` optionally maps an unknown to the handles (1-based) its class
    may involve; that unknown then ranges only over those coordinates, which
    keeps the search small in high genus.
    """
    from .relations import Kind, check_instance, instance_curves

    dim = 2 * partial.genus
    free = [u for u in unknowns if u not in partial.separating and u not in (support or {})]
    cand = _candidates(dim, search_bound) if free else None
    zero = np.zeros((1, dim), dtype=np.int64)
    J = form_matrix(partial.genus)
    pending = list(constraints)
    curves_of = [set(instance_curves(r, defs)) for r in pending]
    unknowns = list(unknowns)

    def pair_filter(name, known, pool):
        keep = np.ones(len(pool), dtype=bool)
        pj = pool @ J
        for other, v in known.items():
            if other == name:
                continue
            if _pair(name, other) in partial.disjoint_pairs:
                keep &= (pj @ v) == 0
            elif partial.unit(name, other):
                keep &= np.abs(pj @ v) == 1
        return pool[keep]

    support = dict(support or {})

    def _supported(name):
        cols = [2 * (h - 1) + k for h in sorted(set(support[name])) for k in (0, 1)]
        small = _candidates(len(cols), search_bound)
        out = np.zeros((len(small), dim), dtype=np.int64)
        out[:, cols] = small
        return out

    lanterns = [r for r in pending if r.kind is Kind.LANTERN]

    def _interior_pool(name, known):
        # an interior lantern curve splits the sphere into two pairs of
        # pants, so its class is a signed sum of two boundary classes
        for r in lanterns:
            if name not in {a.curve for a in r.lhs}:
                continue
            outer = [partial.resolve(a.curve) for a in r.rhs]
            if not all(o in known for o in outer):
                continue
            vecs = set()
            for i, j in itertools.combinations(range(4), 2):
                for sign in (1, -1):
                    v = known[outer[i]] + sign * known[outer[j]]
                    nz = np.flatnonzero(v)
                    if len(nz) and v[nz[0]] < 0:
                        v = -v
                    if np.abs(v).max(initial=0) <= search_bound:
                        vecs.add(tuple(int(x) for x in v))
            return np.array(sorted(vecs), dtype=np.int64).reshape(-1, dim)
        return None

    results = []

    def rec(idx, known):
        if len(results) >= limit:
            return
        if idx == len(unknowns):
            results.append(dict(known))
            return
        name = unknowns[idx]
        inner = _interior_pool(name, known)
        if name in partial.separating:
            pool = zero
        elif inner is not None:
            pool = inner
        elif support and name in support:
            pool = _supported(name)
        else:
            pool = cand
        pool = pair_filter(name, known, pool)
        assigned = set(known) | {name}
        ready = [i for i, cs in enumerate(curves_of)
                 if name in cs and cs <= assigned]
        for v in pool:
            known[name] = v
            trial = CurveTable(partial.genus, known, partial.disjoint_pairs,
                               partial.unit_pairs, partial.separating, partial.aliases)
            if all(check_instance(pending[i], trial, defs, shape=False) for i in ready):
                rec(idx + 1, known)
            del known[name]

    base = {k: v for k, v in partial.classes.items()}
    # constraints mentioning only known curves are checked up front
    full = CurveTable(partial.genus, base, partial.disjoint_pairs, partial.unit_pairs,
                      partial.separating, partial.aliases)
    for i, cs in enumerate(curves_of):
        if cs <= set(base) | set(partial.aliases) and not check_instance(pending[i], full, defs, shape=False):
            return []
    rec(0, dict(base))

    out = []
    for known in results:
        t = partial.copy()
        t.classes = {k: np.asarray(v, dtype=np.int64) for k, v in known.items()}
        out.append(t)
    out.sort(key=lambda t: tuple(int(x) for u in unknowns for x in t.classes[u]))
    return out
