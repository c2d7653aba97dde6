"""Replayable derivations: positional moves with a signature ledger.

Relation readings used by the moves:

* ``fwd`` uses ``rhs^-1 lhs`` and contributes ``+I(kind)`` to the ledger;
* ``rev`` uses ``lhs^-1 rhs`` and contributes ``-I(kind)``.

``insert R at i DIR [rot k]`` splices the (rotated) reading in at ``i``.
``subst R at i DIR [rot k] [len n]`` rotates the reading by ``k``, splits it
as ``u^-1 v`` with ``|u| = n`` and replaces the occurrence of ``u`` at ``i``
by ``v``.  The defaults (``k = 0``, ``n = |rhs|`` for fwd, ``|lhs|`` for
rev) replace one whole side by the other.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .homology import CurveTable, act_on_homology, is_identity
from .relations import Kind, Registry
from .words import (EMPTY_DEFS, DefinitionTable, Letter, cyclic_rotate, free_reduce, invert,
                    parse_word, render_word)


class MoveError(ValueError):
    def __init__(self, message, step=None):
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
        self.step = step


class ScriptError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    op: str
    args: tuple = ()

    def render(self) -> str:
        a = self.args
        if self.op in ("insert", "subst"):
            rel, pos, direction, rot, length = a
            s = f"{self.op} {rel} at {pos} {direction}"
            if rot:
                s += f" rot {rot}"
            if self.op == "subst" and length is not None:
                s += f" len {length}"
            return s
        if self.op in ("cancel", "swap"):
            return f"{self.op} at {a[0]}"
        if self.op == "uncancel":
            return f"uncancel {a[0]} at {a[1]}"
        if self.op == "braid":
            return f"braid at {a[0]} {a[1]}"
        if self.op == "rename":
            return f"rename at {a[0]} {a[1]}"
        if self.op == "rotate":
            return f"rotate {a[0]}"
        if self.op == "expand":
            return f"expand {a[0]} occ {a[1]}"
        if self.op == "collapse":
            return f"collapse {a[0]} at {a[1]}"
        if self.op == "power":
            return f"power {a[0]}"
        if self.op == "assert":
            return f'assert "{render_word(a[0])}"'
        raise ValueError(self.op)


@dataclass
class LedgerEntry:
    name: str
    kind: Kind
    orientation: int


class SignatureLedger(list):
    def add(self, name, kind, orientation):
        self.append(LedgerEntry(name, kind, orientation))

    def total(self) -> int:
        return ledger_total(self)

    def counts(self) -> Counter:
        return Counter((e.kind.tag, e.orientation) for e in self)


def ledger_total(entries) -> int:
    return sum(e.orientation * e.kind.signature for e in entries)


@dataclass
class Derivation:
    genus: int
    base: tuple
    moves: list = field(default_factory=list)
    base_relations: list = field(default_factory=list)  # (name, orientation)
    expected_final: Optional[tuple] = None
    table: Optional[str] = None


@dataclass
class Context:
    registry: Registry
    table: CurveTable
    defs: DefinitionTable = EMPTY_DEFS


def _support(name, ctx):
    if name in ctx.defs:
        return {a.curve for a in ctx.defs.expansion(name)}
    return {name}


def letters_commute(x: Letter, y: Letter, ctx: Context) -> bool:
    """Commutation licensed by declarations.

    Two base letters commute when their curves are declared disjoint.  A
    defined letter is a conjugate ``u a u^-1``, so it commutes with anything
    whose curves are declared disjoint from every curve of its expansion.
    """
    if x.curve == y.curve:
        return False
    sx, sy = _support(x.curve, ctx), _support(y.curve, ctx)
    return all(a != b and ctx.table.disjoint(a, b) for a in sx for b in sy)


def _reading(rel, direction):
    if direction == "fwd":
        return invert(rel.rhs) + tuple(rel.lhs), 1
    if direction == "rev":
        return invert(rel.lhs) + tuple(rel.rhs), -1
    raise MoveError(f"bad direction {direction!r}")


def _need(w, pos, n):
    if pos < 0 or pos + n > len(w):
        raise MoveError(f"position {pos} out of range for a word of length {len(w)}")


def apply_move(w, move: Move, ctx: Context, ledger: Optional[SignatureLedger] = None):
    """Apply one move; returns the new word.  Ledger entries are appended in place."""
    w = tuple(w)
    op, a = move.op, move.args
    if op == "insert":
        name, pos, direction, rot, _ = a
        rel = ctx.registry[name]
        reading, orient = _reading(rel, direction)
        if pos < 0 or pos > len(w):
            raise MoveError(f"position {pos} out of range")
        if ledger is not None:
            ledger.add(name, rel.kind, orient)
        return w[:pos] + cyclic_rotate(reading, rot) + w[pos:]
    if op == "subst":
        name, pos, direction, rot, length = a
        rel = ctx.registry[name]
        reading, orient = _reading(rel, direction)
        if length is None:
            length = len(rel.rhs) if direction == "fwd" else len(rel.lhs)
        r = cyclic_rotate(reading, rot)
        u, v = invert(r[:length]), r[length:]
        _need(w, pos, len(u))
        if w[pos:pos + len(u)] != u:
            raise MoveError(f"{name}: expected {render_word(u)!r} at {pos}, "
                            f"found {render_word(w[pos:pos + len(u)])!r}")
        if ledger is not None:
            ledger.add(name, rel.kind, orient)
        return w[:pos] + v + w[pos + len(u):]
    if op == "cancel":
        (pos,) = a
        _need(w, pos, 2)
        if w[pos + 1] != w[pos].inverse():
            raise MoveError(f"no inverse pair at {pos}: {render_word(w[pos:pos + 2])!r}")
        return w[:pos] + w[pos + 2:]
    if op == "uncancel":
        letter, pos = a
        if pos < 0 or pos > len(w):
            raise MoveError(f"position {pos} out of range")
        return w[:pos] + (letter, letter.inverse()) + w[pos:]
    if op == "swap":
        (pos,) = a
        _need(w, pos, 2)
        x, y = w[pos], w[pos + 1]
        if not letters_commute(x, y, ctx):
            raise MoveError(f"illegal swap: {x.curve} and {y.curve} are not declared disjoint")
        return w[:pos] + (y, x) + w[pos + 2:]
    if op == "rename":
        pos, name = a
        _need(w, pos, 1)
        x = w[pos]
        if x.curve == name or ctx.table.resolve(x.curve) != ctx.table.resolve(name):
            raise MoveError(f"{x.curve} and {name} are not aliases of one curve")
        return w[:pos] + (Letter(name, x.sign),) + w[pos + 1:]
    if op == "braid":
        pos, direction = a
        _need(w, pos, 3)
        x, y, z = w[pos:pos + 3]
        if not (x == z and x.sign == y.sign and x.curve != y.curve):
            raise MoveError(f"no braid pattern at {pos}: {render_word(w[pos:pos + 3])!r}")
        if not ctx.table.unit(x.curve, y.curve):
            raise MoveError(f"illegal braid move: {x.curve}, {y.curve} not declared to meet once")
        side = (Letter(x.curve), Letter(y.curve), Letter(x.curve))
        found = any(
            (r.kind is Kind.BRAID and tuple(r.lhs if direction == "fwd" else r.rhs) == side)
            for r in ctx.registry.values())
        if not found:
            raise MoveError(f"no registered braid instance for {render_word(side)!r} ({direction})")
        return w[:pos] + (y, x, y) + w[pos + 3:]
    if op == "rotate":
        return cyclic_rotate(w, a[0])
    if op == "expand":
        name, occ = a
        hits = [i for i, x in enumerate(w) if x.curve == name]
        if name not in ctx.defs:
            raise MoveError(f"unknown defined letter {name!r}")
        if occ >= len(hits):
            raise MoveError(f"{name} has no occurrence {occ}")
        i = hits[occ]
        body = tuple(ctx.defs.entries[name])
        return w[:i] + (body if w[i].sign > 0 else invert(body)) + w[i + 1:]
    if op == "collapse":
        name, pos = a
        if name not in ctx.defs:
            raise MoveError(f"unknown defined letter {name!r}")
        body = tuple(ctx.defs.entries[name])
        _need(w, pos, len(body))
        seg = w[pos:pos + len(body)]
        if seg == body:
            return w[:pos] + (Letter(name, 1),) + w[pos + len(body):]
        if seg == invert(body):
            return w[:pos] + (Letter(name, -1),) + w[pos + len(body):]
        raise MoveError(f"expansion of {name} not found at {pos}")
    if op == "power":
        return w * a[0]
    if op == "assert":
        if free_reduce(w) != free_reduce(a[0]):
            raise MoveError(f"assertion failed: have {render_word(w)!r}")
        return w
    raise MoveError(f"unknown move {op!r}")


@dataclass
class DerivationResult:
    final: tuple
    ledger: SignatureLedger
    trace: list  # (move or None, word)


def base_product(d: Derivation, ctx: Context) -> tuple:
    """Product of the declared base relators, each read ``lhs rhs^-1`` or inverted."""
    out = ()
    for name, orient in d.base_relations:
        r = ctx.registry[name].relator
        out += r if orient > 0 else invert(r)
    return out


def run_derivation(d: Derivation, ctx: Context) -> DerivationResult:
    ledger = SignatureLedger()
    for name, orient in d.base_relations:
        ledger.add(name, ctx.registry[name].kind, orient)
    if d.base_relations and free_reduce(base_product(d, ctx)) != free_reduce(d.base):
        raise MoveError("base word is not the product of the declared base relations", step=0)
    w = tuple(d.base)
    trace = [(None, w)]
    for i, m in enumerate(d.moves, 1):
        try:
            w = apply_move(w, m, ctx, ledger)
        except MoveError as exc:
            raise MoveError(str(exc), step=i) from None
        except KeyError as exc:
            raise MoveError(str(exc), step=i) from None
        trace.append((m, w))
    if d.expected_final is not None and free_reduce(w) != free_reduce(d.expected_final):
        raise MoveError("final word differs from the expected word", step=len(d.moves))
    return DerivationResult(w, ledger, trace)


def _changed_segments(a, b):
    """Strip the common prefix and suffix of ``a`` and ``b``."""
    p = 0
    n = min(len(a), len(b))
    while p < n and a[p] == b[p]:
        p += 1
    q = 0
    while q < n - p and a[len(a) - 1 - q] == b[len(b) - 1 - q]:
        q += 1
    return a[p:len(a) - q], b[p:len(b) - q]


def verify_derivation_homology(d: Derivation, ctx: Context, result: DerivationResult = None):
    """Every trace word must act trivially; returns ``(ok, failing_step)``.

    The first word is checked in full.  After that a step only needs the
    rewritten segment to act like the segment it replaced: if ``x u y`` is
    trivial then ``x v y`` is trivial exactly when ``u`` and ``v`` act alike.
    Rotations are checked as conjugations of the full matrix.
    """
    if result is None:
        result = run_derivation(d, ctx)
    act = lambda w: act_on_homology(w, ctx.table, ctx.defs)
    prev = None
    for i, (move, w) in enumerate(result.trace):
        if prev is None:
            if not is_identity(act(w)):
                return False, i
        elif move is not None and move.op == "rotate":
            before = prev
            k = move.args[0] % max(len(before), 1)
            P, Pinv = act(before[:k]), act(invert(before[:k]))
            if not np.array_equal(act(w), P @ act(before) @ Pinv):
                return False, i
        else:
            u, v = _changed_segments(prev, w)
            if u != v and not np.array_equal(act(u), act(v)):
                return False, i
        prev = w
    if result.trace and not is_identity(act(result.trace[-1][1])):
        return False, len(result.trace) - 1
    return True, None


# -- script files ------------------------------------------------------------

_MOVE_PATTERNS = [
    (re.compile(r"(insert|subst)\s+(\S+)\s+at\s+(\d+)\s+(fwd|rev)(?:\s+rot\s+(-?\d+))?(?:\s+len\s+(\d+))?"),
     lambda m: Move(m[1], (m[2], int(m[3]), m[4], int(m[5] or 0),
                           int(m[6]) if m[6] is not None else None))),
    (re.compile(r"(cancel|swap)\s+at\s+(\d+)"), lambda m: Move(m[1], (int(m[2]),))),
    (re.compile(r"uncancel\s+([a-z][a-z0-9_]*(?:\^-1)?)\s+at\s+(\d+)"),
     lambda m: Move("uncancel", (parse_word(m[1])[0], int(m[2])))),
    (re.compile(r"braid\s+at\s+(\d+)\s+(fwd|rev)"), lambda m: Move("braid", (int(m[1]), m[2]))),
    (re.compile(r"rename\s+at\s+(\d+)\s+([a-z][a-z0-9_]*)"), lambda m: Move("rename", (int(m[1]), m[2]))),
    (re.compile(r"rotate\s+(-?\d+)"), lambda m: Move("rotate", (int(m[1]),))),
    (re.compile(r"expand\s+(\S+)\s+occ\s+(\d+)"), lambda m: Move("expand", (m[1], int(m[2])))),
    (re.compile(r"collapse\s+(\S+)\s+at\s+(\d+)"), lambda m: Move("collapse", (m[1], int(m[2])))),
    (re.compile(r"power\s+(\d+)"), lambda m: Move("power", (int(m[1]),))),
    (re.compile(r'assert\s+"([^"]*)"'), lambda m: Move("assert", (parse_word(m[1]),))),
]


def parse_script(text: str) -> Derivation:
    genus = base = table = None
    base_rel, moves = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("genus "):
                genus = int(line.split()[1])
                continue
            if line.startswith("table "):
                table = line.split()[1]
                continue
            m = re.fullmatch(r'base\s+"([^"]*)"', line)
            if m:
                base = parse_word(m[1])
                continue
            m = re.fullmatch(r"base-relation\s+(\S+)\s+([+-]1)", line)
            if m:
                base_rel.append((m[1], int(m[2])))
                continue
            for pat, build in _MOVE_PATTERNS:
                m = pat.fullmatch(line)
                if m:
                    moves.append(build(m))
                    break
            else:
                raise ScriptError(line)
        except (ScriptError, ValueError, IndexError):
            raise ScriptError(f"line {lineno}: cannot parse {raw!r}") from None
    if genus is None or base is None:
        raise ScriptError("script needs 'genus' and 'base' lines")
    return Derivation(genus, base, moves, base_rel, None, table)


def render_script(d: Derivation, header: str = "") -> str:
    lines = [f"# {h}" if h else "#" for h in header.splitlines()] if header else []
    lines.append(f"genus {d.genus}")
    if d.table:
        lines.append(f"table {d.table}")
    lines.append(f'base "{render_word(d.base)}"')
    for name, o in d.base_relations:
        lines.append(f"base-relation {name} {o:+d}")
    lines += [m.render() for m in d.moves]
    return "\n".join(lines) + "\n"
