"""Script builder used to author the corpus derivations.

The builder never edits words itself: every step goes through
:func:`mcgwords.rewrite.apply_move`, so the emitted script replays exactly.
What it adds is planning help: locating patterns, sliding a letter along
commuting neighbours, cancelling commuting inverse pairs and reordering a
segment into a prescribed target.
"""
from __future__ import annotations

from collections import Counter
from typing import Optional, Sequence

from ..relations import Kind
from ..rewrite import (Context, Derivation, Move, MoveError, SignatureLedger, apply_move,
                       letters_commute)
from ..words import Letter, invert, parse_word, render_word


class BuildError(RuntimeError):
    pass


def _w(x):
    return parse_word(x) if isinstance(x, str) else tuple(x)


class Builder:
    def __init__(self, ctx: Context, genus: int, table: str, base_relations: Sequence = (),
                 base=None):
        self.ctx = ctx
        self.genus = genus
        self.table = table
        self.base_relations = [(n, o) for n, o in base_relations]
        if base is None:
            base = ()
            for name, orient in self.base_relations:
                r = ctx.registry[name].relator
                base += r if orient > 0 else invert(r)
        self.base = _w(base)
        self.w = self.base
        self.moves = []
        self.ledger = SignatureLedger()
        for name, orient in self.base_relations:
            self.ledger.add(name, ctx.registry[name].kind, orient)

    # -- bookkeeping -------------------------------------------------------

    def do(self, move: Move):
        try:
            self.w = apply_move(self.w, move, self.ctx, self.ledger)
        except MoveError as exc:
            raise BuildError(f"{move.render()}: {exc}\n  word: {render_word(self.w)}") from None
        self.moves.append(move)
        return self

    def derivation(self, expected=None) -> Derivation:
        return Derivation(self.genus, self.base, list(self.moves), list(self.base_relations),
                          expected, self.table)

    def __len__(self):
        return len(self.w)

    def text(self, s=0, e=None):
        return render_word(self.w[s:e])

    # -- locating ----------------------------------------------------------

    def find(self, pattern, start=0, occ=0) -> int:
        p = _w(pattern)
        hits = 0
        for i in range(start, len(self.w) - len(p) + 1):
            if self.w[i:i + len(p)] == p:
                if hits == occ:
                    return i
                hits += 1
        raise BuildError(f"pattern {render_word(p)!r} (occ {occ}) not found after {start} in\n"
                         f"  {render_word(self.w)}")

    # -- primitive moves ---------------------------------------------------

    def swap(self, i):
        return self.do(Move("swap", (i,)))

    def cancel(self, i):
        return self.do(Move("cancel", (i,)))

    def uncancel(self, letter, i):
        letter = _w(letter)[0] if isinstance(letter, str) else letter
        return self.do(Move("uncancel", (letter, i)))

    def braid(self, i):
        x, y = self.w[i], self.w[i + 1]
        side = (Letter(x.curve), Letter(y.curve), Letter(x.curve))
        for r in self.ctx.registry.values():
            if r.kind is Kind.BRAID:
                if tuple(r.lhs) == side:
                    return self.do(Move("braid", (i, "fwd")))
                if tuple(r.rhs) == side:
                    return self.do(Move("braid", (i, "rev")))
        raise BuildError(f"no braid instance for {render_word(side)}")

    def subst(self, rel, i, direction="fwd", rot=0, length=None):
        return self.do(Move("subst", (rel, i, direction, rot, length)))

    def insert(self, rel, i, direction="fwd", rot=0):
        return self.do(Move("insert", (rel, i, direction, rot, None)))

    def rotate(self, k):
        return self.do(Move("rotate", (k,)))

    def rename(self, i, name):
        return self.do(Move("rename", (i, name)))

    def expand(self, i):
        name = self.w[i].curve
        occ = sum(1 for x in self.w[:i] if x.curve == name)
        return self.do(Move("expand", (name, occ)))

    def collapse(self, name, i):
        return self.do(Move("collapse", (name, i)))

    def power(self, n):
        return self.do(Move("power", (n,)))

    def check(self, word):
        return self.do(Move("assert", (_w(word),)))

    # -- composite helpers -------------------------------------------------

    def commutes(self, x, y) -> bool:
        return letters_commute(x, y, self.ctx)

    def slide(self, i, j):
        """Move the letter at ``i`` to index ``j`` through adjacent swaps."""
        while i < j:
            self.swap(i)
            i += 1
        while i > j:
            self.swap(i - 1)
            i -= 1
        return self

    def can_slide(self, i, j) -> bool:
        x = self.w[i]
        lo, hi = (i + 1, j + 1) if j > i else (j, i)
        return all(self.commutes(x, y) for y in self.w[lo:hi])

    def cancel_pair(self, i, j):
        """Cancel ``w[i]`` against ``w[j]`` (``i < j``), sliding whichever side commutes."""
        if self.w[j] != self.w[i].inverse():
            raise BuildError(f"letters at {i}, {j} are not inverse")
        if self.can_slide(j, i + 1):
            self.slide(j, i + 1)
        elif self.can_slide(i, j - 1):
            self.slide(i, j - 1)
            i = j - 1
        else:
            raise BuildError(f"cannot bring {self.w[i]} and {self.w[j]} together")
        return self.cancel(i)

    def cancel_letters(self, s, e, letters):
        """Cancel, inside ``[s, e)``, one commuting inverse pair for each given letter."""
        for x in _w(letters):
            x = Letter(x.curve, 1)
            for i in range(s, e):
                done = False
                if self.w[i].curve != x.curve:
                    continue
                for j in range(i + 1, e):
                    if self.w[j] == self.w[i].inverse() and (
                            self.can_slide(j, i + 1) or self.can_slide(i, j - 1)):
                        self.cancel_pair(i, j)
                        e -= 2
                        done = True
                        break
                    if self.w[j].curve == x.curve:
                        break
                if done:
                    break
            else:
                raise BuildError(f"no cancellable {x.curve} pair in {self.text(s, e)}")
        return e

    def reduce(self, s=0, e=None, need: Optional[Counter] = None):
        """Cancel commuting inverse pairs in ``[s, e)``, keeping at least ``need`` copies."""
        e = len(self.w) if e is None else e
        need = need or Counter()
        progress = True
        while progress:
            progress = False
            have = Counter(self.w[s:e])
            best = None
            for i in range(s, e):
                x = self.w[i]
                if have[x] <= need[x] or have[x.inverse()] <= need[x.inverse()]:
                    continue
                for j in range(i + 1, e):
                    y = self.w[j]
                    if y == x.inverse():
                        if self.can_slide(j, i + 1) or self.can_slide(i, j - 1):
                            if best is None or j - i < best[1] - best[0]:
                                best = (i, j)
                        break
                    if y.curve == x.curve:
                        break
            if best:
                self.cancel_pair(*best)
                e -= 2
                progress = True
        return e

    def reorder(self, s, target):
        """Rearrange ``w[s:s+len(target)]`` into ``target`` using swaps only."""
        target = _w(target)
        if Counter(self.w[s:s + len(target)]) != Counter(target):
            raise BuildError(f"segment {self.text(s, s + len(target))!r} is not a rearrangement "
                             f"of {render_word(target)!r}")
        for t, want in enumerate(target):
            pos = s + t
            j = next(k for k in range(pos, s + len(target)) if self.w[k].curve == want.curve)
            if self.w[j] != want or not self.can_slide(j, pos):
                raise BuildError(f"cannot bring {want} to {pos}: {self.text(s, s + len(target))}")
            self.slide(j, pos)
        return self

    def reach(self, s, e, target):
        """Cancel surplus commuting pairs in ``[s, e)`` and reorder it into ``target``."""
        target = _w(target)
        self.reduce(s, e, Counter(target))
        self.reorder(s, target)
        return s + len(target)
