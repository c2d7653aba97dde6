"""Twist letters, words and the plain-text word syntax.

A word is an immutable tuple of :class:`Letter` values.  Powers are expanded
eagerly, so every letter carries a sign of +1 or -1 only.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

IDENT = re.compile(r"[a-z][a-z0-9_]*")


class Letter(NamedTuple):
    curve: str
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.curve, -self.sign)

    def __str__(self):
        return self.curve if self.sign > 0 else f"{self.curve}^-1"


Word = tuple  # tuple[Letter, ...]


class WordSyntaxError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DefinitionError(ValueError):
    pass


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<ident>[a-z][a-z0-9_]*)"
    r"|(?P<lparen>\()|(?P<rparen>\))|(?P<caret>\^)|(?P<int>[+-]?\d+)"
)


def _tokenize(text):
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            yield kind, m.group(), line, col
        for ch in m.group():
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    yield "eof", "", line, col


class _Parser:
    def __init__(self, text):
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = tok[1] or "end of input"
            raise WordSyntaxError(f"expected {kind}, found {what!r}", tok[2], tok[3])
        self.i += 1
        return tok

    def word(self, closing=False):
        out = []
        while True:
            kind, _, line, col = self.peek()
            if kind == "ident":
                name = self.take("ident")[1]
                out.extend(self.power([Letter(name, 1)]))
            elif kind == "lparen":
                self.take("lparen")
                inner = self.word(closing=True)
                self.take("rparen")
                if self.peek()[0] != "caret":
                    tok = self.peek()
                    raise WordSyntaxError("parenthesised word needs a power", tok[2], tok[3])
                out.extend(self.power(inner))
            elif kind == "rparen" and closing:
                return out
            elif kind == "eof" and not closing:
                return out
            else:
                raise WordSyntaxError(f"unexpected token {self.peek()[1] or 'end of input'!r}", line, col)

    def power(self, base):
        if self.peek()[0] != "caret":
            return base
        self.take("caret")
        _, text, line, col = self.take("int")
        n = int(text)
        if n == 0:
            raise WordSyntaxError("power 0 is not allowed", line, col)
        if n < 0:
            base = list(invert(base))
        return list(base) * abs(n)


def parse_word(text: str) -> Word:
    """Parse the word syntax, e.g. ``"(c5 c4)^-2 x c3"``."""
    return tuple(_Parser(text).word())


def render_word(w: Iterable[Letter]) -> str:
    return " ".join(str(a) for a in w)


def word(text_or_letters) -> Word:
    if isinstance(text_or_letters, str):
        return parse_word(text_or_letters)
    return tuple(Letter(*a) for a in text_or_letters)


def invert(w: Sequence[Letter]) -> Word:
    return tuple(a.inverse() for a in reversed(w))


def free_reduce(w: Sequence[Letter]) -> Word:
    stack = []
    for a in w:
        if stack and stack[-1] == a.inverse():
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def is_freely_reduced(w: Sequence[Letter]) -> bool:
    return all(w[i + 1] != w[i].inverse() for i in range(len(w) - 1))


def cyclic_rotate(w: Sequence[Letter], k: int) -> Word:
    """Move the first ``k`` letters to the end (negative ``k`` rotates back)."""
    if not w:
        return ()
    k %= len(w)
    return tuple(w[k:]) + tuple(w[:k])


@dataclass(frozen=True)
class DefinitionTable:
    """Named letters standing for conjugates ``u a u^-1`` of a positive letter."""

    entries: Mapping[str, Word]

    def __post_init__(self):
        object.__setattr__(self, "entries", dict(self.entries))
        for name in self.entries:
            self._expand_letter(name, ())

    def __contains__(self, name):
        return name in self.entries

    def __iter__(self):
        return iter(self.entries)

    def _expand_letter(self, name, stack):
        if name in stack:
            raise DefinitionError("cyclic definition: " + " -> ".join(stack + (name,)))
        out = []
        for a in self.entries[name]:
            if a.curve in self.entries:
                sub = self._expand_letter(a.curve, stack + (name,))
                out.extend(sub if a.sign > 0 else invert(sub))
            else:
                out.append(a)
        return tuple(out)

    def expansion(self, name: str) -> Word:
        return self._expand_letter(name, ())

    def merged(self, other: "DefinitionTable") -> "DefinitionTable":
        return DefinitionTable({**self.entries, **other.entries})

    def is_conjugate_form(self, name: str) -> bool:
        """Whether the definition reads ``u a u^-1`` for a positive letter ``a``."""
        w = self.entries[name]
        if len(w) % 2 == 0 or w[len(w) // 2].sign < 0:
            return False
        h = len(w) // 2
        return tuple(w[h + 1:]) == invert(w[:h])


EMPTY_DEFS = DefinitionTable({})


def expand_definitions(w: Sequence[Letter], defs: DefinitionTable = EMPTY_DEFS) -> Word:
    out = []
    for a in w:
        if a.curve in defs:
            sub = defs.expansion(a.curve)
            out.extend(sub if a.sign > 0 else invert(sub))
        else:
            out.append(a)
    return tuple(out)


def is_positive(w: Sequence[Letter], defs: DefinitionTable = EMPTY_DEFS) -> bool:
    """True when every letter is a positive twist.

    Defined letters count as positive twists (each names a twist about an image
    curve); see :func:`positivity` for both verdicts.
    """
    return all(a.sign > 0 for a in w)


def positivity(w: Sequence[Letter], defs: DefinitionTable = EMPTY_DEFS) -> dict:
    expanded = expand_definitions(w, defs)
    return {
        "raw": all(a.sign > 0 for a in w),
        "expanded": all(a.sign > 0 for a in expanded),
    }


def letter_count(w: Sequence[Letter]) -> int:
    """Number of vanishing cycles of a positive word."""
    if not is_positive(w):
        raise ValueError("letter count is only defined for positive words")
    return len(w)


def parse_definitions(text: str) -> DefinitionTable:
    """Parse lines of the form ``define <name> = <word>``."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"define\s+([a-z][a-z0-9_]*)\s*=\s*(.*)", line)
        if m is None:
            raise WordSyntaxError(f"bad definition line {line!r}", lineno, 1)
        entries[m.group(1)] = parse_word(m.group(2))
    return DefinitionTable(entries)


def render_definitions(defs: DefinitionTable) -> str:
    return "".join(f"define {k} = {render_word(v)}\n" for k, v in defs.entries.items())
