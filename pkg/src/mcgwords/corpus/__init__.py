"""Corpus of relator words, derivation scripts and surface data.

Assets live in the ``data`` directory next to this module, or wherever
``MCG_CORPUS_DIR`` points.  Layout::

    <surface>/curves.mcgc  relations.mcgr  defs.mcgdef
    <entry>/word.mcgw      derivation.mcgd entry.json
    aliases.txt            expected_table.txt
"""
from __future__ import annotations

import ast
import json
import operator
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional

from ..homology import (CurveFileError, act_on_homology, is_identity, matrix_order,
                        parse_curve_table, validate_table)
from ..invariants import FibrationInvariants, closed_form_sigma, h1_of_fibration
from ..relations import Registry, parse_relations
from ..rewrite import (Context, Derivation, DerivationResult, MoveError, ScriptError, parse_script,
                       run_derivation, verify_derivation_homology)
from ..words import Word, is_positive, parse_definitions, parse_word


class CorpusError(LookupError):
    pass


def corpus_dir() -> Path:
    env = os.environ.get("MCG_CORPUS_DIR")
    return Path(env) if env else Path(__file__).with_name("data")


# -- loading -----------------------------------------------------------------

def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"missing asset {path}") from exc


@lru_cache(maxsize=None)
def _surface(root: str, name: str) -> Context:
    d = Path(root) / name
    table = parse_curve_table(_read(d / "curves.mcgc"))
    rels = parse_relations(_read(d / "relations.mcgr"))
    defs = parse_definitions(_read(d / "defs.mcgdef"))
    return Context(Registry(rels), table, defs)


def load_surface(name: str, root: Optional[Path] = None) -> Context:
    """Curve table, relation registry and definitions of one corpus surface."""
    return _surface(str(root or corpus_dir()), name)


def aliases(root: Optional[Path] = None) -> dict:
    path = (root or corpus_dir()) / "aliases.txt"
    out = {}
    for line in _read(path).splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            a, b = (s.strip() for s in line.split("="))
            out[a] = b
    return out


def entry_names(root: Optional[Path] = None) -> list:
    root = root or corpus_dir()
    return sorted(p.name for p in root.iterdir() if (p / "entry.json").exists())


@dataclass
class CorpusEntry:
    name: str
    genus: int
    surface: str
    family: str
    params: dict
    word: Word                       # the full relator
    derivation: Derivation
    expected_sigma: int
    context: Context = field(repr=False)
    result: DerivationResult = field(repr=False, default=None)

    @property
    def base(self) -> Optional[Word]:
        """``W`` when the relator is ``W^3``, else ``None``."""
        n = len(self.word)
        if n % 3 == 0 and self.word == self.word[: n // 3] * 3:
            return self.word[: n // 3]
        return None

    @property
    def expected_order(self) -> Optional[int]:
        return 3 if self.base is not None else None

    @property
    def positive(self) -> bool:
        return is_positive(self.word, self.context.defs)

    @property
    def sigma(self) -> int:
        return self.result.ledger.total()

    def invariants(self, compute_h1=True) -> FibrationInvariants:
        h1 = h1_of_fibration(self.word, self.context.table, self.context.defs) if compute_h1 else None
        return FibrationInvariants.from_counts(self.genus, len(self.word), self.sigma, h1)


def load_entry(name: str, root: Optional[Path] = None) -> CorpusEntry:
    """Parse an entry, replay its script and check it ends on the stored word."""
    root = root or corpus_dir()
    canonical = aliases(root).get(name, name)
    d = root / canonical
    meta = json.loads(_read(d / "entry.json"))
    try:
        word = parse_word(_read(d / "word.mcgw"))
        der = parse_script(_read(d / "derivation.mcgd"))
    except (ValueError, ScriptError) as exc:
        raise CorpusError(f"{name}: {exc}") from exc
    ctx = load_surface(der.table or meta["surface"], root)
    der.expected_final = word
    entry = CorpusEntry(name, meta["genus"], meta["surface"], meta["family"], meta["params"],
                        word, der, meta["sigma"], ctx)
    entry.result = run_derivation(der, ctx)
    return entry


# -- general genus -----------------------------------------------------------

def _zg_modules():
    from .derive import derive_zg, zg_copy
    from .tables import spec_chain, spec_context
    return derive_zg, zg_copy, spec_chain, spec_context


def build_Zg_word(g: int) -> Word:
    """One third of the achiral genus-``g`` relator (``g >= 7``)."""
    if g < 7:
        raise ValueError("build_Zg_word covers g >= 7; lower genus has explicit entries")
    _, zg_copy, _, _ = _zg_modules()
    return parse_word(zg_copy(g))


@lru_cache(maxsize=None)
def zg_context(g: int) -> Context:
    """Chain-surface data for genus ``g``, solved on the fly."""
    _, _, spec_chain, spec_context = _zg_modules()
    return spec_context(spec_chain(g))


def zg_derivation(g: int) -> Derivation:
    """Script deriving the genus-``g`` achiral relator from chain relations."""
    derive_zg, zg_copy, _, _ = _zg_modules()
    b = derive_zg(zg_context(g), g)
    return b.derivation(expected=parse_word(zg_copy(g)) * 3)


# -- table -------------------------------------------------------------------

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def _eval(expr: str, env: dict) -> int:
    def ev(n):
        if isinstance(n, ast.Expression):
            return ev(n.body)
        if isinstance(n, ast.Constant) and isinstance(n.value, int):
            return n.value
        if isinstance(n, ast.Name):
            return env[n.id]
        if isinstance(n, ast.UnaryOp) and isinstance(n.op, ast.USub):
            return -ev(n.operand)
        if isinstance(n, ast.BinOp) and type(n.op) in _OPS:
            return _OPS[type(n.op)](ev(n.left), ev(n.right))
        raise ValueError(f"unsupported expression {expr!r}")
    return ev(ast.parse(expr, mode="eval"))


def _instances(row: str, spec: str) -> list:
    """Expand ``k=1..3 m=1..k`` into ``[(name, {k, m}), ...]``."""
    if "=" not in spec:
        return [(spec, {})]
    out = [{}]
    for part in spec.split():
        var, rng = part.split("=")
        lo, hi = rng.split("..")
        out = [{**env, var: v} for env in out
               for v in range(_eval(lo, env), _eval(hi, env) + 1)]
    names = []
    for env in out:
        name = row
        for var, v in env.items():
            name = name.replace(var, str(v))
        names.append((name, env))
    return names


@dataclass
class TableRow:
    name: str
    instances: list
    expected: dict                  # column -> formula text
    computed: dict                  # column -> list of values (one per instance)
    diffs: list

    @property
    def status(self) -> str:
        return "ok" if not self.diffs else "diff"

    def line(self) -> str:
        cols = " ".join(f"{c} {','.join(str(v) for v in self.computed[c])}" for c in _COLUMNS)
        return f"row {self.name} {cols} status {self.status}"

    def as_dict(self) -> dict:
        return {"name": self.name, "instances": self.instances, "expected": self.expected,
                "computed": self.computed, "status": self.status, "diffs": self.diffs}


_COLUMNS = ("chi", "sigma", "chih", "c1sq", "h1")


@dataclass
class TableReport:
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.status == "ok" for r in self.rows)

    @property
    def diffs(self) -> list:
        return [d for r in self.rows for d in r.diffs]

    def lines(self) -> list:
        return [r.line() for r in self.rows]

    def text(self) -> str:
        head = f"{'':10s} {'chi':>16s} {'sigma':>22s} {'chih':>10s} {'c1sq':>18s}  h1"
        out = [head]
        for r in self.rows:
            vals = [",".join(str(v) for v in r.computed[c]) for c in _COLUMNS]
            out.append(f"{r.name:10s} {vals[0]:>16s} {vals[1]:>22s} {vals[2]:>10s} {vals[3]:>18s}"
                       f"  {vals[4]}  {r.status}")
        return "\n".join(out)


def parse_expected_table(text: str) -> list:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 7:
            raise CorpusError(f"bad table line {line!r}")
        rows.append(parts)
    return rows


def reproduce_table(root: Optional[Path] = None) -> TableReport:
    """Recompute every table row from corpus replays and compare with the stored values."""
    root = root or corpus_dir()
    rows = []
    for name, inst, *exprs in parse_expected_table(_read(root / "expected_table.txt")):
        expected = dict(zip(_COLUMNS, exprs))
        computed = {c: [] for c in _COLUMNS}
        diffs = []
        instances = _instances(name, inst)
        for iname, env in instances:
            try:
                e = load_entry(iname, root)
                inv = e.invariants()
            except (CorpusError, MoveError, ValueError) as exc:
                diffs.append(f"{iname}: {exc}")
                continue
            got = {"chi": inv.chi, "sigma": inv.sigma, "chih": inv.chi_h, "c1sq": inv.c1sq,
                   "h1": inv.h1.describe()}
            if (inv.sigma + inv.chi) % 4:
                diffs.append(f"{iname}: sigma + chi not divisible by 4")
            for c in _COLUMNS:
                computed[c].append(got[c])
                if c == "h1":
                    want = expected[c]
                    if want != "-" and want != got[c]:
                        diffs.append(f"{iname}: h1 {got[c]} != {want}")
                    continue
                want = _eval(expected[c], env)
                if want != got[c]:
                    diffs.append(f"{iname}: {c} {got[c]} != {want}")
        rows.append(TableRow(name, [n for n, _ in instances], expected, computed, diffs))
    return TableReport(rows)


# -- validation --------------------------------------------------------------

@dataclass
class CorpusReport:
    failures: list = field(default_factory=list)
    checked: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_entry(e: CorpusEntry) -> list:
    """Homology replay, base-word order and signature of one loaded entry."""
    fails = []
    ctx = e.context
    ok, step = verify_derivation_homology(e.derivation, ctx, e.result)
    if not ok:
        fails.append(f"{e.name}: trace word at step {step} is not trivial on homology")
    if e.base is not None:
        M = act_on_homology(e.base, ctx.table, ctx.defs)
        if is_identity(M) or matrix_order(M, 3) != 3:
            fails.append(f"{e.name}: base word does not have order 3")
    if e.sigma != e.expected_sigma:
        fails.append(f"{e.name}: ledger total {e.sigma} != {e.expected_sigma}")
    if closed_form_sigma(e.family, **e.params) != e.expected_sigma:
        fails.append(f"{e.name}: stored signature disagrees with the family formula")
    return fails


def validate_corpus(root: Optional[Path] = None) -> CorpusReport:
    root = root or corpus_dir()
    report = CorpusReport()
    surfaces = sorted(p.name for p in root.iterdir() if (p / "curves.mcgc").exists())
    for s in surfaces:
        try:
            ctx = load_surface(s, root)
        except (CorpusError, CurveFileError, ValueError) as exc:
            report.failures.append(f"{s}: {exc}")
            continue
        v = validate_table(ctx.table, ctx.registry.values(), ctx.defs)
        report.failures += [f"{s}: {f}" for f in v.failures]
        report.checked.append(s)
    for name in entry_names(root):
        try:
            e = load_entry(name, root)
        except (CorpusError, MoveError, ValueError, KeyError) as exc:
            report.failures.append(f"{name}: {exc}")
            continue
        report.failures += check_entry(e)
        report.checked.append(name)
    table = reproduce_table(root)
    report.failures += [f"table: {d}" for d in table.diffs]
    report.checked.append("table")
    return report


__all__ = ["CorpusEntry", "CorpusError", "CorpusReport", "TableReport", "build_Zg_word",
           "corpus_dir", "entry_names", "load_entry", "load_surface", "reproduce_table",
           "validate_corpus", "zg_context", "zg_derivation"]
