"""Rebuild the corpus assets from the local table data and the authoring code.

    python -m mcgwords.corpus.generate [--out DIR]

Writes one directory per surface (``curves.mcgc``, ``relations.mcgr``,
``defs.mcgdef``), one directory per entry (``word.mcgw``, ``derivation.mcgd``,
``entry.json``) and ``expected_table.txt``.  Every derivation is replayed and
checked on homology before anything is written.
"""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from ..homology import render_curve_table
from ..invariants import closed_form_sigma
from ..relations import render_relations
from ..rewrite import render_script, run_derivation, verify_derivation_homology
from ..words import render_definitions, render_word
from . import derive as D
from .tables import SPECS, braid_instances, spec_context

# name -> (surface, builder, family, params, note)
ENTRIES = {
    "X2": ("g2", D.derive_x2, "X_g", {"g": 2}, "genus 2 positive relator"),
    "X2-alt": ("g2", lambda c: D.derive_x2k(c, 6), "X_g,k", {"g": 2, "k": 6},
               "genus 2 with both lantern sites of every copy used"),
    "X3": ("g3", D.derive_x3, "X_g", {"g": 3}, "genus 3 positive relator"),
    "X3-alt": ("g3", lambda c: D.derive_x3k(c, 3), "X_g,k", {"g": 3, "k": 3},
               "genus 3 with f1 traded for the t,v lantern in every copy"),
    "X3-alt2": ("g3", lambda c: D.derive_x3km(c, 3, 3), "X_3,k,m", {"k": 3, "m": 3},
                "X3-alt with the three-chain substituted in every copy"),
    "X4-rose": ("g4rose", D.derive_x4, "X_g", {"g": 4}, "genus 4 from three one-holed tori and a star"),
    "X4-rose-alt": ("g4rose", lambda c: D.derive_x4k(c, 3), "X_g,k", {"g": 4, "k": 3},
                    "X4-rose with the alpha2,t,v lantern in every copy"),
    "X4-alt": ("g4", lambda c: D.derive_y4k(c, 3), "Y_4,k", {"k": 3},
               "chain-glued genus 4 word with the t1_4,v1_4 lantern in every copy"),
    "Y4": ("g4", D.derive_y4, "Y_4", {}, "chain-glued genus 4 positive relator"),
    "Y5": ("g5", D.derive_y5, "Y_5", {}, "genus 5 positive relator"),
    "Y6": ("g6", D.derive_y6, "Y_6", {}, "genus 6 positive relator"),
    "Z_g-even": ("g4", lambda c: D.derive_zg(c, 4), "Z_g-even", {"g": 4},
                 "achiral word for even genus, shown at g = 4"),
    "Z_g-odd": ("g5", lambda c: D.derive_zg(c, 5), "Z_g-odd", {"g": 5},
                "achiral word for odd genus, shown at g = 5"),
}
for _k in range(1, 6):
    ENTRIES[f"X2,{_k}"] = ("g2", lambda c, k=_k: D.derive_x2k(c, k), "X_g,k", {"g": 2, "k": _k},
                           f"genus 2 with {_k} lantern site(s) used")
for _k in range(1, 3):
    ENTRIES[f"X3,{_k}"] = ("g3", lambda c, k=_k: D.derive_x3k(c, k), "X_g,k", {"g": 3, "k": _k},
                           f"genus 3 with {_k} copy(ies) through the t,v lantern")
    ENTRIES[f"X4,{_k}"] = ("g4rose", lambda c, k=_k: D.derive_x4k(c, k), "X_g,k", {"g": 4, "k": _k},
                           f"X4-rose with {_k} copy(ies) through the alpha2,t,v lantern")
    ENTRIES[f"Y4,{_k}"] = ("g4", lambda c, k=_k: D.derive_y4k(c, k), "Y_4,k", {"k": _k},
                           f"Y4 with {_k} copy(ies) through the t1_4,v1_4 lantern")
for _k in range(1, 4):
    for _m in range(1, _k + 1):
        if (_k, _m) != (3, 3):
            ENTRIES[f"X3,{_k},{_m}"] = (
                "g3", lambda c, k=_k, m=_m: D.derive_x3km(c, k, m), "X_3,k,m", {"k": _k, "m": _m},
                f"X3,{_k} with {_m} three-chain substitution(s)")

# Names that resolve to another entry's assets.
ALIASES = {"X4": "X4-rose", "X2,6": "X2-alt", "X3,3": "X3-alt", "X3,3,3": "X3-alt2",
           "X4,3": "X4-rose-alt", "Y4,3": "X4-alt"}

# name, instances, chi, sigma, chih, c1sq, h1
TABLE_ROWS = [
    ("X2", "X2", "26", "-18", "2", "-2", "0"),
    ("X2,k", "k=1..5", "26-k", "-18+k", "2", "-2+k", "0"),
    ("X2,6", "X2,6", "20", "-12", "2", "4", "Z/3"),
    ("X3", "X3", "28", "-20", "2", "-4", "0"),
    ("X3,k", "k=1..3", "28-k", "-20+k", "2", "-4+k", "0"),
    ("X3,k,m", "k=1..3 m=1..k", "28-k+10*m", "-20+k-6*m", "2+m", "-4+k+2*m", "0"),
    ("X4", "X4", "30", "-22", "2", "-6", "0"),
    ("X4,k", "k=1..3", "30-k", "-22+k", "2", "-6+k", "0"),
    ("Y4", "Y4", "39", "-27", "3", "-3", "0"),
    ("Y4,k", "k=1..3", "39-k", "-27+k", "3", "-3+k", "0"),
    ("Y5", "Y5", "41", "-29", "3", "-5", "0"),
    ("Y6", "Y6", "46", "-30", "4", "2", "-"),
]


def render_relator(w) -> str:
    """Write ``w`` as ``(W)^3`` or ``P (W)^2`` when it has that shape."""
    n = len(w)
    if n and n % 3 == 0 and w == w[: n // 3] * 3:
        return f"({render_word(w[: n // 3])})^3"
    for size in range(n // 2, 0, -1):
        tail = w[n - 2 * size:]
        if tail == tail[:size] * 2:
            head = render_word(w[: n - 2 * size])
            return f"{head} ({render_word(tail[:size])})^2".strip()
    return render_word(w)


def _ambiguity_note(spec) -> list:
    sols = spec.solve()
    if len(sols) == 1:
        return ["local constraints determine every class"]
    first = sols[0]
    loose = sorted(n for n in spec.unknowns
                   if any(not (s[n] == first[n]).all() for s in sols[1:]))
    return [f"{len(sols)} completions satisfy the local constraints; the",
            "lexicographically least is recorded.  Classes that differ between",
            "completions: " + ", ".join(loose)]


def write_surface(out: Path, name: str):
    spec = SPECS[name]()
    ctx = spec_context(spec)
    d = out / name
    d.mkdir(parents=True, exist_ok=True)
    note = "".join(f"# {line}\n" for line in
                   [f"surface {name}: classes solved from local data only"] + _ambiguity_note(spec))
    (d / "curves.mcgc").write_text(note + render_curve_table(ctx.table))
    rels = list(spec.constraints) + braid_instances(spec)
    (d / "relations.mcgr").write_text(f"# surface {name}: local relation instances\n"
                                      + render_relations(rels))
    (d / "defs.mcgdef").write_text(f"# surface {name}: named conjugates\n"
                                   + render_definitions(ctx.defs))
    return ctx


def write_entry(out: Path, name: str, ctx):
    surface, build, family, params, note = ENTRIES[name]
    b = build(ctx)
    final = b.w
    der = b.derivation(expected=final)
    res = run_derivation(der, ctx)
    ok, step = verify_derivation_homology(der, ctx, res)
    if not ok:
        raise RuntimeError(f"{name}: homology check fails at step {step}")
    sigma = closed_form_sigma(family, **params)
    if res.ledger.total() != sigma:
        raise RuntimeError(f"{name}: ledger total {res.ledger.total()} differs from {sigma}")
    d = out / name
    d.mkdir(parents=True, exist_ok=True)
    (d / "word.mcgw").write_text(f"# {name}: {note}\n{render_relator(final)}\n")
    (d / "derivation.mcgd").write_text(render_script(der, f"{name}: {note}"))
    meta = {"name": name, "genus": ctx.table.genus, "surface": surface, "family": family,
            "params": params, "sigma": sigma, "letters": len(final)}
    (d / "entry.json").write_text(json.dumps(meta, indent=2) + "\n")
    return meta


def write_expected_table(out: Path):
    lines = ["# name | instances | chi | sigma | chih | c1sq | h1  (formulas in k, m)"]
    for row in TABLE_ROWS:
        lines.append(" | ".join(row))
    (out / "expected_table.txt").write_text("\n".join(lines) + "\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path(__file__).with_name("data"))
    args = ap.parse_args(argv)
    contexts = {name: write_surface(args.out, name) for name in SPECS}
    for name, entry in ENTRIES.items():
        meta = write_entry(args.out, name, contexts[entry[0]])
        print(f"{name:12s} sigma {meta['sigma']:4d} letters {meta['letters']}")
    (args.out / "aliases.txt").write_text(
        "".join(f"{a} = {b}\n" for a, b in sorted(ALIASES.items())))
    write_expected_table(args.out)


if __name__ == "__main__":
    main()
