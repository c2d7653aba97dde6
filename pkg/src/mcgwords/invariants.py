"""Numerical invariants of the Lefschetz fibration defined by a positive relator."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .homology import CurveTable
from .words import EMPTY_DEFS, DefinitionTable, is_positive


def euler_characteristic(g: int, s: int) -> int:
    if g < 1 or s < 0:
        raise ValueError("need g >= 1 and s >= 0")
    return 4 - 4 * g + s


def smith_normal_form(A) -> list:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix."""
    M = [[int(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(M[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if M[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                if M[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = M[t][j] // p
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must divide the rest of the block
                bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if M[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                M[t] = [a + b for a, b in zip(M[t], M[i])]
                continue
            # move the smallest remaining entry of row/column t onto the pivot
            cands = [(abs(M[i][t]), i, t) for i in range(t, rows) if M[i][t]]
            cands += [(abs(M[t][j]), t, j) for j in range(t, cols) if M[t][j]]
            _, pi, pj = min(cands)
            M[t], M[pi] = M[pi], M[t]
            for row in M:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in tors) or any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError(f"torsion {tors} is not a normalized divisor chain")
        object.__setattr__(self, "torsion", tors)

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return "+".join(parts) if parts else "0"


def cokernel(A, n_rows: int) -> AbelianGroup:
    d = smith_normal_form(A) if np.size(A) else []
    return AbelianGroup(n_rows - len(d), tuple(x for x in d if x > 1))


def h1_of_fibration(w: Sequence, table: CurveTable, defs: DefinitionTable = EMPTY_DEFS) -> AbelianGroup:
    """H1 of the total space: the cokernel of the vanishing-cycle class matrix."""
    from .relations import curve_class
    if not is_positive(w, defs):
        raise ValueError("H1 is computed for positive words only")
    n = 2 * table.genus
    cols = [curve_class(a.curve, table, defs) for a in w]
    if not cols:
        return AbelianGroup(n)
    return cokernel(np.stack(cols, axis=1), n)


# -- closed forms ------------------------------------------------------------

_K_RANGE = {2: 6, 3: 3, 4: 3}


def closed_form_sigma(family: str, **p) -> int:
    """Signature formulas for the fibration families."""
    def need(cond, what):
        if not cond:
            raise ValueError(f"{family}: parameter out of range ({what})")

    if family == "X_g":
        need(p["g"] in (2, 3, 4), "g in 2..4")
        return -2 * (p["g"] + 7)
    if family == "X_g,k":
        g, k = p["g"], p["k"]
        need(g in _K_RANGE and 1 <= k <= _K_RANGE[g], f"1 <= k <= {_K_RANGE.get(g)}")
        return -2 * (g + 7) + k
    if family == "X_3,k,m":
        k, m = p["k"], p["m"]
        need(1 <= m <= k <= 3, "1 <= m <= k <= 3")
        return -20 + k - 6 * m
    if family == "Z_g-even":
        need(p["g"] >= 2 and p["g"] % 2 == 0, "even g >= 2")
        return -6 * p["g"] - 6
    if family == "Z_g-odd":
        need(p["g"] >= 3 and p["g"] % 2 == 1, "odd g >= 3")
        return -6 * p["g"] - 2
    if family == "Y_4":
        return -27
    if family == "Y_4,k":
        need(1 <= p["k"] <= 3, "1 <= k <= 3")
        return -27 + p["k"]
    if family == "Y_5":
        return -29
    if family == "Y_6":
        return -30
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class FibrationInvariants:
    genus: int
    s: int
    chi: int
    sigma: int
    chi_h: int
    c1sq: int
    h1: Optional[AbelianGroup] = None

    @classmethod
    def from_counts(cls, genus, s, sigma, h1=None):
        chi = euler_characteristic(genus, s)
        if (sigma + chi) % 4:
            raise ValueError(f"sigma + chi = {sigma + chi} is not divisible by 4")
        return cls(genus, s, chi, sigma, (sigma + chi) // 4, 3 * sigma + 2 * chi, h1)


class SignatureMismatch(ValueError):
    pass


def invariants_report(w, table: CurveTable, defs: DefinitionTable = EMPTY_DEFS,
                      ledger_sigma: Optional[int] = None, family: Optional[str] = None,
                      compute_h1: bool = True, **params) -> FibrationInvariants:
    """Full invariant record for the positive relator ``w``."""
    if not is_positive(w, defs):
        raise ValueError("invariants are computed for positive relators only")
    formula = closed_form_sigma(family, **params) if family else None
    if ledger_sigma is None and formula is None:
        raise ValueError("need a ledger total or a closed-form family")
    if ledger_sigma is not None and formula is not None and ledger_sigma != formula:
        raise SignatureMismatch(f"ledger gives {ledger_sigma}, formula gives {formula}")
    sigma = ledger_sigma if ledger_sigma is not None else formula
    h1 = h1_of_fibration(w, table, defs) if compute_h1 else None
    return FibrationInvariants.from_counts(table.genus, len(w), sigma, h1)
