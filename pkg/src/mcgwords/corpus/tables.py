"""Local geometric data for the corpus surfaces and the class solver runs.

Everything here is local: the standard chain classes, which curves are
disjoint or meet once, separating curves, and the lantern/chain/star
instances that hold on small subsurfaces.  Final relators never appear here;
they are checked against the solved tables afterwards.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..homology import CurveTable, solve_classes
from ..relations import Kind, RelationInstance, relation
from ..words import DefinitionTable, parse_word


def basis(g, kind, i):
    v = np.zeros(2 * g, dtype=np.int64)
    if 1 <= i <= g:
        v[2 * (i - 1) + (0 if kind == "a" else 1)] = 1
    return v


def chain_classes(g):
    """[c_2i] = a_i and [c_2i+1] = b_i + b_i+1."""
    out = {}
    for i in range(g + 1):
        out[f"c{2 * i + 1}"] = basis(g, "b", i) + basis(g, "b", i + 1)
        if i:
            out[f"c{2 * i}"] = basis(g, "a", i)
    return dict(sorted(out.items(), key=lambda kv: int(kv[0][1:])))


@dataclass
class TableSpec:
    name: str
    genus: int
    known: dict
    unknowns: list
    separating: set = field(default_factory=set)
    unit: set = field(default_factory=set)
    meets: set = field(default_factory=set)   # pairs that intersect but are not unit pairs
    disjoint: set = field(default_factory=set)
    aliases: dict = field(default_factory=dict)
    constraints: list = field(default_factory=list)
    defs: dict = field(default_factory=dict)
    bound: int = 1
    support: dict = field(default_factory=dict)

    def partial(self) -> CurveTable:
        return CurveTable(self.genus, dict(self.known), set(self.disjoint), set(self.unit),
                          set(self.separating), dict(self.aliases))

    def definitions(self) -> DefinitionTable:
        return DefinitionTable({k: parse_word(v) for k, v in self.defs.items()})

    def solve(self) -> list:
        return solve_classes(self.partial(), self.unknowns, self.constraints, self.bound,
                             self.definitions(), support=self.support)


def _pair(a, b):
    return tuple(sorted((a, b)))


def chain_surface(g, lanterns=True):
    """Curves of the glued chain surface of genus ``g``.

    Handles 1 and g carry the chain curves c1, c2 and c2g, c2g+1; handle i+1
    (1 <= i <= g-2) carries c2i+2 and the parallel pair e_i, f_i.  The gluing
    circle between handles i and i+1 is delta_i, and x_i is the third
    interior curve of the lantern around it.
    """
    c = [f"c{j}" for j in range(1, 2 * g + 2)]
    e = [f"e{i}" for i in range(1, g - 1)]
    f = [f"f{i}" for i in range(1, g - 1)]
    x = [f"x{i}" for i in range(1, g)]
    d = [f"delta{i}" for i in range(1, g)]
    names = c + e + f + x + d
    unit = {_pair(f"c{j}", f"c{j + 1}") for j in range(1, 2 * g + 1)}
    for i in range(1, g - 1):
        unit |= {_pair(f"c{2 * i + 2}", f"e{i}"), _pair(f"c{2 * i + 2}", f"f{i}")}
    meets = set()
    for i in range(1, g):
        meets |= {_pair(f"c{2 * i}", f"x{i}"), _pair(f"c{2 * i + 2}", f"x{i}"),
                  _pair(f"c{2 * i + 1}", f"x{i}"), _pair(f"c{2 * i + 1}", f"delta{i}"),
                  _pair(f"x{i}", f"delta{i}")}
    disjoint = {_pair(a, b) for a, b in itertools.combinations(names, 2)} - unit - meets

    def side(i):
        # b-curves of handle i as they bound the lantern around delta_i / delta_i-1
        if i == 1:
            return ["c1", "c1"]
        if i == g:
            return [f"c{2 * g + 1}", f"c{2 * g + 1}"]
        return [f"e{i - 1}", f"f{i - 1}"]

    rels = []
    if lanterns:
        # boundary letters are stored so that solving for delta_i^-1 yields
        # x_i c_2i+1 followed by the left pair and then the right pair
        for i in range(1, g):
            right, left = side(i + 1), side(i)
            rels.append(relation(f"L{i}", Kind.LANTERN, f"delta{i} x{i} c{2 * i + 1}",
                                 " ".join(right[::-1] + left[::-1])))
    rels.append(relation("C2a", Kind.CHAIN_C2, "(c1 c2)^6", "delta1"))
    for i in range(1, g - 1):
        rels.append(relation(f"C3_{i}", Kind.CHAIN_C3, f"(c{2 * i + 2} e{i} c{2 * i + 2} f{i})^3",
                             f"delta{i} delta{i + 1}"))
    rels.append(relation("C2b", Kind.CHAIN_C2, f"(c{2 * g + 1} c{2 * g})^6", f"delta{g - 1}"))
    return {
        "known": chain_classes(g),
        "unknowns": [n for n in d + e + f + x],
        "separating": set(d),
        "unit": unit,
        "meets": meets,
        "disjoint": disjoint,
        "constraints": rels,
    }


def lantern_pairs(rels):
    """Interior curves of a lantern miss its boundary; boundary curves miss each other."""
    out = set()
    for r in rels:
        if r.kind is not Kind.LANTERN:
            continue
        inner = [a.curve for a in r.lhs]
        outer = sorted({a.curve for a in r.rhs})
        out |= {_pair(a, b) for a in inner for b in outer if a != b}
        out |= {_pair(a, b) for a, b in itertools.combinations(outer, 2)}
    return out


def _rename_word(w, ren):
    return " ".join(f"{ren.get(a.curve, a.curve)}{'' if a.sign > 0 else '^-1'}" for a in w)


def _renamed(rel, ren):
    return relation(rel.name, rel.kind, _rename_word(rel.lhs, ren), _rename_word(rel.rhs, ren))


def chain_spec(name, g, extra_unknowns=(), extra_constraints=(), extra_disjoint=(),
               extra_meets=(), defs=None, rename=None, bound=1, aliases=None, extra_unit=()):
    base = chain_surface(g)
    ren = rename or {}
    r = lambda n: ren.get(n, n)
    rels = [_renamed(x, ren) for x in base["constraints"]]
    rels += [relation(*x) if isinstance(x, tuple) else x for x in extra_constraints]
    disjoint = {_pair(r(a), r(b)) for a, b in base["disjoint"]}
    disjoint |= lantern_pairs(rels)
    disjoint |= {_pair(*p) for p in extra_disjoint}
    meets = {_pair(r(a), r(b)) for a, b in base["meets"]} | {_pair(*p) for p in extra_meets}
    unit = {_pair(r(a), r(b)) for a, b in base["unit"]} | {_pair(*p) for p in extra_unit}
    disjoint -= meets | unit
    return TableSpec(
        name=name, genus=g, known=base["known"],
        unknowns=[r(u) for u in base["unknowns"]] + list(extra_unknowns),
        separating={r(s) for s in base["separating"]}, unit=unit, meets=meets,
        disjoint=disjoint, aliases=dict(aliases or {}), constraints=rels,
        defs=dict(defs or {}), bound=bound)


def spec_g2():
    return chain_spec(
        "g2", 2,
        extra_unknowns=["k1", "h1"],
        extra_constraints=[("Lk", "Lantern", "k1 h1 c1", "c3 c3 c5 c5"),
                           ("L1c", "Lantern", "c3 delta x", "c1 c1 c5 c5")],
        defs={"d": "c1 c2 c1^-1", "t2": "c3 c4 c3^-1", "s2": "c5^-1 c4 c5",
              "m": "c4^-1 c3 c4 c3^-1 c4", "n": "c4^-1 k1 c4", "p": "c4^-1 h1 c4"},
        rename={"delta1": "delta", "x1": "x"}, bound=2)


def _zg_defs(g):
    defs = {"d": "c1 c2 c1^-1"}
    for i in range(1, g - 1, 2):
        defs[f"r{i}"] = f"f{i}^-1 c{2 * i + 2} f{i}"
    return defs


def chain_support(g):
    """Handles each interior curve of the chain surface can touch."""
    out = {}
    for i in range(1, g - 1):
        out[f"e{i}"] = out[f"f{i}"] = [i + 1]
    for i in range(1, g):
        out[f"x{i}"] = [i, i + 1]
    return out


def spec_chain(g):
    """The bare glued chain surface used by the general-genus words.

    Above genus six the search runs handle by handle: each unknown only
    ranges over classes carried by the handles it can touch.
    """
    spec = chain_spec(f"g{g}", g, extra_constraints=_c3_alt_forms(g), defs=_zg_defs(g))
    if g > 6:
        spec.support = chain_support(g)
    return spec


def _c3_alt_forms(g):
    return [(f"C3_{i}_abc", "ChainC3", f"(e{i} c{2 * i + 2} f{i})^4", f"delta{i} delta{i + 1}")
            for i in range(1, g - 1)]


def spec_g3():
    defs = {"d": "c1 c2 c1^-1", "r": "f1^-1 c4 f1", "ybar1": "c1 c1 c2 c1^-1 c1^-1", "s2": "c5^-1 c4 c5",
                 "r3": "c7^-1 c6 c7", "xbar2": "c5^-1 x2 c5"}
    return chain_spec(
        "g3", 3,
        extra_unknowns=["t", "v"],
        extra_constraints=_c3_alt_forms(3) + [
            ("Lt", "Lantern", "f1 t v", "c7 c5 c3 c1"),
            ("C3x", "ChainC3", "(c1 c2 c3)^4", "c8 f1")],
        aliases={"c8": "e1"}, defs=defs)


def spec_g4():
    defs = _zg_defs(4)
    defs.update({"y2": "f1^-1 c4 e1 c4^-1 f1", "s3": "c7^-1 c6 c7", "xbar3": "c7^-1 x3 c7",
                 "ybar1": "c1 c1 c2 c1^-1 c1^-1", "u1": "c3 r1 c3^-1", "sbar2": "c3 c4 c3^-1",
                 "w": "v^-1 x2 v", "z": "v^-1 t v", "r4": "c9^-1 c8 c9"})
    return chain_spec(
        "g4", 4,
        extra_unknowns=["t", "v", "t1_4", "v1_4"],
        extra_constraints=_c3_alt_forms(4) + [
            ("Lt", "Lantern", "f2 t v", "c9 c7 c5 f1"),
            ("Lt14", "Lantern", "f1 t1_4 v1_4", "c9 v c3 c1")],
        # t sits in the sphere cut out by f1 c5 c7 c9, away from handle 1
        extra_disjoint=[("t", "c1"), ("t", "c2")],
        defs=defs)


def spec_g4rose():
    """Three handles glued around a central torus with three boundary circles.

    Handle i carries a_i, b_i; the central torus carries d and the three
    arcs-closed-up alpha_i, which are parallel in the closed surface.
    """
    g = 4
    known = {}
    for i in (1, 2, 3):
        known[f"a{i}"], known[f"b{i}"] = basis(g, "a", i), basis(g, "b", i)
        known[f"alpha{i}"] = basis(g, "a", 4)
    known["d"] = basis(g, "b", 4)
    deltas = [f"delta{i}" for i in (1, 2, 3)]
    unknowns = deltas + [f"x{i}" for i in (1, 2, 3)] + [f"c{i}" for i in (1, 2, 3)] + ["t", "v"]
    names = list(known) + unknowns
    unit = {_pair(f"a{i}", f"b{i}") for i in (1, 2, 3)} | {_pair(f"alpha{i}", "d") for i in (1, 2, 3)}
    meets = set()
    for i in (1, 2, 3):
        meets |= {_pair(f"x{i}", f"b{i}"), _pair(f"c{i}", f"b{i}"), _pair(f"x{i}", "d"),
                  _pair(f"c{i}", "d"), _pair(f"x{i}", f"c{i}"), _pair(f"delta{i}", f"x{i}"),
                  _pair(f"delta{i}", f"c{i}")}
    meets |= {_pair("t", y) for y in ("b1", "b2", "d", "v", "alpha2", "x1", "x2")}
    meets |= {_pair("v", y) for y in ("b1", "b2", "d", "alpha2", "x1", "x2")}
    rels = []
    for i in (1, 2, 3):
        j = i % 3 + 1
        rels.append(relation(f"L{i}", Kind.LANTERN, f"delta{i} x{i} c{i}",
                             f"alpha{j} alpha{i} a{i} a{i}"))
        rels.append(relation(f"C2_{i}", Kind.CHAIN_C2, f"(b{i} a{i})^6", f"delta{i}"))
    rels.append(relation("E", Kind.STAR, "(alpha1 alpha2 alpha3 d)^3", "delta1 delta2 delta3"))
    rels.append(relation("Lr", Kind.LANTERN, "alpha2 t v", "a1 a2 c1 c2"))
    disjoint = {_pair(a, b) for a, b in itertools.combinations(names, 2)} - unit - meets
    disjoint |= lantern_pairs(rels)
    disjoint -= meets | unit
    defs = {"r": "alpha3^-1 alpha2^-1 alpha1^-1 d alpha1 alpha2 alpha3",
            "g1": "a1 b1 a1^-1", "g2": "a2 b2 a2^-1"}
    return TableSpec(name="g4rose", genus=g, known=known, unknowns=unknowns,
                     separating=set(deltas), unit=unit, meets=meets, disjoint=disjoint,
                     constraints=rels, defs=defs)


def spec_g5():
    defs = _zg_defs(5)
    defs.update({"y2": "f1^-1 c4 e1 c4^-1 f1", "s3": "c7^-1 c6 c7", "xbar3": "c7^-1 x3 c7",
                 "rbar3": "c8^-1 e3 c8"})
    return chain_spec(
        "g5", 5,
        extra_unknowns=["t", "v"],
        extra_constraints=_c3_alt_forms(5) + [("Lt", "Lantern", "f2 t v", "f3 c7 c5 f1")],
        extra_disjoint=[("t", "c1"), ("t", "c2"), ("v", "c1"), ("v", "c2")],
        defs=defs)


def spec_g6():
    defs = _zg_defs(6)
    defs.update({
        "y2": "f1^-1 c4 e1 c4^-1 f1", "y4": "f3^-1 c8 e3 c8^-1 f3",
        "s3": "c7^-1 c6 c7", "xbar3": "c7^-1 x3 c7", "s5": "c11^-1 c10 c11",
        "xbar5": "c11^-1 x5 c11", "s6": "c13^-1 c12 c13", "y6": "c13^-1 s6 c13",
        "w6": "c13^-1 y6 c13", "tbar4_6": "v4_6^-1 t4_6 v4_6",
        "y4_6": "v4_6^-1 y4 v4_6", "c8_12": "v4_6^-1 c8 v4_6", "x4_5": "v4_6^-1 x4 v4_6",
        "xbar3_2": "v2_4 xbar3 v2_4^-1", "t1_2_6": "v2_6 t1_6 v2_6^-1",
        "u1": "c3^-1 d c3", "xbar1": "c3^-1 x1 c3"})
    far = [(a, b) for a in ("t4_6", "v4_6") for b in ("c1", "c2", "c3")]
    return chain_spec(
        "g6", 6,
        extra_unknowns=["t2_4", "v2_4", "t4_6", "v4_6", "t2_6", "v2_6", "t1_6", "v1_6"],
        extra_constraints=_c3_alt_forms(6) + [
            ("L24", "Lantern", "f2 t2_4 v2_4", "f3 c7 c5 f1"),
            ("L46", "Lantern", "f4 t4_6 v4_6", "c13 c11 c9 f3"),
            ("L26", "Lantern", "f3 t2_6 v2_6", "c13 v4_6 v2_4 f1"),
            ("L16", "Lantern", "f1 t1_6 v1_6", "c13 v2_6 c3 c1")],
        # v2_4 commutes with s3 = c7^-1 c6 c7 and misses c7, hence misses c6
        extra_disjoint=far + [("v2_4", "c6")],
        defs=defs)


SPECS = {"g2": spec_g2, "g3": spec_g3, "g4": spec_g4, "g4rose": spec_g4rose, "g5": spec_g5,
         "g6": spec_g6}


def braid_instances(spec: TableSpec):
    out = []
    for a, b in sorted(spec.unit):
        out.append(relation(f"B_{a}_{b}", Kind.BRAID, f"{a} {b} {a}", f"{b} {a} {b}"))
    return out


def solved_table(spec: TableSpec):
    """Lexicographically least completion and the number of completions found."""
    sols = spec.solve()
    if not sols:
        raise ValueError(f"{spec.name}: local constraints admit no classes")
    return sols[0], len(sols)


def spec_context(spec: TableSpec):
    """Solved table, relation registry (constraints plus braids) and definitions."""
    from ..relations import Registry
    from ..rewrite import Context
    table, _ = solved_table(spec)
    return Context(Registry(spec.constraints + braid_instances(spec)), table, spec.definitions())
