import numpy as np
import pytest

from mcgwords.homology import CurveTable, UnknownCurveError
from mcgwords.relations import (Kind, Registry, RelationError, builtin_kinds, chain_c3_forms_agree,
                                check_instance, curve_class, parse_relations, registry_for,
                                relation, render_relations)
from mcgwords.words import DefinitionTable, parse_word

from test_homology import chain_table


class TestKinds:
    def test_signature_values(self):
        want = {"Braid": 0, "Commute": 0, "ChainC2": -7, "ChainC3": -6, "Lantern": 1,
                "Star": -5, "TorusOrder": 0, "ConjugationDef": 0}
        assert {k.tag: k.signature for k in builtin_kinds()} == want

    def test_lookup(self):
        assert Kind.lookup("chainc2") is Kind.CHAIN_C2
        with pytest.raises(KeyError):
            Kind.lookup("Hexagon")


class TestCheckInstance:
    def test_genus_two_lantern(self, g2):
        r = relation("L", "Lantern", "delta x c3", "c1 c1 c5 c5")
        assert check_instance(r, g2.table, g2.defs)

    def test_braid_on_chain(self):
        assert check_instance(relation("B", "Braid", "c1 c2 c1", "c2 c1 c2"), chain_table(2))

    def test_braid_on_disjoint_pair_fails_shape(self):
        r = relation("B", "Braid", "c1 c4 c1", "c4 c1 c4")
        assert not check_instance(r, chain_table(2))

    def test_commute(self):
        t = chain_table(2)
        t.disjoint_pairs.add(("c1", "c4"))
        assert check_instance(relation("K", "Commute", "c1 c4", "c4 c1"), t)
        assert not check_instance(relation("K", "Commute", "c1 c2", "c2 c1"), t)

    def test_unequal_sides(self):
        assert not check_instance(relation("B", "Braid", "c1 c2 c1", "c1 c2 c2"), chain_table(2))

    def test_unknown_curve(self):
        with pytest.raises(UnknownCurveError):
            check_instance(relation("B", "Braid", "c1 q c1", "q c1 q"), chain_table(2))

    def test_torus_order(self):
        t = CurveTable(1, {"a": [1, 0], "b": [0, 1]})
        assert check_instance(relation("T", "TorusOrder", "(a b)^6", ""), t)

    def test_chain_three_forms(self):
        g3 = registry_for(3)
        by_name = {r.name: r for r in g3}
        c3 = by_name["C3_1"]
        assert c3.kind is Kind.CHAIN_C3
        assert parse_word("(e1 c4 f1)^4") == by_name["C3_1_abc"].lhs

    def test_lantern_wrong_boundary(self, g2):
        r = relation("L", "Lantern", "delta x c3", "c1 c1 c1 c5")
        assert not check_instance(r, g2.table, g2.defs)

    def test_sign_flip_of_interior_class_still_passes(self, g2):
        t = g2.table.copy()
        t.classes["x"] = -t.classes["x"]
        assert check_instance(relation("L", "Lantern", "delta x c3", "c1 c1 c5 c5"), t, g2.defs)

    def test_conjugation_definition(self):
        defs = DefinitionTable({"d": parse_word("c1 c2 c1^-1")})
        r = relation("D", "ConjugationDef", "c1 c2 c1^-1", "d")
        assert check_instance(r, chain_table(2), defs)


class TestCurveClass:
    def test_defined_letter_class(self):
        defs = DefinitionTable({"d": parse_word("c1 c2 c1^-1")})
        t = chain_table(2)
        c = curve_class("d", t, defs)
        # image of a1 under the twist about b1 is a1 - b1 up to sign
        assert sorted([c.tolist(), (-c).tolist()])[1] == [1, -1, 0, 0]

    def test_non_twist_rejected(self):
        defs = DefinitionTable({"z": parse_word("c1 c2 c1")})
        with pytest.raises(RelationError):
            curve_class("z", chain_table(2), defs)


class TestRegistry:
    def test_genus_two(self):
        rels = registry_for(2)
        kinds = [r.kind for r in rels]
        assert kinds.count(Kind.CHAIN_C2) == 2 and kinds.count(Kind.LANTERN) >= 1
        assert any(r.name == "L1" and r.kind is Kind.LANTERN for r in rels)

    def test_rose(self):
        rels = registry_for("g4rose")
        stars = [r for r in rels if r.kind is Kind.STAR]
        assert len(stars) == 1
        assert stars[0].lhs == parse_word("(alpha1 alpha2 alpha3 d)^3")
        assert sum(r.kind is Kind.LANTERN for r in rels) >= 3

    def test_missing_genus(self):
        with pytest.raises(RelationError):
            registry_for(9)

    @pytest.mark.parametrize("name", ["g2", "g3", "g4", "g4rose", "g5", "g6"])
    def test_every_instance_valid(self, name):
        from mcgwords.corpus import load_surface
        ctx = load_surface(name)
        assert ctx.registry.validate(ctx.table, ctx.defs) == []
        for r in ctx.registry.values():
            if r.kind is Kind.CHAIN_C3:
                assert chain_c3_forms_agree(r, ctx.table, ctx.defs)

    def test_unknown_name(self):
        with pytest.raises(RelationError):
            Registry()["nope"]

    def test_validate_reports_bad_instance(self):
        reg = Registry([relation("B", "Braid", "c1 c4 c1", "c4 c1 c4")])
        assert reg.validate(chain_table(2)) == ["B"]


class TestFiles:
    def test_roundtrip(self):
        rels = [relation("L1", "Lantern", "delta x c3", "c5 c5 c1 c1"),
                relation("C2a", "ChainC2", "(c1 c2)^6", "delta")]
        again = parse_relations(render_relations(rels))
        assert again == rels

    def test_duplicate_names(self):
        text = 'relation A kind Braid lhs "a b a" rhs "b a b"\n' * 2
        with pytest.raises(RelationError):
            parse_relations(text)

    def test_bad_line(self):
        with pytest.raises(RelationError):
            parse_relations("relation A Braid a b a")

    def test_interior_and_boundary(self):
        r = relation("L1", "Lantern", "delta x c3", "c5 c5 c1 c1")
        assert r.interior == ("delta", "x", "c3")
        assert r.boundary == {"c5": 2, "c1": 2}
        assert r.relator == parse_word("delta x c3 c1^-1 c1^-1 c5^-1 c5^-1")
