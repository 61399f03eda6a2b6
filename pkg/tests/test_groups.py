"""Tests for the finite-group engine.

Numeric oracles (class counts, automorphism group sizes, census counts) are
standard facts about small groups, re-derived here by independent in-test
computation wherever that is cheap (brute force over the table), and frozen
as literals where it is not.
"""

import pytest

from fourg.errors import GroupConstructionError, InputFormatError, InvariantViolation
from fourg.groups import (
    COMPLETE_CATALOG_ORDERS,
    Automorphism,
    FiniteGroup,
    abelianization,
    automorphism_search,
    close_generator_map,
    cyclic,
    dicyclic,
    dihedral,
    dihedral_from_reflections,
    direct_product,
    divisors_of,
    extension_group_b,
    from_permutations,
    from_table,
    index_two_subgroups,
    is_isomorphic,
    iso_search,
    metacyclic,
    recognize,
    semidirect_cyclic,
    semidirect_with_automorphism,
    small_groups,
)


# ---------------------------------------------------------------------------
# Elements and basic structure.


class TestElements:
    def test_cyclic_orders(self):
        G = cyclic(12)
        c = G.generator("c")
        assert G.order == 12
        assert c.order() == 12
        assert (c ** 4).order() == 3
        assert (c ** 6).order() == 2
        assert c ** 12 == G.identity
        assert c ** -1 == c ** 11
        assert (c ** -5) * (c ** 5) == G.identity

    def test_power_zero_and_negative(self):
        G = dihedral(8)
        D = G.generator("D")
        A = G.generator("A")
        assert D ** 0 == G.identity
        assert D ** -1 == D ** 3
        assert (D * A) ** 2 == G.identity  # reflections square to 1
        assert A.inverse() == A

    def test_conjugation(self):
        G = dihedral(8)
        D, A = G.generator("D"), G.generator("A")
        assert D.conjugated_by(A) == D ** -1

    def test_cross_group_multiplication_rejected(self):
        G, H = cyclic(3), cyclic(3)
        with pytest.raises(ValueError):
            G.identity * H.identity

    def test_names_and_lookup(self):
        G = dihedral(8)
        assert {e.name for e in G.elements()} == {
            "1", "D", "D^2", "D^3", "A", "DA", "D^2A", "D^3A",
        }
        assert G.generator("D^2A") == G.generator("D") ** 2 * G.generator("A")
        with pytest.raises(KeyError):
            G.generator("missing")

    def test_is_abelian(self):
        assert cyclic(8).is_abelian()
        assert not dihedral(8).is_abelian()


class TestConjugacyClasses:
    def test_dihedral8_classes_match_brute_force(self):
        G = dihedral(8)
        classes = G.conjugacy_classes()
        # independent brute-force derivation from the table
        brute = set()
        for a in range(G.order):
            orbit = frozenset(
                G.mul_idx(G.mul_idx(h, a), G.inv_idx(h)) for h in range(G.order)
            )
            brute.add(orbit)
        assert {frozenset(e.idx for e in cls) for cls in classes} == brute
        assert len(classes) == 5
        assert sorted(len(c) for c in classes) == [1, 1, 2, 2, 2]

    def test_involution_count(self):
        assert len(dihedral(8).involutions()) == 5
        assert len(dicyclic(2).involutions()) == 1  # quaternion-type group
        assert len(cyclic(12).involutions()) == 1

    def test_class_predicate_selects_union_of_classes(self):
        G = dihedral(8)
        invol = G.conjugacy_classes(lambda e: e.order() == 2)
        assert sorted(len(c) for c in invol) == [1, 2, 2]

    def test_class_predicate_splitting_is_rejected(self):
        G = dihedral(8)
        with pytest.raises(InvariantViolation):
            G.conjugacy_classes(lambda e: e.name == "A")

    def test_centralizer_and_center(self):
        G = dihedral(8)
        D, A = G.generator("D"), G.generator("A")
        assert G.centralizer(D).order == 4
        assert G.centralizer(A).order == 4
        assert A in G.centralizer(A)
        assert sorted(e.name for e in G.center().elements_sorted()) == ["1", "D^2"]


# ---------------------------------------------------------------------------
# Constructors.


class TestConstructors:
    def test_dihedral_relations(self):
        for order in (6, 8, 10, 16, 24):
            G = dihedral(order)
            D, A = G.generator("D"), G.generator("A")
            assert D.order() == order // 2
            assert A.order() == 2
            assert A * D * A == D ** -1

    def test_dihedral_bad_order(self):
        with pytest.raises(GroupConstructionError):
            dihedral(7)

    def test_dihedral_from_reflections(self):
        G = dihedral_from_reflections(16)
        w, x = G.generator("w"), G.generator("x")
        assert w.order() == 2 and x.order() == 2
        assert (w * x).order() == 8
        assert (w * x).name == "wx"
        assert is_isomorphic(G, dihedral(16))

    def test_metacyclic_dihedral_case(self):
        # trivial square and inverting twist gives the dihedral group
        G = metacyclic(6, 5, 0)
        assert is_isomorphic(G, dihedral(12))

    def test_metacyclic_abelian_case(self):
        G = metacyclic(4, 1, 2)  # B^2 = C^2, commuting
        assert G.is_abelian()
        assert is_isomorphic(G, direct_product(cyclic(4), cyclic(2)))

    def test_metacyclic_validation(self):
        with pytest.raises(GroupConstructionError):
            metacyclic(8, 2)  # twist not a unit
        with pytest.raises(GroupConstructionError):
            metacyclic(10, 3)  # 3^2 = 9 != 1 mod 10
        with pytest.raises(GroupConstructionError):
            metacyclic(8, 3, 1)  # B^2 = C not twist-stable

    def test_dicyclic_relations(self):
        for m in (2, 3, 5):
            G = dicyclic(m)
            A, C = G.generator("A"), G.generator("C")
            assert G.order == 4 * m
            assert C.order() == 2 * m
            assert A * A == C ** m
            assert A * C * A ** -1 == C ** -1

    def test_quaternion_type_element_orders(self):
        G = dicyclic(2)
        assert sorted(e.order() for e in G.elements()) == [1, 2, 4, 4, 4, 4, 4, 4]

    def test_direct_product(self):
        G = direct_product(dihedral(8), cyclic(2, gen_name="y"))
        assert G.order == 16
        assert G.generator("y") * G.generator("D") == G.generator("D*y")
        assert G.generator("y").order() == 2

    def test_semidirect_cyclic(self):
        G = semidirect_cyclic(5, 4, 2)  # C5 : C4, faithful action
        assert G.order == 20
        c, b = G.generator("c"), G.generator("b")
        assert b * c * b ** -1 == c ** 2
        with pytest.raises(GroupConstructionError):
            semidirect_cyclic(5, 2, 2)  # 2^2 = 4 != 1 mod 5

    def test_semidirect_with_automorphism_checks_input(self):
        G = cyclic(5)
        bad = [0, 2, 1, 3, 4]  # not multiplicative
        with pytest.raises(GroupConstructionError):
            semidirect_with_automorphism(G, bad)
        inversion = [0, 4, 3, 2, 1]
        H = semidirect_with_automorphism(G, inversion)
        assert is_isomorphic(H, dihedral(10))

    def test_unique_names_required(self):
        with pytest.raises(GroupConstructionError):
            FiniteGroup([[0, 1], [1, 0]], ["e", "e"], [1])


class TestExtensionGroupB:
    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_defining_relations(self, g):
        G = extension_group_b(g)
        x, z, w = G.generator("x"), G.generator("z"), G.generator("w")
        t = z * w
        assert G.order == 8 * g
        assert x.order() == 2 and z.order() == 2 and w.order() == 2
        assert t.order() == 2 * g
        assert x * z * x == t ** (g - 1) * z
        assert x * w * x == t ** g * z

    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_orientation_character(self, g):
        G = extension_group_b(g)
        assert G.kappa(G.generator("z")) == -1
        assert G.kappa(G.generator("w")) == -1
        assert G.kappa(G.generator("x")) == 1
        assert G.kappa(G.generator("z") * G.generator("w")) == 1
        # exactly half the elements reverse orientation
        reversing = [e for e in G.elements() if G.orientation_reversing(e)]
        assert len(reversing) == 4 * g

    def test_shape_depends_on_parity(self):
        assert recognize(extension_group_b(2)).kind == "dihedral"
        assert recognize(extension_group_b(4)).kind == "dihedral"
        assert recognize(extension_group_b(3)).kind == "dihedral-x-c2"
        assert recognize(extension_group_b(5)).kind == "dihedral-x-c2"
        assert is_isomorphic(extension_group_b(2), dihedral(16))
        assert is_isomorphic(
            extension_group_b(3), direct_product(dihedral(12), cyclic(2))
        )


class TestOrientationCharacter:
    def test_valid_character(self):
        G = dihedral(8)
        G.attach_orientation({"D": 1, "A": -1})
        assert G.kappa(G.generator("D")) == 1
        assert G.kappa(G.generator("DA")) == -1
        # re-attaching the same character is fine
        G.attach_orientation({"D": 1, "A": -1})

    def test_invalid_character_rejected(self):
        G = cyclic(3)
        with pytest.raises(GroupConstructionError):
            G.attach_orientation({"c": -1})

    def test_conflicting_reattach_rejected(self):
        G = dihedral(8)
        G.attach_orientation({"D": 1, "A": -1})
        with pytest.raises(GroupConstructionError):
            G.attach_orientation({"D": -1, "A": -1})

    def test_unattached_raises(self):
        G = cyclic(4)
        with pytest.raises(ValueError):
            G.kappa(G.identity)


# ---------------------------------------------------------------------------
# Ingestion.


def _serialize(G, generators=True):
    lines = [f"order {G.order}"]
    for a in range(G.order):
        lines.append(" ".join(str(G.mul_idx(a, b)) for b in range(G.order)))
    if generators:
        lines.append("generators " + " ".join(str(g.idx) for g in G.generators))
    return "\n".join(lines)


class TestFromTable:
    def test_round_trip(self):
        G = dihedral(8)
        H = from_table(_serialize(G))
        assert H.order == 8
        assert is_isomorphic(G, H)

    def test_identity_relocation(self):
        G = dihedral(8)
        perm = list(range(8))
        perm[0], perm[3] = perm[3], perm[0]  # identity moves to input index 3
        table = [[0] * 8 for _ in range(8)]
        for a in range(8):
            for b in range(8):
                table[perm[a]][perm[b]] = perm[G.mul_idx(a, b)]
        text = "order 8\n" + "\n".join(" ".join(map(str, row)) for row in table)
        H = from_table(text)
        assert H.name_of(0) == "g3"
        assert is_isomorphic(H, G)

    def test_generators_line_optional(self):
        G = dicyclic(3)
        H = from_table(_serialize(G, generators=False))
        assert is_isomorphic(G, H)

    def test_bad_header(self):
        with pytest.raises(InputFormatError):
            from_table("size 2\n0 1\n1 0")

    def test_bad_row_length(self):
        with pytest.raises(InputFormatError):
            from_table("order 2\n0 1\n1")

    def test_no_identity(self):
        with pytest.raises(InputFormatError):
            from_table("order 2\n1 0\n0 0")

    def test_identity_not_at_zero_is_found(self):
        # a valid C2 table whose identity sits at input index 1
        G = from_table("order 2\n1 0\n0 1")
        assert G.order == 2
        assert G.name_of(0) == "g1"

    def test_non_associative_latin_square_rejected(self):
        # C6 with a 2x2 intercalate flipped: still a latin square with
        # two-sided inverses, but not associative
        table = [[(i + j) % 6 for j in range(6)] for i in range(6)]
        table[1][1], table[1][4] = table[1][4], table[1][1]
        table[4][1], table[4][4] = table[4][4], table[4][1]
        text = "order 6\n" + "\n".join(" ".join(map(str, row)) for row in table)
        with pytest.raises(InputFormatError):
            from_table(text)

    def test_bad_generator_indices(self):
        with pytest.raises(InputFormatError):
            from_table("order 2\n0 1\n1 0\ngenerators 5")


class TestFromPermutations:
    def test_alternating_four(self):
        G = from_permutations(["perm (1 2 3)", "perm (1 2)(3 4)"])
        assert G.order == 12
        assert sorted(abelianization(G)) == [3]

    def test_symmetric_three_from_string(self):
        G = from_permutations("perm (1 2 3)\nperm (1 2)\n")
        assert is_isomorphic(G, dihedral(6))

    def test_cycle_names(self):
        G = from_permutations(["perm (1 2)"])
        assert {e.name for e in G.elements()} == {"()", "(1 2)"}

    def test_overlapping_cycles_rejected(self):
        with pytest.raises(InputFormatError):
            from_permutations(["perm (1 2)(2 3)"])

    def test_repeated_point_rejected(self):
        with pytest.raises(InputFormatError):
            from_permutations(["perm (1 2 1)"])

    def test_garbage_rejected(self):
        with pytest.raises(InputFormatError):
            from_permutations(["rot (1 2)"])
        with pytest.raises(InputFormatError):
            from_permutations(["perm (1 2) junk"])
        with pytest.raises(InputFormatError):
            from_permutations(["perm (1 x)"])
        with pytest.raises(InputFormatError):
            from_permutations([])


# ---------------------------------------------------------------------------
# Homomorphism search.


class TestCloseGeneratorMap:
    def test_full_automorphism(self):
        G = dihedral(8)
        D, A, DA = G.generator("D"), G.generator("A"), G.generator("DA")
        res = close_generator_map(G, G, [(D.idx, D.idx), (A.idx, DA.idx)])
        assert res is not None
        img, covered = res
        assert covered == 8
        assert img[A.idx] == DA.idx

    def test_partial_map_reports_subgroup_size(self):
        G = dihedral(8)
        D = G.generator("D")
        res = close_generator_map(G, G, [(D.idx, D.idx)])
        assert res is not None
        _, covered = res
        assert covered == 4  # only the rotation subgroup is forced

    def test_order_clash_is_conflict(self):
        G = dihedral(8)
        D, A = G.generator("D"), G.generator("A")
        assert close_generator_map(G, G, [(D.idx, A.idx)]) is None

    def test_non_injective_is_conflict(self):
        G = dihedral(8)
        A, D2A = G.generator("A"), G.generator("D^2A")
        # both map to A: the product D^2 would need to map to 1
        res = close_generator_map(G, G, [(A.idx, A.idx), (D2A.idx, A.idx)])
        assert res is None


class TestAutomorphisms:
    def test_cyclic_six(self):
        auts = automorphism_search(cyclic(6))
        assert len(auts) == 2

    def test_klein_four(self):
        G = direct_product(cyclic(2, gen_name="a"), cyclic(2, gen_name="b"))
        assert len(automorphism_search(G)) == 6

    def test_dihedral8(self):
        auts = automorphism_search(dihedral(8))
        assert len(auts) == 8
        identity_count = sum(1 for a in auts if a.is_identity())
        assert identity_count == 1

    def test_quaternion_type(self):
        assert len(automorphism_search(dicyclic(2))) == 24

    def test_constraint(self):
        G = dihedral(8)
        D = G.generator("D")
        pinned = automorphism_search(G, constraint={D: D})
        assert len(pinned) == 4
        assert all(a(D) == D for a in pinned)

    def test_deterministic_order(self):
        G = dihedral(12)
        first = [a.mapping for a in automorphism_search(G)]
        second = [a.mapping for a in automorphism_search(G)]
        assert first == second

    def test_composition_closure(self):
        G = dihedral(8)
        auts = automorphism_search(G)
        table_maps = {a.mapping for a in auts}
        for a in auts:
            for b in auts:
                composed = tuple(a.mapping[b.mapping[i]] for i in range(G.order))
                assert composed in table_maps

    def test_preserves_character(self):
        G = dihedral(8)
        G.attach_orientation({"D": 1, "A": -1})
        auts = automorphism_search(G)
        preserving = [a for a in auts if a.preserves_character(G.orientation)]
        # D -> D^{+-1}, A -> (rotation)*A all fix this character
        assert len(preserving) == 8

    def test_trivial_group(self):
        auts = automorphism_search(cyclic(1))
        assert len(auts) == 1 and auts[0].is_identity()


class TestIsomorphism:
    def test_same_order_different_groups(self):
        assert not is_isomorphic(dihedral(8), dicyclic(2))
        assert not is_isomorphic(cyclic(8), dihedral(8))
        assert not is_isomorphic(
            cyclic(8), direct_product(cyclic(4), cyclic(2))
        )

    def test_positive_cases(self):
        assert is_isomorphic(metacyclic(6, 5, 0), dihedral(12))
        assert is_isomorphic(
            from_permutations(["perm (1 2 3)", "perm (1 2)"]), dihedral(6)
        )
        assert is_isomorphic(semidirect_cyclic(5, 4, 4), dicyclic(5))

    def test_iso_search_returns_bijection(self):
        maps = iso_search(dihedral_from_reflections(8), dihedral(8))
        assert maps
        img = maps[0]
        assert sorted(img) == list(range(8))


# ---------------------------------------------------------------------------
# Subgroups and recognition.


class TestSubgroups:
    def test_generated_subgroup(self):
        G = dihedral(8)
        H = G.subgroup([G.generator("D")])
        assert H.order == 4
        assert H.index == 2
        assert H.is_normal()
        K = G.subgroup([G.generator("A")])
        assert K.order == 2
        assert not K.is_normal()

    def test_as_group_round_trip(self):
        G = dihedral(8)
        H = G.subgroup([G.generator("D")]).as_group()
        assert recognize(H).kind == "cyclic"
        assert H.parent_group is G
        back = [H.parent_indices[i] for i in range(H.order)]
        assert sorted(back) == sorted(
            G.subgroup([G.generator("D")]).element_indices
        )
        assert H.from_parent[G.generator("D").idx] == 1

    def test_index_two_counts(self):
        assert len(index_two_subgroups(dihedral(8))) == 3
        assert len(index_two_subgroups(cyclic(4))) == 1
        assert len(index_two_subgroups(cyclic(5))) == 0
        klein = direct_product(cyclic(2, gen_name="a"), cyclic(2, gen_name="b"))
        assert len(index_two_subgroups(klein)) == 3
        assert len(index_two_subgroups(dicyclic(2))) == 3

    def test_index_two_subgroups_are_subgroups(self):
        G = dihedral(24)
        subs = index_two_subgroups(G)
        assert len(subs) == 3
        for H in subs:
            assert H.order == 12
            assert H.is_normal()
            members = H.element_indices
            for a in members:
                for b in members:
                    assert G.mul_idx(a, b) in members


class TestRecognition:
    def test_cyclic(self):
        s = recognize(cyclic(7))
        assert s.kind == "cyclic"
        assert s.witness["generator"].order() == 7

    def test_elementary_abelian(self):
        G = direct_product(
            cyclic(2, gen_name="a"),
            direct_product(cyclic(2, gen_name="b"), cyclic(2, gen_name="c")),
        )
        s = recognize(G)
        assert s.kind == "elementary-abelian"
        assert s.details == {"prime": 2, "rank": 3}

    def test_dihedral_with_witness(self):
        s = recognize(dihedral(12))
        assert s.kind == "dihedral"
        r, refl = s.witness["rotation"], s.witness["reflection"]
        assert r.order() == 6 and refl.order() == 2
        assert refl * r * refl == r ** -1

    def test_dihedral_x_c2(self):
        G = direct_product(dihedral(12), cyclic(2, gen_name="y"))
        s = recognize(G)
        assert s.kind == "dihedral-x-c2"
        assert s.details["dihedral_order"] == 12
        y = s.witness["central"]
        assert y.order() == 2 and G.centralizer(y).order == G.order
        r, refl = s.witness["rotation"], s.witness["reflection"]
        assert refl * r * refl == r ** -1 and r.order() == 6

    def test_other(self):
        s = recognize(dicyclic(2))
        assert s.kind == "other"
        assert s.details["abelianization"] == [2, 2]

    def test_describe(self):
        assert recognize(cyclic(5)).describe() == "C5"
        assert recognize(dihedral(16)).describe() == "dihedral of order 16"

    def test_abelian_but_not_elementary_is_other_or_cyclic(self):
        s = recognize(direct_product(cyclic(4), cyclic(2)))
        assert s.kind == "other"
        assert s.details["abelianization"] == [4, 2]


class TestAbelianization:
    def test_oracles(self):
        assert abelianization(dihedral(8)) == (2, 2)
        assert abelianization(dicyclic(2)) == (2, 2)
        assert abelianization(dicyclic(3)) == (4,)
        assert abelianization(cyclic(12)) == (12,)
        assert abelianization(direct_product(cyclic(6), cyclic(4))) == (12, 2)
        a4 = from_permutations(["perm (1 2 3)", "perm (1 2)(3 4)"])
        assert abelianization(a4) == (3,)
        s4 = from_permutations(["perm (1 2 3 4)", "perm (1 2)"])
        assert abelianization(s4) == (2,)
        a5 = from_permutations(["perm (1 2 3 4 5)", "perm (1 2 3)"])
        assert abelianization(a5) == ()

    def test_invariant_factor_chain(self):
        invariants = abelianization(direct_product(cyclic(6), cyclic(4)))
        for big, small in zip(invariants, invariants[1:]):
            assert big % small == 0


# ---------------------------------------------------------------------------
# Catalog.

# Standard census: number of isomorphism types for each order at which the
# catalog claims completeness.
CENSUS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
    11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 20: 5, 21: 2, 22: 2, 25: 2,
    26: 2, 28: 4, 30: 4, 33: 1, 34: 2, 35: 1,
}


class TestSmallGroups:
    def test_census_at_complete_orders(self):
        assert set(CENSUS) == set(COMPLETE_CATALOG_ORDERS)
        for n, expected in sorted(CENSUS.items()):
            assert len(small_groups(n)) == expected, f"order {n}"

    def test_pairwise_non_isomorphic(self):
        for n in (8, 12, 20):
            groups = small_groups(n)
            for i, G in enumerate(groups):
                for H in groups[i + 1:]:
                    assert not is_isomorphic(G, H)

    def test_all_have_right_order(self):
        for n in (8, 12, 16, 20, 24):
            assert all(G.order == n for G in small_groups(n))

    def test_order_eight_contents(self):
        kinds = sorted(recognize(G).describe() for G in small_groups(8))
        assert "C8" in kinds
        assert "dihedral of order 8" in kinds

    def test_divisors(self):
        assert divisors_of(12) == [1, 2, 3, 4, 6, 12]
        assert divisors_of(1) == [1]
        assert divisors_of(7) == [1, 7]
