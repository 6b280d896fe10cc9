import pytest

from conftest import AB
from stallings.colored import check_edge_condition
from stallings.counterexample import (
    build_delta,
    build_family,
    build_gamma,
    color_word,
    exponent_characterization_check,
    infinite_rank_truncation,
    ladder_loop_word,
    nielsen_word,
    stabilize_one_noninjective,
    stabilize_two_noninjective,
    verify_free_basis,
    verify_injectivity,
    verify_main,
)
from stallings.graphs import SubgroupHandle, add_path, is_folded, pointed_isomorphic, rank
from stallings.words import Alphabet, Homomorphism, Word


class TestBuildDelta:
    def test_counts_n3(self):
        graph = build_delta(3)
        assert len(graph.vertices) == 6
        assert len(graph.edges) == 8
        assert rank(graph) == 3

    def test_counts_n2(self):
        graph = build_delta(2)
        assert len(graph.vertices) == 3
        assert len(graph.edges) == 4
        assert rank(graph) == 2

    def test_counts_formula(self):
        for n in range(2, 11):
            graph = build_delta(n)
            interior = sum(i - 1 for i in range(1, n))
            assert len(graph.vertices) == 1 + 2 * (n - 1) + interior
            assert len(graph.edges) == 1 + 2 * (n - 1) + sum(range(1, n))
            assert rank(graph) == n

    def test_folded(self):
        for n in range(2, 11):
            assert is_folded(build_delta(n))

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            build_delta(1)

    def test_add_path_construction_matches(self):
        # rebuild via add_path: rays first, then close each rung
        n = 5
        graph = build_delta(n).__class__(AB)
        graph.add_edge(0, 0, 0)
        b = AB.gen("b")
        forward_end = add_path(graph, 0, b ** (n - 1))
        backward_end = add_path(graph, 0, b ** -(n - 1))
        assert add_path(graph, 0, b ** (n - 1)) == forward_end  # ray reused
        for i in range(1, n):
            p_i = add_path(graph, 0, b ** i)
            q_i = add_path(graph, 0, b ** -i)
            end = add_path(graph, p_i, AB.gen("a", -1) ** (i - 1))
            graph.add_edge(q_i, end, 0)
        reference = build_delta(n)
        assert len(graph.vertices) == len(reference.vertices)
        assert len(graph.edges) == len(reference.edges)
        assert pointed_isomorphic(graph, reference)


class TestBuildGamma:
    def test_counts_n3(self):
        cg = build_gamma(3)
        assert len(cg.graph.vertices) == 3
        assert len(cg.graph.edges) == 6

    def test_counts_n2(self):
        cg = build_gamma(2)
        assert len(cg.graph.vertices) == 2
        assert len(cg.graph.edges) == 3
        assert rank(cg.graph) == 2

    def test_colored_and_folded(self):
        for n in range(2, 11):
            cg = build_gamma(n)
            assert is_folded(cg.graph)
            assert check_edge_condition(cg) == []
            assert cg.colors == {i: color_word(AB, i) for i in range(n)}

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            build_gamma(1)


class TestVerifyFreeBasis:
    def test_ladder_loops(self):
        for n in (2, 4, 7):
            images = [AB.gen("a")] + [ladder_loop_word(AB, i) for i in range(1, n)]
            assert verify_free_basis(images) == (True, n)

    def test_redundant_generators(self):
        assert verify_free_basis([AB.word("a"), AB.word("a a")]) == (False, 1)

    def test_h_images(self):
        for n in (2, 5):
            images = [AB.gen("b")] + [color_word(AB, i) ** 2 for i in range(1, n)]
            assert verify_free_basis(images) == (True, n)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            verify_free_basis([])


class TestVerifyInjectivity:
    def test_nielsen_images(self):
        inst = build_family(3)
        assert inst.g(nielsen_word(inst.domain, 1)) == AB.word("b a^-1 b")
        assert inst.g(nielsen_word(inst.domain, 2)) == AB.word("b b a^-1 a^-1 b b")

    def test_reports(self):
        for n in (2, 3, 6):
            g_rep, h_rep = verify_injectivity(build_family(n))
            assert g_rep.injective and g_rep.rank == n
            assert h_rep.injective and h_rep.rank == n

    def test_swap_route(self):
        inst = build_family(4)
        from stallings.words import swap_generators

        swapped = [swap_generators(w) for w in inst.h.images]
        assert swapped[0] == AB.gen("a")
        assert verify_free_basis(swapped) == (True, 4)

    def test_nielsen_identity_all_n(self):
        for n in range(2, 11):
            inst = build_family(n)
            for i in range(1, n):
                assert inst.g(nielsen_word(inst.domain, i)) == ladder_loop_word(AB, i)


class TestVerifyMain:
    def test_n3_violates(self):
        report = verify_main(3)
        assert report.certificate.rank == 4
        assert report.claimed_rank == 4
        assert report.conjecture_violated

    def test_n2_does_not_violate(self):
        report = verify_main(2)
        assert report.certificate.rank == 2
        assert not report.conjecture_violated

    def test_n10(self):
        assert verify_main(10).certificate.rank == 18

    def test_family_counts(self):
        for n in range(2, 11):
            report = verify_main(n)
            graph = report.certificate.subgroup.graph
            assert report.certificate.rank == 2 * n - 2
            assert len(graph.vertices) == n
            assert len(graph.edges) == 3 * n - 3
            assert report.conjecture_violated == (n >= 3)

    def test_json_dict_keys(self):
        payload = verify_main(3).to_json_dict()
        assert set(payload) == {"n", "gInjective", "hInjective", "equalizerRank",
                                "colorsInjective", "conjectureViolated", "basisWitness"}
        assert payload["equalizerRank"] == 4
        assert len(payload["basisWitness"]) == 4

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            verify_main(1)


class TestColorsDistinct:
    def test_up_to_fifty(self):
        seen = {color_word(AB, i).letters for i in range(50)}
        assert len(seen) == 50


class TestStabilized:
    def test_one_noninjective(self):
        pair = stabilize_one_noninjective(5)
        assert pair.bound == 6 == 2 * 5 - 4
        assert pair.base_rank == 6
        name, witness = pair.kernel_witnesses[0]
        assert name == "beta" and pair.beta(witness).is_identity()
        assert not pair.alpha(witness).is_identity()
        assert verify_free_basis(list(pair.alpha.images)) == (True, 5)
        for w in pair.embedded_basis:
            assert pair.alpha(w) == pair.beta(w)

    def test_one_threshold(self):
        with pytest.raises(ValueError):
            stabilize_one_noninjective(4)

    def test_two_noninjective(self):
        pair = stabilize_two_noninjective(7)
        assert pair.bound == 8 == 2 * 7 - 6
        witnesses = dict((name, w) for name, w in pair.kernel_witnesses)
        assert pair.alpha(witnesses["alpha"]).is_identity()
        assert pair.beta(witnesses["beta"]).is_identity()
        for w in pair.embedded_basis:
            assert pair.alpha(w) == pair.beta(w)

    def test_two_threshold(self):
        with pytest.raises(ValueError):
            stabilize_two_noninjective(6)

    def test_bound_inequalities(self):
        assert all((2 * r - 4 > r) == (r >= 5) for r in range(2, 12))
        assert all((2 * r - 6 > r) == (r >= 7) for r in range(2, 14))

    def test_bounds_across_range(self):
        for r in range(5, 9):
            assert stabilize_one_noninjective(r).bound == 2 * r - 4
        for r in range(7, 11):
            assert stabilize_two_noninjective(r).bound == 2 * r - 6


class TestTruncation:
    def test_radius_one(self):
        graph, betti = infinite_rank_truncation(1)
        assert len(graph.vertices) == 3
        assert len(graph.edges) == 4
        assert betti == 2

    def test_radius_five(self):
        assert infinite_rank_truncation(5)[1] == 10

    def test_strict_growth(self):
        values = [infinite_rank_truncation(r)[1] for r in range(1, 21)]
        assert values == [2 * r for r in range(1, 21)]
        assert all(b - a == 2 for a, b in zip(values, values[1:]))

    def test_folded_core(self):
        graph, betti = infinite_rank_truncation(4)
        assert is_folded(graph)
        handle = SubgroupHandle(graph)
        assert handle.rank == betti  # nothing trimmed: already a core

    def test_rejects_radius_zero(self):
        with pytest.raises(ValueError):
            infinite_rank_truncation(0)


class TestExponentCharacterization:
    def test_holds_to_maxlen_six(self):
        assert exponent_characterization_check(6)

    def test_balanced_word_in_equalizer(self):
        dom = Alphabet(("x", "y"))
        cod = Alphabet(("a",))
        alpha = Homomorphism(dom, cod, [cod.gen("a"), Word(cod)])
        beta = Homomorphism(dom, cod, [Word(cod), cod.gen("a")])
        xy = dom.word("x y")
        assert alpha(xy) == beta(xy) == cod.gen("a")
        x = dom.word("x")
        assert alpha(x) != beta(x)

    def test_rejects_bad_maxlen(self):
        with pytest.raises(ValueError):
            exponent_characterization_check(0)


class TestDeltaRepresentsLadderSubgroup:
    def test_mutual_membership(self):
        for n in range(2, 8):
            inst = build_family(n)
            delta_handle = SubgroupHandle(inst.delta)
            gens = [AB.gen("a")] + [ladder_loop_word(AB, i) for i in range(1, n)]
            from stallings.graphs import graph_from_generators

            loops_handle = graph_from_generators(AB, gens)
            assert all(delta_handle.contains(w) for w in gens)
            assert all(loops_handle.contains(w) for w in delta_handle.basis())
