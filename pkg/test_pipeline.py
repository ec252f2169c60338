"""Tests for the frame, candidate library, orbit representatives, glue search, profiles and verdict"""

import random
from dataclasses import replace

import pytest

from conftest import orbit_key
from src.codes.catalog import (
    all_self_dual_codes,
    d16_plus,
    e8,
    i2_power,
    repetition_code,
    self_dual_class_representatives,
)
from src.codes.fixed import eta, fixed_subcode, pi_project
from src.codes.linear_code import LinearCode, code_image, direct_sum, is_automorphism, make_code, sum_codes
from src.codes.refinement import automorphism_group, canonical_labeling
from src.errors import DegreeMismatchError, NotCommutingError
from src.groups.involutions import is_free_klein_pair
from src.groups.perm_group import PermGroup
from src.groups.permutation import Permutation, commutes, conjugate, is_fpf_involution
from src.groups.search import centralizer
from src.pipeline.candidates import filter_candidates
from src.pipeline.frame import (
    PAIRS,
    check_frame,
    lift,
    parse_pair,
    relabeling,
    standard_frame,
)
from src.pipeline.glue import glue_items, glue_search, refine_by_chi_fixed
from src.pipeline.orbit_reps import OrbitRepSet, orbit_reps
from src.pipeline.profiles import (
    CasesTable,
    IntersectionProfile,
    cases_table,
    free_elementary_subgroups,
    intersection_profiles,
    normalized_row,
    representative_row,
    unordered_bases,
)
from src.pipeline.runner import PipelineRunner, brute_force_profile, published_mismatches, run_selftest, same_classes
from src.pipeline.verdict import Verdict, profile_compatible, verdict


@pytest.fixture
def library8(frame8):
    return filter_candidates(self_dual_class_representatives(4), frame8, 2)


@pytest.fixture
def reps8(library8, frame8):
    return orbit_reps(library8, frame8)


@pytest.fixture
def partition8(reps8, frame8):
    return refine_by_chi_fixed(reps8, frame8)


def in_e8(code: LinearCode) -> bool:
    reference = e8()
    return all(reference.contains_bits(r) for r in code.rows)


def all_free_subgroups(aut: PermGroup) -> set:
    """Every free elementary abelian subgroup of order 8, by listing the group"""
    fpf = [g for g in aut.elements() if is_fpf_involution(g)]
    found = set()
    for a in fpf:
        for b in fpf:
            if b == a or not commutes(a, b) or not is_fpf_involution(a * b):
                continue
            for c in fpf:
                if c in (a, b, a * b) or not (commutes(a, c) and commutes(b, c)):
                    continue
                members = frozenset((a, b, c, a * b, a * c, b * c, a * b * c))
                if all(is_fpf_involution(g) for g in members):
                    found.add(members)
    return found


def subgroup_classes(subgroups: set, aut: PermGroup) -> list:
    classes = []
    for members in subgroups:
        if not any(members in cls for cls in classes):
            classes.append({frozenset(conjugate(g, t) for g in members) for t in aut.elements()})
    return classes


class TestFrame:
    @pytest.mark.parametrize("n", range(8, 73, 8))
    def test_relations_hold(self, n):
        check_frame(standard_frame(n))

    def test_small_cycles(self, frame8):
        assert str(frame8.alpha) == "(1,2)(3,4)(5,6)(7,8)"
        assert str(frame8.beta) == "(1,3)(2,4)(5,7)(6,8)"
        assert str(frame8.gamma) == "(1,5)(2,6)(3,7)(4,8)"
        assert str(frame8.chi) == "(1,2)(3,4)"
        assert str(frame8.mu) == "(1,3)(2,4)"

    def test_half_length(self):
        frame = standard_frame(72)
        assert frame.half_n == 36
        assert frame.chi.degree == 36

    @pytest.mark.parametrize("n", [0, 12, -8])
    def test_invalid_length(self, n):
        with pytest.raises(ValueError):
            standard_frame(n)

    def test_involution_by_role(self, frame8):
        assert frame8.involution("gamma") == frame8.gamma
        with pytest.raises(ValueError):
            frame8.involution("delta")

    def test_elementary_group(self, frame16):
        assert frame16.elementary_group().order() == 8
        assert frame16.klein_group().order() == 4
        assert len(frame16.nontrivial_elements()) == 7


class TestPairs:
    def test_parse(self):
        assert parse_pair("alpha, beta") == ("alpha", "beta")
        assert parse_pair("beta,gamma") == ("beta", "gamma")

    @pytest.mark.parametrize("text", ["beta,alpha", "alpha", "alpha,delta", ""])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_pair(text)

    @pytest.mark.parametrize("pair", PAIRS)
    def test_relabeling_moves_pair_to_alpha_beta(self, pair, frame16):
        first, second = parse_pair(pair)
        rho = relabeling(first, second, 16)
        assert conjugate(frame16.involution(first), rho) == frame16.alpha
        assert conjugate(frame16.involution(second), rho) == frame16.beta

    def test_identity_for_alpha_beta(self):
        assert relabeling("alpha", "beta", 24).is_identity()


class TestLift:
    def test_eta_recovers_omega(self, frame16, rng):
        K = centralizer(PermGroup.symmetric(8), frame16.klein_group())
        for omega in K.elements():
            for via in (frame16.alpha, frame16.beta, frame16.gamma):
                lifted = lift(omega, via)
                assert eta(lifted, via) == omega
                assert all(commutes(lifted, g) for g in (frame16.alpha, frame16.beta, frame16.gamma))

    def test_degree_mismatch(self, frame16):
        with pytest.raises(DegreeMismatchError):
            lift(Permutation.identity(4), frame16.alpha)

    def test_must_centralize(self, frame16):
        omega = Permutation.parse("(1,2)", 8)
        with pytest.raises(NotCommutingError):
            lift(omega, frame16.alpha)


class TestCandidates:
    def test_length_checked(self, frame8):
        with pytest.raises(DegreeMismatchError):
            filter_candidates([e8()], frame8, 2)

    def test_rejection_reasons(self, frame8):
        db = [i2_power(2), repetition_code(4), make_code(["1000", "0100"], 4)]
        library = filter_candidates(db, frame8, 2)
        assert len(library) == 1
        assert library.rejected == {"not self-dual": 2}

    def test_distance_threshold(self, frame16):
        db = [i2_power(4), e8()]
        assert [c.index for c in filter_candidates(db, frame16, 2)] == [0, 1]
        library = filter_candidates(db, frame16, 4)
        assert [c.index for c in library] == [1]
        assert library.rejected == {"distance": 1}

    def test_witness_carries_klein_group(self, frame16):
        chi, mu = frame16.klein
        for candidate in filter_candidates([i2_power(4), e8()], frame16, 2):
            image = code_image(candidate.code, candidate.witness)
            assert is_automorphism(image, chi)
            assert is_automorphism(image, mu)


class TestOrbitReps:
    def test_degree_4(self, reps8):
        assert len(reps8) == 3
        assert reps8.class_counts == [(0, 2, [1, 2])]

    def test_representatives_carry_klein_group(self, reps8, frame8):
        for rep in reps8:
            assert is_automorphism(rep.code, frame8.chi)
            assert is_automorphism(rep.code, frame8.mu)

    @pytest.mark.parametrize("n", [8, 16])
    def test_matches_centralizer_orbits(self, n):
        frame = standard_frame(n)
        chi, mu = frame.klein
        library = filter_candidates(self_dual_class_representatives(frame.half_n), frame, 2)
        reps = orbit_reps(library, frame)

        G = centralizer(PermGroup.symmetric(frame.half_n), frame.klein_group()).elements()
        carrying = [
            C for C in all_self_dual_codes(frame.half_n) if is_automorphism(C, chi) and is_automorphism(C, mu)
        ]
        expected = {orbit_key(C, G) for C in carrying}
        found = [orbit_key(rep.code, G) for rep in reps]
        assert len(found) == len(set(found))
        assert set(found) == expected


class TestRefine:
    def test_bucket_count(self, partition8):
        assert partition8.m == 2
        assert len(partition8.entries()) == 3

    def test_buckets_share_fixed_subcode(self, partition8, frame8):
        for E, bucket in zip(partition8.reps, partition8.buckets):
            for entry in bucket:
                assert fixed_subcode(entry.code, frame8.chi) == E
                assert commutes(entry.epsilon, frame8.chi)
                assert commutes(entry.epsilon, frame8.mu)

    def test_degree_8_buckets(self, frame16):
        library = filter_candidates(self_dual_class_representatives(8), frame16, 2)
        partition = refine_by_chi_fixed(orbit_reps(library, frame16), frame16)
        keys = set()
        for E, bucket in zip(partition.reps, partition.buckets):
            for entry in bucket:
                assert fixed_subcode(entry.code, frame16.chi) == E
            keys.add(E)
        assert len(keys) == partition.m


class TestGlue:
    def test_survivors(self, partition8, frame8):
        survivors = glue_search(partition8, frame8, 4)
        assert sorted(s.summary for s in survivors) == ["[8,2,4]", "[8,3,4]"]
        assert all(in_e8(s.code) for s in survivors)
        x2 = make_code(["11111111", "00001111"], 8)
        x01 = make_code(["11111111", "01010101", "00110011"], 8)
        found = {s.code for s in survivors}
        assert found == {x2, x01}

    def test_dimension_relation(self, partition8, frame8):
        for s in glue_search(partition8, frame8, 0):
            assert s.code.k + s.pair_dim == 4

    def test_glued_codes_carry_frame(self, partition8, frame8):
        for pair in PAIRS:
            for s in glue_search(partition8, frame8, 4, pair=pair):
                for g in (frame8.alpha, frame8.beta, frame8.gamma):
                    assert is_automorphism(s.code, g)

    def test_stats(self, partition8, frame8):
        stats = {}
        glue_search(partition8, frame8, 0, stats=stats)
        assert stats["glued"] == len(glue_items(partition8, frame8, 0))
        assert stats["passed"] == stats["glued"]

    def test_target_zero_keeps_more(self, partition8, frame8):
        assert len(glue_search(partition8, frame8, 0)) >= len(glue_search(partition8, frame8, 4))

    def test_deterministic(self, partition8, frame8):
        first = glue_search(partition8, frame8, 4)
        second = glue_search(partition8, frame8, 4)
        assert [s.code for s in first] == [s.code for s in second]
        assert [s.parents for s in first] == [s.parents for s in second]

    def test_worker_processes_agree(self, partition8, frame8):
        serial = glue_search(partition8, frame8, 4, threads=1)
        parallel = glue_search(partition8, frame8, 4, threads=2)
        assert [s.code for s in serial] == [s.code for s in parallel]

    @pytest.mark.parametrize("pair", ["alpha,gamma", "beta,gamma"])
    def test_other_pairs_same_classes(self, partition8, frame8, pair):
        base = glue_search(partition8, frame8, 4)
        other = glue_search(partition8, frame8, 4, pair=pair)
        assert other[0].pair == parse_pair(pair)
        assert same_classes(base, other)

    def test_same_classes_without_keys(self, partition8, frame8):
        survivors = glue_search(partition8, frame8, 4)
        unkeyed = [replace(s, key=None) for s in reversed(survivors)]
        assert same_classes(survivors, unkeyed)
        x2 = next(s for s in survivors if s.code.k == 2)
        assert not same_classes([x2, replace(x2, key=None)], survivors)
        assert not same_classes(survivors, unkeyed[:1])


class TestProfiles:
    def test_bases_per_subgroup(self, frame8):
        members = sorted(frame8.nontrivial_elements(), key=lambda p: p.images)
        assert len(list(unordered_bases(members))) == 28

    def test_translation_subgroup_class_found(self, frame8):
        x2 = make_code(["11111111", "00001111"], 8)
        aut = automorphism_group(x2)
        translations = frozenset(frame8.nontrivial_elements())
        listed = {frozenset(members) for members in free_elementary_subgroups(aut)}
        conjugates = {frozenset(conjugate(g, t) for g in translations) for t in aut.elements()}
        assert len(listed & conjugates) == 1

    @pytest.mark.parametrize("rows", [["11111111", "00001111"], ["11111111", "01010101", "00110011"], None])
    def test_one_subgroup_per_class(self, rows):
        code = e8() if rows is None else make_code(rows, 8)
        aut = automorphism_group(code)
        classes = subgroup_classes(all_free_subgroups(aut), aut)
        listed = [frozenset(members) for members in free_elementary_subgroups(aut)]
        assert len(listed) == len(classes)
        assert all(sum(members in cls for members in listed) == 1 for cls in classes)

    def test_known_profile(self, frame8):
        x2 = make_code(["11111111", "00001111"], 8)
        dims = brute_force_profile(x2, (frame8.alpha, frame8.beta, frame8.gamma))
        assert dims[0] == 1
        assert sorted(dims[1:]) == [1, 1, 2]
        assert dims in {p.dims for p in intersection_profiles(x2, frame8)}

    def test_conjugate_subgroups_give_same_profiles(self, frame8):
        x2 = make_code(["11111111", "00001111"], 8)
        aut = automorphism_group(x2)
        for members in free_elementary_subgroups(aut):
            for t in aut.generators:
                moved = sorted((conjugate(g, t) for g in members), key=lambda p: p.images)
                before = sorted(brute_force_profile(x2, basis) for basis in unordered_bases(members))
                after = sorted(brute_force_profile(x2, basis) for basis in unordered_bases(moved))
                assert before == after

    def test_group_too_large_to_list(self, frame16):
        code = direct_sum([e8(), e8()])
        aut = automorphism_group(code)
        assert aut.order() == 2 * 1344 ** 2
        subgroups = free_elementary_subgroups(aut)
        assert subgroups
        for members in subgroups:
            assert all(g in aut and is_fpf_involution(g) for g in members)
        profiles = intersection_profiles(code, frame16)
        assert len(profiles) == 28 * len(subgroups)

    def test_match_brute_force(self, partition8, frame8):
        for survivor in glue_search(partition8, frame8, 4):
            profiles = intersection_profiles(survivor, frame8)
            assert profiles
            for p in profiles:
                assert brute_force_profile(survivor.code, p.basis) == p.dims

    def test_length_checked(self, frame16):
        with pytest.raises(DegreeMismatchError):
            intersection_profiles(e8(), frame16)

    def test_rows_normalized(self):
        identity = Permutation.identity(8)
        p = IntersectionProfile(triple_dim=1, pair_dims=(2, 1, 1), basis=(identity, identity, identity))
        assert p.rows() == [(1, 1, 2), (1, 1, 2), (1, 1, 1)]
        assert p.dims == (1, 2, 1, 1)
        assert normalized_row(3, 9, 5) == (3, 5, 9)


class TestCasesTable:
    def test_degree_4(self, library8, reps8, frame8):
        table = cases_table(library8, frame8, reps8)
        assert table.sorted_rows() == [(1, 1, 1), (1, 1, 2)]
        assert cases_table(library8, frame8).rows == table.rows

    def test_matches_free_pairs(self, library8, frame8):
        rows = set()
        for candidate in library8:
            elements = candidate.aut.elements()
            for a in elements:
                for b in elements:
                    if a == b or not is_free_klein_pair(a, b):
                        continue
                    Ya = fixed_subcode(candidate.code, a)
                    Yb = fixed_subcode(candidate.code, b)
                    both = fixed_subcode(Ya, b)
                    rows.add(normalized_row(both.k, Ya.k, Yb.k))
        assert cases_table(library8, frame8).rows == frozenset(rows)

    def test_representative_row(self, frame8):
        assert representative_row(make_code(["1001", "0110"], 4), frame8) == (1, 1, 1)
        assert representative_row(make_code(["1100", "0011"], 4), frame8) == (1, 1, 2)

    def test_admits_any_order(self):
        table = CasesTable(frozenset({(1, 1, 2)}))
        assert table.admits((1, 2, 1))
        assert not table.admits((2, 1, 1))


class TestVerdict:
    identity = Permutation.identity(8)

    def profile(self, triple, ab, ac, bc):
        return IntersectionProfile(triple_dim=triple, pair_dims=(ab, ac, bc), basis=(self.identity,) * 3)

    def test_consistent(self):
        table = CasesTable(frozenset({(1, 1, 1)}))
        result = verdict([[self.profile(1, 1, 1, 1)]], table)
        assert result.verdict == Verdict.CONSISTENT
        assert result.compatible[0][0] == 0

    def test_contradiction(self):
        table = CasesTable(frozenset({(1, 1, 1)}))
        result = verdict([[self.profile(1, 2, 1, 1)], [self.profile(1, 2, 2, 2)]], table)
        assert result.verdict == Verdict.CONTRADICTION
        assert result.offending_rows == {(1, 1, 2), (1, 2, 2)}
        assert result.profiles_checked == 2

    def test_undetermined(self):
        table = CasesTable(frozenset({(1, 1, 1)}))
        assert verdict([], table).verdict == Verdict.UNDETERMINED
        assert verdict([[], []], table).verdict == Verdict.UNDETERMINED

    def test_one_compatible_profile_suffices(self):
        table = CasesTable(frozenset({(1, 1, 1), (1, 1, 2)}))
        profiles = [[self.profile(2, 2, 2, 2), self.profile(1, 2, 1, 1)]]
        assert not profile_compatible(profiles[0][0], table)
        assert verdict(profiles, table).verdict == Verdict.CONSISTENT


class TestRunner:
    def test_length_8_run(self):
        runner = PipelineRunner(n=8, target_d=4, half_target_d=2, threads=1)
        result = runner.run(self_dual_class_representatives(4))
        assert len(result.library) == 1
        assert len(result.reps) == 3
        assert result.partition.m == 2
        assert len(result.survivors) == 2
        assert result.table.sorted_rows() == [(1, 1, 1), (1, 1, 2)]
        assert result.outcome.verdict == Verdict.CONSISTENT
        assert runner.tracker.metrics["counts"]["survivors"] == 2
        assert "glue" in runner.tracker.metrics["stages"]

    def test_other_pairs(self):
        runner = PipelineRunner(n=8, target_d=4, half_target_d=2, threads=1)
        result = runner.run(self_dual_class_representatives(4), other_pairs=["alpha,gamma", "beta,gamma"])
        assert set(result.other_pairs) == {"alpha,gamma", "beta,gamma"}
        assert all(same_classes(result.survivors, found) for found in result.other_pairs.values())

    def test_small_run_differs_from_published_counts(self):
        runner = PipelineRunner(n=8, target_d=4, half_target_d=2, threads=1)
        problems = published_mismatches(runner.run(self_dual_class_representatives(4)))
        assert any(p.startswith("library") for p in problems)
        assert any(p.startswith("verdict") for p in problems)

    def test_selftest(self):
        ok, messages, result = run_selftest(threads=1)
        assert ok, messages
        assert messages[-1] == "verdict CONSISTENT"

    def test_report(self):
        runner = PipelineRunner(n=8, target_d=4, half_target_d=2, threads=1)
        report = runner.build_report(runner.run(self_dual_class_representatives(4)), include_timing=False)
        assert report.counts.survivors == 2
        assert report.run.wall_time_seconds is None
        assert report.cases_table == [[1, 1, 1], [1, 1, 2]]
        assert report.verdict == "CONSISTENT"
        assert report.class_counts == [[0, 2, 1, 2]]
        assert all(len(s.canonical_generator) == int(s.summary.split(",")[1]) for s in report.survivors)


def chi_fixed_projections(code: LinearCode, frame) -> tuple:
    from_alpha = pi_project(fixed_subcode(code, frame.alpha), frame.alpha)
    from_beta = pi_project(fixed_subcode(code, frame.beta), frame.beta)
    return fixed_subcode(from_alpha, frame.chi), fixed_subcode(from_beta, frame.chi)


def reshuffled(reps: OrbitRepSet, seed: int) -> OrbitRepSet:
    entries = list(reps.entries)
    random.Random(seed).shuffle(entries)
    return OrbitRepSet(entries=entries, class_counts=reps.class_counts)


@pytest.fixture(scope="module")
def run16():
    runner = PipelineRunner(n=16, target_d=4, half_target_d=2, threads=1)
    return runner.run(self_dual_class_representatives(8))


class TestLength16:
    def test_counts(self, run16):
        assert len(run16.library) == 2
        assert run16.survivors

    def test_survivors(self, run16):
        frame = run16.frame
        for s in run16.survivors:
            assert s.code.n == 16
            assert s.min_distance >= 4
            assert s.code.k + s.pair_dim == 8
            for g in (frame.alpha, frame.beta, frame.gamma):
                assert is_automorphism(s.code, g)

    def test_every_survivor_has_profiles(self, run16):
        assert all(run16.profiles)
        assert run16.outcome.verdict != Verdict.UNDETERMINED

    @pytest.mark.parametrize(
        "code, has_pairs", [(direct_sum([e8(), e8()]), True), (d16_plus(), False)], ids=["e8+e8", "d16+"]
    )
    def test_fixed_subcode_sums_are_found(self, run16, code, has_pairs):
        keys = {canonical_labeling(s.code).key for s in run16.survivors}
        checked = 0
        for members in free_elementary_subgroups(automorphism_group(code)):
            for a in members:
                for b in members:
                    if a == b:
                        continue
                    Ca, Cb = fixed_subcode(code, a), fixed_subcode(code, b)
                    if Ca.k != 4 or Cb.k != 4:
                        continue
                    assert canonical_labeling(sum_codes([Ca, Cb])).key in keys
                    checked += 1
        assert checked > 0 or not has_pairs

    def test_block_swap_subgroup_listed(self):
        code = direct_sum([e8(), e8()])
        dims = [
            sorted(fixed_subcode(code, g).k for g in members)
            for members in free_elementary_subgroups(automorphism_group(code))
        ]
        assert [4, 4, 4, 4, 6, 6, 6] in dims

    def test_shuffled_representatives(self, run16):
        frame = run16.frame
        shuffled = refine_by_chi_fixed(reshuffled(run16.reps, 16), frame)
        assert shuffled.m == run16.partition.m
        assert same_classes(run16.survivors, glue_search(shuffled, frame, 4, threads=1))


class TestChiFixedRelation:
    def test_shuffled_representatives_degree_4(self, reps8, partition8, frame8):
        base = glue_search(partition8, frame8, 4)
        shuffled = refine_by_chi_fixed(reshuffled(reps8, 8), frame8)
        assert same_classes(base, glue_search(shuffled, frame8, 4))

    def test_e8(self, e8_code, frame8):
        left, right = chi_fixed_projections(e8_code, frame8)
        assert left == right

    def test_length_16(self, frame16):
        for code in (direct_sum([e8(), e8()]), i2_power(8)):
            left, right = chi_fixed_projections(code, frame16)
            assert left == right

    def test_glued_codes(self, partition8, frame8):
        for s in glue_search(partition8, frame8, 0):
            left, right = chi_fixed_projections(s.code, frame8)
            assert left == right
