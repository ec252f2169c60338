"""Tests for linear codes, minimum distance, fixed subcodes and the refinement search"""

import pytest

from conftest import random_permutation, span_set
from src.algebra.gf2core import BitMatrix
from src.codes.catalog import (
    all_self_dual_codes,
    d16_plus,
    e8,
    i2_power,
    random_self_dual_code,
    repetition_code,
)
from src.codes.distance import _min_distance_information_sets, min_distance, weight_enumerator, words_up_to_weight
from src.codes.fixed import (
    eta,
    fixed_code_structure,
    fixed_subcode,
    image_of_one_plus,
    involution_orbits,
    pi_lift,
    pi_project,
)
from src.codes.linear_code import (
    code_image,
    direct_sum,
    dual,
    is_automorphism,
    is_self_dual,
    make_code,
    sum_codes,
    zero_code,
)
from src.codes.refinement import (
    _search,
    automorphism_group,
    brute_force_automorphisms,
    canonical_form,
    canonical_labeling,
    equivalence,
)
from src.config import config
from src.errors import DegreeMismatchError, EmptyCodeError, EnumerationBoundError, NotAnInvolutionError
from src.groups.involutions import involutions
from src.groups.perm_group import PermGroup
from src.groups.permutation import Permutation, commutes, conjugate, is_fpf_involution, permute_bits
from src.groups.search import centralizer
from src.pipeline.frame import standard_frame, xor_involution


def block_swap(n: int) -> Permutation:
    half = n // 2
    return Permutation(tuple((i + half) % n for i in range(n)))


def random_code(rng, n, k):
    return make_code([rng.getrandbits(n) for _ in range(k)], n)


class TestLinearCode:
    def test_equal_spans_are_equal(self):
        assert make_code(["1100", "0011"], 4) == make_code(["1111", "0011"], 4)

    def test_dual_of_i2_power_is_itself(self):
        C = i2_power(3)
        assert dual(C) == C
        assert is_self_dual(C)

    def test_repetition_not_self_dual(self):
        assert not is_self_dual(repetition_code(4))
        assert dual(repetition_code(4)).k == 3

    def test_sum_and_direct_sum(self):
        assert sum_codes([i2_power(2), repetition_code(4)]) == i2_power(2)
        assert direct_sum([e8(), e8()]).k == 8

    def test_length_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            sum_codes([e8(), i2_power(2)])

    def test_code_image_matches_words(self, rng, e8_code):
        t = random_permutation(8, rng)
        image = code_image(e8_code, t)
        assert set(image.codewords()) == {permute_bits(c, t) for c in e8_code.codewords()}


class TestE8:
    def test_parameters(self, e8_code):
        assert (e8_code.n, e8_code.k) == (8, 4)
        assert is_self_dual(e8_code)
        assert min_distance(e8_code) == 4

    def test_weight_enumerator(self, e8_code):
        assert weight_enumerator(e8_code).nonzero() == {0: 1, 4: 14, 8: 1}

    def test_automorphism_group(self, e8_code):
        G = automorphism_group(e8_code)
        assert G.order() == 1344
        assert all(is_automorphism(e8_code, g) for g in G.generators)

    def test_brute_force_group(self, e8_code):
        assert brute_force_automorphisms(e8_code).order() == 1344

    def test_translations_are_automorphisms(self, e8_code):
        for mask in range(1, 8):
            assert is_automorphism(e8_code, xor_involution(8, mask))


class TestGolay:
    def test_distance(self, golay):
        assert (golay.n, golay.k) == (24, 12)
        assert is_self_dual(golay)
        assert min_distance(golay) == 8
        assert min_distance(golay, "exhaustive") == 8

    def test_weight_enumerator(self, golay):
        assert weight_enumerator(golay).nonzero() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}

    def test_light_words(self, golay):
        assert len(words_up_to_weight(golay, 8)) == 759

    def test_early_abort_keeps_exact_value_above_threshold(self, golay):
        assert min_distance(golay, early_abort_at=8) == 8


class TestMinDistance:
    def test_zero_code(self):
        with pytest.raises(EmptyCodeError):
            min_distance(zero_code(5))

    def test_unknown_mode(self, e8_code):
        with pytest.raises(ValueError):
            min_distance(e8_code, "fast")

    def test_early_abort_below_threshold(self):
        C = direct_sum([e8(), repetition_code(2)])
        assert min_distance(C, early_abort_at=4) < 4

    def test_modes_agree_on_random_codes(self, rng):
        for _ in range(100):
            C = random_code(rng, 24, 12)
            if C.k == 0:
                continue
            exact = min_distance(C, "exhaustive")
            assert min_distance(C, "auto") == exact
            assert _min_distance_information_sets(C, None) == exact

    def test_auto_switches_above_enumeration_bound(self, golay, monkeypatch):
        monkeypatch.setitem(config.yaml_config, "distance", {"exhaustive_max_k": 4})
        assert min_distance(e8(), "auto") == 4
        assert min_distance(golay, "auto") == 8
        with pytest.raises(EnumerationBoundError):
            min_distance(golay, "exhaustive")

    def test_random_self_dual_codes(self, rng):
        for _ in range(10):
            C = random_self_dual_code(16, rng)
            assert is_self_dual(C)
            assert min_distance(C) == weight_enumerator(C).min_distance


class TestSelfDualLibraries:
    def test_length_8_count(self):
        codes = all_self_dual_codes(8)
        assert len(codes) == 135
        assert all(is_self_dual(C) for C in codes)

    def test_length_4_count(self):
        assert len(all_self_dual_codes(4)) == 3

    def test_length_16_doubly_even_pair(self):
        d16 = d16_plus()
        assert is_self_dual(d16)
        assert min_distance(d16) == 4
        assert weight_enumerator(d16).counts[4] == weight_enumerator(direct_sum([e8(), e8()])).counts[4] == 28
        assert equivalence(d16, direct_sum([e8(), e8()])) is None


class TestFixedSubcode:
    def test_i2_power_fixed_by_alpha(self, frame8):
        C = i2_power(4)
        assert fixed_subcode(C, frame8.alpha) == C

    def test_e8_translation(self, e8_code, frame8):
        structure = fixed_code_structure(e8_code, frame8.alpha)
        assert structure.fixed_dim == 3
        assert structure.image_dim == 1
        assert not structure.projection_self_dual
        assert structure.duality_holds

    def test_matches_enumeration(self, rng):
        for _ in range(20):
            C = random_code(rng, 10, rng.randint(1, 8))
            sigma = random_permutation(10, rng)
            words = {c for c in span_set(C.rows, 10) if permute_bits(c, sigma) == c}
            assert span_set(fixed_subcode(C, sigma).rows, 10) == words

    def test_image_of_one_plus_inside_fixed(self, e8_code):
        sigma = xor_involution(8, 3)
        image = image_of_one_plus(e8_code, sigma)
        fixed = fixed_subcode(e8_code, sigma)
        assert sum_codes([image, fixed]) == fixed

    def test_requires_fpf_involution(self, e8_code):
        with pytest.raises(NotAnInvolutionError):
            fixed_code_structure(e8_code, Permutation.identity(8))

    def test_aut_e8_involutions(self, e8_code):
        for g in automorphism_group(e8_code).elements():
            if not is_fpf_involution(g):
                continue
            structure = fixed_code_structure(e8_code, g)
            assert structure.duality_holds
            assert structure.projection_self_dual == (structure.fixed_dim == 2)

    def test_random_length_16_involutions(self, rng):
        codes = [random_self_dual_code(16, rng) for _ in range(20)]
        codes.append(code_image(d16_plus(), random_permutation(16, rng)))
        checked = 0
        for C in codes:
            for sigma in involutions(automorphism_group(C), fpf_only=True):
                structure = fixed_code_structure(C, sigma)
                assert structure.duality_holds
                assert structure.projection_self_dual == (structure.fixed_dim == 4)
                checked += 1
        assert checked > 0

    def test_conjugated_block_swaps(self, rng):
        C = direct_sum([e8(), e8()])
        swap = block_swap(16)
        assert is_automorphism(C, swap)
        for _ in range(10):
            t = random_permutation(16, rng)
            structure = fixed_code_structure(code_image(C, t), conjugate(swap, t))
            assert structure.fixed_dim == 4
            assert structure.projection_self_dual
            assert structure.duality_holds

    def test_i2_power_sixteen(self, frame16):
        C = i2_power(8)
        for sigma in frame16.nontrivial_elements():
            structure = fixed_code_structure(C, sigma)
            assert structure.duality_holds
            assert structure.projection_self_dual == (structure.fixed_dim == 4)


class TestProjection:
    def test_orbits(self):
        assert involution_orbits(xor_involution(8, 2)) == [(0, 2), (1, 3), (4, 6), (5, 7)]

    def test_lift_then_project(self, frame8):
        D = make_code(["1100", "0011"], 4)
        for sigma in (frame8.alpha, frame8.beta, frame8.gamma):
            lifted = pi_lift(D, sigma)
            assert fixed_subcode(lifted, sigma) == lifted
            assert pi_project(lifted, sigma) == D

    def test_project_rejects_unfixed(self, frame8):
        with pytest.raises(ValueError):
            pi_project(make_code(["10000000"], 8), frame8.alpha)

    def test_eta_of_frame(self):
        for n in (8, 16, 72):
            frame = standard_frame(n)
            assert eta(frame.beta, frame.alpha) == frame.chi
            assert eta(frame.gamma, frame.alpha) == frame.mu
            assert eta(frame.alpha, frame.alpha).is_identity()

    def test_eta_is_a_homomorphism(self, rng, frame16):
        alpha = frame16.alpha
        C = centralizer(PermGroup.symmetric(16), PermGroup(16, [alpha]))
        for _ in range(20):
            p, q = C.random_element(rng), C.random_element(rng)
            assert commutes(p, alpha)
            assert eta(p * q, alpha) == eta(p, alpha) * eta(q, alpha)


class TestRefinement:
    def test_canonical_form_invariant(self, rng):
        for C in (e8(), i2_power(4), random_self_dual_code(16, rng)):
            form = canonical_form(C)
            for _ in range(5):
                assert canonical_form(code_image(C, random_permutation(C.n, rng))) == form

    def test_labeling_maps_to_form(self, e8_code):
        labeling = canonical_labeling(e8_code)
        assert code_image(e8_code, labeling.labeling) == labeling.code

    def test_keys_separate_classes(self):
        assert canonical_labeling(e8()).key != canonical_labeling(i2_power(4)).key

    def test_equivalence_witness(self, rng, golay):
        t = random_permutation(24, rng)
        D = code_image(golay, t)
        sigma = equivalence(golay, D)
        assert sigma is not None
        assert code_image(golay, sigma) == D

    def test_inequivalent(self):
        assert equivalence(e8(), i2_power(4)) is None

    def test_parameters_differ(self):
        with pytest.raises(DegreeMismatchError):
            equivalence(e8(), i2_power(2))

    @pytest.mark.parametrize("code", [e8(), i2_power(4)], ids=["e8", "i2^4"])
    def test_commuting_automorphisms_match_brute_force(self, code, frame8):
        fixed = [frame8.alpha]
        G = automorphism_group(code, fixed)
        B = brute_force_automorphisms(code, fixed)
        assert G.order() == B.order()
        assert all(commutes(g, frame8.alpha) for g in G.generators)

    def test_klein_constrained_on_degree_4(self, frame8):
        chi, mu = frame8.klein
        for C in all_self_dual_codes(4):
            G = automorphism_group(C, (chi, mu))
            assert G.order() == brute_force_automorphisms(C, (chi, mu)).order()

    def test_constrained_equivalence(self, frame16):
        chi, mu = frame16.klein
        C = i2_power(4)
        for g in centralizer(PermGroup.symmetric(8), frame16.klein_group()).elements()[:8]:
            sigma = equivalence(C, code_image(C, g), (chi, mu))
            assert sigma is not None
            assert commutes(sigma, chi) and commutes(sigma, mu)

    def test_search_cache_keeps_results_only(self, e8_code):
        first = canonical_labeling(e8_code)
        cached = _search(e8_code, ())
        assert not hasattr(cached, "refiner")
        assert cached.best.key == first.key
        assert PermGroup(8, cached.generators).order() == 1344
        assert canonical_labeling(e8_code) == first


class TestBitMatrixInputs:
    def test_make_code_from_matrix(self):
        M = BitMatrix.from_rows(["1100", "1100"], 4)
        assert make_code(M, 4).k == 1
