"""
Tests for zp_smith.smith module.
"""

import pytest


def _chain_complex(K):
    from zp_smith.complex import to_free_chain_complex

    return to_free_chain_complex(K)


class TestFold:
    """Tests for the folded d- and s-complexes."""

    def test_sigma_d_fold(self):
        from zp_smith.corpus import sigma
        from zp_smith.smith import fold

        folded = fold(_chain_complex(sigma(2)), "d")
        assert folded.boundary(0).to_dense() == [[2]]
        assert folded.rank(-1) == 1

    def test_s_fold_ranks(self, four_cycle):
        from zp_smith.smith import fold

        folded = fold(four_cycle, "s")
        assert folded.rank(-1) == 0
        assert folded.rank(0) == 2
        assert folded.rank(1) == 2

    def test_p3_s_fold_ranks(self):
        from zp_smith.corpus import sigma
        from zp_smith.joins import join
        from zp_smith.smith import fold

        X = _chain_complex(join(sigma(3), sigma(3)).result)
        folded = fold(X, "s")
        assert folded.rank(0) == 2 * 2
        assert folded.rank(1) == 3 * 2

    def test_cached(self, four_cycle):
        from zp_smith.smith import fold

        assert fold(four_cycle, "d") is fold(four_cycle, "d")

    def test_unknown_kind(self, four_cycle):
        from zp_smith.smith import fold

        with pytest.raises(ValueError):
            fold(four_cycle, "x")

    def test_folded_boundaries_square_to_zero(self, random_zp_complex):
        from zp_smith.smith import fold

        for seed in range(6):
            for p in (2, 3, 5):
                X = _chain_complex(random_zp_complex(seed, p=p))
                assert fold(X, "d").validate()
                assert fold(X, "s").validate()

    def test_coordinates_round_trip_invariant_cochains(self, random_zp_complex):
        import random

        from zp_smith.complex import Cochain, apply_d, apply_s
        from zp_smith.smith import fold

        rng = random.Random(2)
        X = _chain_complex(random_zp_complex(4, p=3))
        for dim in range(0, X.top_dim + 1):
            phi = Cochain(dim, {i: rng.randint(-3, 3) for i in range(X.rank(dim))})
            for kind, element in (("d", apply_s(X, phi)), ("s", apply_d(X, phi))):
                folded = fold(X, kind)
                coords = folded.cochain_coordinates(element)
                assert folded.cochain_from_coordinates(dim, coords) == element


class TestResolution:
    """Tests for build_resolution, validate_resolution and shorten_resolution."""

    def test_four_cycle(self, four_cycle):
        from zp_smith.complex import Cochain
        from zp_smith.smith import build_resolution

        R = build_resolution(four_cycle)
        assert R.psis[0] == Cochain(0, {0: 1, 1: 1})
        assert R.psis[1] == Cochain(1, {2: -1})
        assert len(R) == 2
        assert R.psi(5) == Cochain(5, {})

    def test_random_resolutions_validate(self, random_zp_complex):
        from zp_smith.smith import build_resolution, validate_resolution

        for seed in range(8):
            for p in (2, 3):
                R = build_resolution(_chain_complex(random_zp_complex(seed, p=p)))
                assert validate_resolution(R)

    @pytest.mark.slow
    @pytest.mark.parametrize("p,base_vertices", [(2, 6), (3, 4), (5, 2)])
    def test_many_random_resolutions_validate(self, random_zp_complex, p, base_vertices):
        from zp_smith.smith import build_resolution, validate_resolution

        max_dim = min(2, base_vertices - 1)
        for seed in range(20):
            K = random_zp_complex(
                seed, p=p, base_vertices=base_vertices, facets=5, max_dim=max_dim
            )
            assert validate_resolution(build_resolution(_chain_complex(K)))

    def test_max_dim(self, antipodal_cylinder):
        from zp_smith.smith import build_resolution

        assert len(build_resolution(antipodal_cylinder, max_dim=1)) == 2
        assert len(build_resolution(antipodal_cylinder, max_dim=9)) == 3

    def test_broken_resolution_rejected(self, four_cycle):
        from zp_smith.complex import Cochain
        from zp_smith.smith import Resolution, ResolutionError, validate_resolution

        R = Resolution(base=four_cycle, psis=(Cochain(0, {0: 1, 1: 1}), Cochain(1, {2: 1})))
        with pytest.raises(ResolutionError, match="δψ_0"):
            validate_resolution(R)
        with pytest.raises(ResolutionError, match="unit"):
            validate_resolution(Resolution(base=four_cycle, psis=(Cochain(0, {0: 1}),)))

    def test_shorten_below_vanishing_class(self, antipodal_cylinder):
        from zp_smith.smith import SmithComputation, build_resolution, shorten_resolution

        R = build_resolution(antipodal_cylinder)
        assert SmithComputation(antipodal_cylinder, R).is_trivial(2)
        shortened = shorten_resolution(R, 2)
        assert shortened.psis[2].is_zero()
        assert SmithComputation(antipodal_cylinder, shortened).index() == 2

    def test_shorten_nonzero_class(self, four_cycle):
        from zp_smith.smith import build_resolution, shorten_resolution

        with pytest.raises(ValueError, match="nonzero"):
            shorten_resolution(build_resolution(four_cycle), 1)

    def test_shorten_past_end(self, four_cycle):
        from zp_smith.smith import build_resolution, shorten_resolution

        R = build_resolution(four_cycle)
        assert shorten_resolution(R, 5) is R


class TestSmithComputation:
    """Tests for Smith classes, indices and moduli."""

    def test_sigma(self):
        from zp_smith.corpus import sigma
        from zp_smith.smith import SmithComputation

        for p in (2, 3, 5):
            computation = SmithComputation(_chain_complex(sigma(p)))
            assert computation.index() == 1
            assert computation.moduli().values == ()

    def test_four_cycle(self, four_cycle):
        from zp_smith.smith import SmithComputation

        computation = SmithComputation(four_cycle)
        assert computation.index() == 2
        assert computation.index_mod(1) == 2
        assert computation.moduli().values == (2,)

    def test_spheres(self):
        from zp_smith.corpus import sphere
        from zp_smith.smith import SmithComputation

        for k in range(4):
            computation = SmithComputation(_chain_complex(sphere(k)))
            assert computation.index() == k + 1
            assert computation.moduli().values == (2,) * k

    def test_zero_class_is_unit(self, four_cycle):
        from zp_smith.complex import unit_cochain
        from zp_smith.smith import SmithComputation

        report = SmithComputation(four_cycle).smith_class(0)
        assert report.representative == unit_cochain(four_cycle)
        assert report.parity == "d"
        assert not report.trivial_over_z
        assert report.minimal_modulus_exponent == 1

    def test_s_class_report(self, four_cycle):
        from zp_smith.certificates import verify_certificate_s
        from zp_smith.smith import SmithComputation

        report = SmithComputation(four_cycle).smith_class(1)
        assert report.parity == "s"
        assert report.certificate is not None
        assert report.certificate.modulus == 2
        assert verify_certificate_s(four_cycle, report.primitive, report.certificate.chain, 2)

    def test_certificate_setting(self, four_cycle):
        from zp_smith.smith import SmithComputation

        report = SmithComputation(four_cycle).smith_class(1, certificate=False)
        assert report.certificate is None

    def test_classes_above_top_vanish(self, four_cycle):
        from zp_smith.smith import SmithComputation

        computation = SmithComputation(four_cycle)
        assert computation.is_trivial(2)
        assert computation.smith_class(7).trivial_over_z

    def test_p3_join(self):
        from zp_smith.corpus import sigma
        from zp_smith.joins import join
        from zp_smith.smith import SmithComputation

        computation = SmithComputation(_chain_complex(join(sigma(3), sigma(3)).result))
        assert computation.index() == 2
        assert computation.index_mod(1) == 2
        assert computation.moduli().values == (3,)

    def test_example_a(self):
        from zp_smith.corpus import example_a
        from zp_smith.smith import SmithComputation

        computation = SmithComputation(_chain_complex(example_a(1)))
        assert computation.index() == 3
        assert computation.index_mod(1) == 2
        assert computation.index_mod(2) == 3
        assert computation.moduli().values == (2, 4)
        report = computation.smith_class(2)
        assert not report.trivial_mod_p
        assert report.trivial_mod(1)
        assert not report.trivial_mod(2)

    def test_sandwich_and_torsion_on_random_complexes(self, random_zp_complex):
        from zp_smith.smith import SmithComputation

        for seed in range(10):
            for p in (2, 3):
                computation = SmithComputation(_chain_complex(random_zp_complex(seed, p=p)))
                index = computation.index()
                assert index - 1 <= computation.index_mod(1) <= index
                assert all(computation.check_torsion(j) for j in range(1, index + 1))
                moduli = computation.moduli()
                assert len(moduli) == max(index - 1, 0)
                assert all(m == p for m in moduli.values[:-1])

    def test_index_mod_rejects_bad_exponent(self, four_cycle):
        from zp_smith.smith import SmithComputation

        with pytest.raises(ValueError):
            SmithComputation(four_cycle).index_mod(0)

    def test_modulus_scan_cap(self):
        from django.conf import settings

        from zp_smith.conf import smith_settings
        from zp_smith.corpus import example_a
        from zp_smith.smith import SmithComputation, TheoremViolation

        settings.ZP_SMITH = {**settings.ZP_SMITH, "MAX_MODULUS_EXPONENT": 1}
        smith_settings.reload()
        computation = SmithComputation(_chain_complex(example_a(1)))
        with pytest.raises(TheoremViolation):
            computation.minimal_modulus_exponent(2)

    def test_reports(self, four_cycle):
        from zp_smith.smith import SmithComputation

        reports = SmithComputation(four_cycle).reports()
        assert [r.dimension for r in reports] == [0, 1, 2]
        assert [r.trivial_over_z for r in reports] == [False, False, True]

    def test_shared_cache(self, four_cycle):
        from zp_smith.smith import SmithComputation

        first = SmithComputation(four_cycle)
        first.index()
        second = SmithComputation(four_cycle)
        assert second.resolution is first.resolution


class TestModuleFunctions:
    """Tests for the module-level shortcuts."""

    def test_smith_index(self):
        from zp_smith.corpus import sphere
        from zp_smith.smith import smith_index

        assert smith_index(_chain_complex(sphere(2))) == 3

    def test_smith_index_mod_and_moduli(self, four_cycle):
        from zp_smith.smith import moduli_sequence, smith_class, smith_index_mod

        assert smith_index_mod(four_cycle) == 2
        assert list(moduli_sequence(four_cycle)) == [2]
        assert smith_class(four_cycle, 1).dimension == 1

    def test_supplied_resolution(self, antipodal_cylinder):
        from zp_smith.smith import build_resolution, shorten_resolution, smith_index

        R = shorten_resolution(build_resolution(antipodal_cylinder), 2)
        assert smith_index(antipodal_cylinder, R) == 2
