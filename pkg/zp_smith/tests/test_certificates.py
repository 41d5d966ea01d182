"""
Tests for zp_smith.certificates module.
"""

import pytest


class TestCertificateForCocycle:
    """Tests for certificate_for_cocycle function."""

    def test_order_two_torsion(self):
        from zp_smith.certificates import certificate_for_cocycle
        from zp_smith.linalg import IntMatrix

        assert certificate_for_cocycle(IntMatrix.from_rows([[2]]), [1], 2) == [1]
        assert certificate_for_cocycle(IntMatrix.from_rows([[2]]), [3], 2) == [1]

    def test_scaled_cycle(self):
        from zp_smith.certificates import certificate_for_cocycle
        from zp_smith.linalg import IntMatrix

        assert certificate_for_cocycle(IntMatrix.from_rows([[4]]), [1], 8) == [2]

    def test_coboundary_has_no_certificate(self):
        from zp_smith.certificates import certificate_for_cocycle
        from zp_smith.linalg import IntMatrix

        assert certificate_for_cocycle(IntMatrix.from_rows([[1]]), [1], 2) is None
        assert certificate_for_cocycle(IntMatrix.from_rows([[2]]), [2], 2) is None

    def test_certificate_properties(self):
        from zp_smith.certificates import certificate_for_cocycle
        from zp_smith.linalg import IntMatrix

        D = IntMatrix.from_rows([[6, 0], [0, 0]])
        chain = certificate_for_cocycle(D, [1, 0], 4)
        assert chain is not None
        assert all(v % 4 == 0 for v in D.apply(chain))
        assert sum(a * b for a, b in zip([1, 0], chain)) % 4

    def test_bad_arguments(self):
        from zp_smith.certificates import certificate_for_cocycle
        from zp_smith.linalg import IntMatrix

        with pytest.raises(ValueError):
            certificate_for_cocycle(IntMatrix.from_rows([[2]]), [1], 1)
        with pytest.raises(ValueError):
            certificate_for_cocycle(IntMatrix.from_rows([[2]]), [1, 0], 2)


class TestVerify:
    """Tests for verify_certificate_d and verify_certificate_s."""

    def test_s_certificate_on_four_cycle(self, four_cycle):
        from zp_smith.certificates import verify_certificate_s
        from zp_smith.complex import Chain, Cochain

        psi = Cochain(1, {2: -1})
        assert verify_certificate_s(four_cycle, psi, Chain(1, {0: 1, 2: 1}), 2)

    def test_s_certificate_rejects_non_cycle(self, four_cycle):
        from zp_smith.certificates import verify_certificate_s
        from zp_smith.complex import Chain, Cochain

        psi = Cochain(1, {2: -1})
        assert not verify_certificate_s(four_cycle, psi, Chain(1, {1: 1}), 2)

    def test_s_certificate_parity(self, four_cycle):
        from zp_smith.certificates import verify_certificate_s
        from zp_smith.complex import Chain, Cochain

        with pytest.raises(ValueError, match="d-class"):
            verify_certificate_s(four_cycle, Cochain(0, {0: 1}), Chain(0, {0: 1}), 2)

    def test_d_certificate_on_sigma(self):
        from zp_smith.certificates import verify_certificate_d
        from zp_smith.complex import Chain, Cochain, to_free_chain_complex
        from zp_smith.corpus import sigma

        X = to_free_chain_complex(sigma(2))
        assert verify_certificate_d(X, Cochain(0, {0: 1}), Chain(0, {0: 1}), 2)
        assert not verify_certificate_d(X, Cochain(0, {0: 1}), Chain(0, {0: 2}), 2)

    def test_d_certificate_support(self):
        from zp_smith.certificates import SupportViolation, verify_certificate_d
        from zp_smith.complex import Chain, Cochain, to_free_chain_complex
        from zp_smith.corpus import sigma

        X = to_free_chain_complex(sigma(2))
        with pytest.raises(SupportViolation):
            verify_certificate_d(X, Cochain(0, {0: 1}), Chain(0, {1: 1}), 2)
        with pytest.raises(SupportViolation):
            verify_certificate_d(X, Cochain(0, {1: 1}), Chain(0, {0: 1}), 2)

    def test_d_certificate_parity(self, four_cycle):
        from zp_smith.certificates import verify_certificate_d
        from zp_smith.complex import Chain, Cochain

        with pytest.raises(ValueError, match="s-class"):
            verify_certificate_d(four_cycle, Cochain(1, {0: 1}), Chain(1, {0: 1}), 2)
        with pytest.raises(ValueError):
            verify_certificate_d(four_cycle, Cochain(0, {0: 1}), Chain(1, {0: 1}), 2)


class TestFindCertificate:
    """Tests for find_certificate function."""

    def test_example_a_needs_modulus_four(self):
        from zp_smith.certificates import find_certificate, verify_certificate_d
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import example_a
        from zp_smith.smith import SmithComputation, fundamental_representative

        X = to_free_chain_complex(example_a(1))
        report = SmithComputation(X).smith_class(2, certificate=False)
        assert find_certificate(X, report, 2) is None
        certificate = find_certificate(X, report, 4)
        assert certificate.modulus == 4
        assert certificate.kind == "d"
        phi = fundamental_representative(X, report.representative)
        assert verify_certificate_d(X, phi, certificate.chain, 4)

    def test_attached_certificate(self):
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import example_a
        from zp_smith.smith import SmithComputation

        report = SmithComputation(to_free_chain_complex(example_a(1))).smith_class(2)
        assert report.certificate.modulus == 4

    def test_trivial_class(self, four_cycle):
        from zp_smith.certificates import find_certificate
        from zp_smith.smith import SmithComputation

        report = SmithComputation(four_cycle).smith_class(2)
        assert find_certificate(four_cycle, report, 2) is None

    def test_random_complexes(self, random_zp_complex):
        from zp_smith.certificates import find_certificate
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.smith import SmithComputation

        for seed in range(8):
            for p in (2, 3):
                X = to_free_chain_complex(random_zp_complex(seed, p=p))
                computation = SmithComputation(X)
                for j in range(computation.index()):
                    report = computation.smith_class(j, certificate=False)
                    m = report.minimal_modulus_exponent
                    assert find_certificate(X, report, p**m) is not None
                    if m > 1:
                        assert find_certificate(X, report, p ** (m - 1)) is None

    def test_to_dict_uses_labels(self, four_cycle):
        from zp_smith.smith import SmithComputation

        report = SmithComputation(four_cycle).smith_class(1)
        data = report.certificate.to_dict(four_cycle)
        assert data["kind"] == "s"
        assert data["modulus"] == 2
        assert all(len(label) == 2 for label, _ in data["chain"])


class TestBoundaryEquivariance:
    """Tests for boundary_equivariant and the dual search."""

    def test_hemisphere(self):
        from zp_smith.certificates import boundary_equivariant
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import sphere

        X = to_free_chain_complex(sphere(2))
        hemisphere = X.chain_from_labels(
            2, {(0, 2, 4): 1, (0, 3, 4): -1, (1, 2, 4): -1, (1, 3, 4): 1}
        )
        for q in (2, 3, 4, 7):
            assert boundary_equivariant(X, hemisphere, q)

    def test_single_triangle(self):
        from zp_smith.certificates import boundary_equivariant
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import sphere

        X = to_free_chain_complex(sphere(2))
        triangle = X.chain_from_labels(2, {(0, 2, 4): 1})
        assert not boundary_equivariant(X, triangle, 3)

    def test_dual_for_complete_graph(self):
        from zp_smith.certificates import boundary_equivariant, find_boundary_equivariant_dual
        from zp_smith.complex import evaluate, to_free_chain_complex
        from zp_smith.corpus import skeleton
        from zp_smith.deleted import deleted_join
        from zp_smith.smith import SmithComputation

        X = to_free_chain_complex(deleted_join(skeleton(1)).result)
        report = SmithComputation(X).smith_class(3, certificate=False)
        assert not report.trivial_mod_p
        dual = find_boundary_equivariant_dual(X, report, 2)
        assert dual is not None
        assert dual.modulus == 2
        assert boundary_equivariant(X, dual.chain, 2)
        assert evaluate(report.representative, dual.chain) % 2

    def test_dual_needs_mod_p_class(self):
        from zp_smith.certificates import find_boundary_equivariant_dual
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import example_a
        from zp_smith.smith import SmithComputation

        X = to_free_chain_complex(example_a(1))
        report = SmithComputation(X).smith_class(2, certificate=False)
        with pytest.raises(ValueError):
            find_boundary_equivariant_dual(X, report, 2)

    def test_hemisphere_dual_modulo_four(self):
        from zp_smith.certificates import (
            boundary_equivariant,
            find_boundary_equivariant_dual,
            verify_certificate_d,
        )
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import sphere
        from zp_smith.smith import SmithComputation, fundamental_representative

        X = to_free_chain_complex(sphere(2))
        report = SmithComputation(X).smith_class(2, certificate=False)
        dual = find_boundary_equivariant_dual(X, report, 4)
        assert dual is not None
        assert dual.kind == "d"
        assert boundary_equivariant(X, dual.chain, 4)
        phi = fundamental_representative(X, report.representative)
        assert verify_certificate_d(X, phi, dual.chain, 2)

    def test_example_b_dual_verifies(self):
        from zp_smith.certificates import (
            boundary_equivariant,
            find_boundary_equivariant_dual,
            verify_certificate_d,
        )
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import example_b
        from zp_smith.smith import SmithComputation, fundamental_representative

        X = to_free_chain_complex(example_b())
        report = SmithComputation(X).smith_class(2, certificate=False)
        dual = find_boundary_equivariant_dual(X, report, 2)
        assert dual is not None
        reps = set(X.orbits(2).reps)
        assert set(dual.chain.coefficients) <= reps
        assert boundary_equivariant(X, dual.chain, 2)
        phi = fundamental_representative(X, report.representative)
        assert verify_certificate_d(X, phi, dual.chain, 2)

    def test_complete_graph_dual_verifies(self):
        from zp_smith.certificates import find_boundary_equivariant_dual, verify_certificate_s
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import skeleton
        from zp_smith.deleted import deleted_join
        from zp_smith.smith import SmithComputation

        X = to_free_chain_complex(deleted_join(skeleton(1)).result)
        report = SmithComputation(X).smith_class(3, certificate=False)
        dual = find_boundary_equivariant_dual(X, report, 2)
        assert verify_certificate_s(X, report.primitive, dual.chain, 2)


class TestCoboundaryInvariance:
    """Certificates judge the class, not the chosen representative."""

    @staticmethod
    def _random_cochain(X, dim, seed):
        import random

        from zp_smith.complex import Cochain

        rng = random.Random(seed)
        return Cochain(dim, {i: rng.randint(-3, 3) for i in range(X.rank(dim))})

    def test_d_certificate(self):
        from zp_smith.certificates import find_certificate, verify_certificate_d
        from zp_smith.complex import apply_s, coboundary, to_free_chain_complex
        from zp_smith.corpus import example_a
        from zp_smith.smith import SmithComputation, fundamental_representative

        X = to_free_chain_complex(example_a(1))
        report = SmithComputation(X).smith_class(2, certificate=False)
        certificate = find_certificate(X, report, 4)
        for seed in range(20):
            eta = self._random_cochain(X, 1, seed)
            shifted = report.representative + apply_s(X, coboundary(X, eta))
            phi = fundamental_representative(X, shifted)
            assert verify_certificate_d(X, phi, certificate.chain, 4)

    def test_s_certificate(self, four_cycle):
        from zp_smith.certificates import verify_certificate_s
        from zp_smith.complex import coboundary
        from zp_smith.smith import SmithComputation

        report = SmithComputation(four_cycle).smith_class(1)
        chain = report.certificate.chain
        for seed in range(20):
            eta = self._random_cochain(four_cycle, 0, seed)
            phi = report.primitive + coboundary(four_cycle, eta)
            assert verify_certificate_s(four_cycle, phi, chain, 2)

    def test_s_certificate_on_sphere(self):
        from zp_smith.certificates import verify_certificate_s
        from zp_smith.complex import coboundary, to_free_chain_complex
        from zp_smith.corpus import sphere
        from zp_smith.smith import SmithComputation

        X = to_free_chain_complex(sphere(3))
        report = SmithComputation(X).smith_class(3)
        chain = report.certificate.chain
        for seed in range(20):
            eta = self._random_cochain(X, 2, seed)
            phi = report.primitive + coboundary(X, eta)
            assert verify_certificate_s(X, phi, chain, 2)
