"""
ZP-Smith Certificates

Chains witnessing that a torsion d- or s-cohomology class is nonzero modulo n,
their verification, and the search for boundary-equivariant duals.

Features:
- Certificates for cocycles of any free chain complex from one Smith normal form
- Certificates for Smith classes, mapped back to the fundamental domain
- Independent verification of d- and s-certificates
- Boundary-equivariance test and dual search over a congruence lattice
"""

import logging
from dataclasses import dataclass
from math import gcd

from zp_smith.complex import Chain, apply_d, apply_s, boundary, evaluate
from zp_smith.linalg import IntMatrix, snf
from zp_smith.smith import (
    D_FOLD,
    class_decomposition,
    fold,
    fundamental_representative,
)

logger = logging.getLogger("zp_smith")


class SupportViolation(ValueError):
    """A chain or cochain leaves the fundamental domain."""


@dataclass(frozen=True)
class Certificate:
    """Chain c with modulus n witnessing a nonzero class of the given kind and dimension."""

    chain: Chain
    modulus: int
    kind: str
    dimension: int

    def to_dict(self, X=None):
        if X is not None:
            terms = [[list(label), value] for label, value in X.labeled(self.chain)]
        else:
            terms = [[i, v] for i, v in sorted(self.chain.coefficients.items())]
        return {
            "kind": self.kind,
            "dimension": self.dimension,
            "modulus": self.modulus,
            "chain": terms,
        }


def _lcm(a, b):
    return a * b // gcd(a, b)


def _reduced_boundary(X, c):
    """Boundary in the non-augmented complex (0-chains are cycles)."""
    if c.dimension <= 0:
        return Chain(max(c.dimension - 1, -1), {})
    return boundary(X, c)


def _candidates(decomposition, cocycle, n, size):
    """
    Scaled rows of P on which the cocycle can be nonzero modulo n.

    With P·Dᵀ·Q = S, row q_i of P has ∂q_i ∈ s_i·Z and φ(q_i) = (P·φ)_i, so
    (n / gcd(s_i, n))·q_i is a cycle mod n whenever it pairs nontrivially.
    """
    diagonal = decomposition.diagonal
    for i, value in enumerate(decomposition.left.apply(list(cocycle))):
        s = diagonal[i] if i < len(diagonal) else 0
        g = gcd(s, n)
        if value % g == 0:
            continue
        vector = [0] * size
        for k, v in decomposition.left.row(i).items():
            vector[k] = (n // g) * v
        yield vector


def certificate_for_cocycle(D, cocycle, n, decomposition=None):
    """
    Certificate for a cocycle of a free chain complex, modulo n.

    A suitable multiple of one row of the SNF transform of Dᵀ is a cycle mod
    n on which φ is nonzero.

    Args:
        D: Boundary matrix from dimension j (columns) to j-1 (rows)
        cocycle: Values of φ on the j-basis
        n: Modulus ≥ 2
        decomposition: Optional precomputed snf(Dᵀ)

    Returns:
        Dense chain vector, or None if [φ] vanishes modulo n

    Examples:
        >>> certificate_for_cocycle(IntMatrix.from_rows([[2]]), [1], 2)
        [1]
        >>> certificate_for_cocycle(IntMatrix.from_rows([[4]]), [1], 8)
        [2]
    """
    if n < 2:
        raise ValueError(f"Certificate modulus must be at least 2, got {n}")
    if len(cocycle) != D.cols:
        raise ValueError(f"Cocycle of length {len(cocycle)} does not fit {D.cols} cells")
    dec = decomposition or snf(D.transpose(), inverses=False)
    for chain in _candidates(dec, cocycle, n, D.cols):
        if any(v % n for v in D.apply(chain)):
            continue
        if sum(a * b for a, b in zip(cocycle, chain)) % n:
            return chain
    return None


def find_certificate(X, report, n):
    """
    Certificate that a Smith class is nonzero modulo n.

    d-certificates are supported in the fundamental domain; s-certificates
    are chains Σ a_(σ,k) t^k σ on which ψ_j(dc) is nonzero. Candidates come
    from the same SNF rows as certificate_for_cocycle, taken in the folded
    complex and mapped back to X.

    Args:
        X: FreeZpChainComplex the report was computed on
        report: SmithClassReport
        n: Modulus ≥ 2 (normally a power of p)

    Returns:
        Certificate passing the matching verify function, or None when the
        class vanishes modulo n
    """
    j = report.dimension
    if report.trivial_over_z:
        return None
    folded = fold(X, report.parity)
    x = folded.cochain_coordinates(report.representative)
    if report.parity == D_FOLD:
        phi = fundamental_representative(X, report.representative)
        verify = verify_certificate_d
    else:
        phi = report.primitive
        verify = verify_certificate_s

    for vector in _candidates(class_decomposition(X, j), x, n, folded.rank(j)):
        chain = folded.chain_from_coordinates(j, vector)
        if verify(X, phi, chain, n):
            return Certificate(chain=chain, modulus=n, kind=report.parity, dimension=j)
    logger.debug("no_certificate", extra={"dimension": j, "modulus": n})
    return None


def verify_certificate_d(X, phi, c, n):
    """
    Verify a certificate for the d-class [sφ] modulo n.

    True iff c is supported in the fundamental domain, s∂c ≡ 0 mod n and
    φ(c) ≢ 0 mod n.

    Args:
        X: FreeZpChainComplex
        phi: Cochain supported in the fundamental domain (even dimension)
        c: Chain of the same dimension
        n: Modulus

    Raises:
        ValueError: On an odd-dimensional φ (an s-class) or mismatched dimensions
        SupportViolation: If φ or c leaves the fundamental domain
    """
    if phi.dimension % 2:
        raise ValueError(f"A {phi.dimension}-dimensional class is an s-class, not a d-class")
    if c.dimension != phi.dimension:
        raise ValueError(f"Chain dimension {c.dimension} does not match class dimension")
    if c.dimension > X.top_dim:
        return False
    reps = set(X.orbits(c.dimension).reps)
    if any(i not in reps for i in phi.coefficients):
        raise SupportViolation("Cochain is not supported in the fundamental domain")
    if any(i not in reps for i in c.coefficients):
        raise SupportViolation("Certificate chain is not supported in the fundamental domain")
    if not apply_s(X, _reduced_boundary(X, c)).is_zero(n):
        return False
    return evaluate(phi, c) % n != 0


def verify_certificate_s(X, phi, c, n):
    """
    Verify a certificate for the s-class [dφ] modulo n.

    True iff d∂c ≡ 0 mod n and φ(dc) ≢ 0 mod n.

    Raises:
        ValueError: On an even-dimensional φ (a d-class) or mismatched dimensions
    """
    if phi.dimension % 2 == 0:
        raise ValueError(f"A {phi.dimension}-dimensional class is a d-class, not an s-class")
    if c.dimension != phi.dimension:
        raise ValueError(f"Chain dimension {c.dimension} does not match class dimension")
    if not apply_d(X, _reduced_boundary(X, c)).is_zero(n):
        return False
    return evaluate(phi, apply_d(X, c)) % n != 0


def boundary_equivariant(X, c, q):
    """
    Whether d∂c ≡ 0 mod q.

    The upper hemisphere of the antipodal 2-sphere is boundary-equivariant
    for every q: its boundary, the equator, is carried to itself by t.
    """
    return apply_d(X, _reduced_boundary(X, c)).is_zero(q)


def _operator_matrix(X, j, operator, cells):
    """Matrix of c ↦ operator(∂c) from chains on `cells` to (j-1)-chains."""
    rows = X.rank(j - 1) if j > 0 else 0
    entries = {}
    for col, cell in enumerate(cells):
        image = operator(X, _reduced_boundary(X, Chain(j, {cell: 1})))
        for row, v in image.coefficients.items():
            entries[(row, col)] = v
    return IntMatrix(rows, len(cells), entries)


def find_boundary_equivariant_dual(X, report, q):
    """
    Search for a dual of a mod-p nonzero class that is boundary-equivariant mod q.

    The candidates form the lattice {c : s∂c ≡ 0 mod p, d∂c ≡ 0 mod q} of
    fundamental-domain chains (d-classes) or {c : d∂c ≡ 0 mod p and mod q}
    (s-classes). The class representative is nonzero mod p on that lattice
    iff it is nonzero on one of the generators read off a Smith normal form.

    Args:
        X: FreeZpChainComplex
        report: SmithClassReport, nonzero modulo p
        q: Modulus for boundary-equivariance

    Returns:
        Certificate (modulus p) passing the matching verify function whose
        chain is boundary-equivariant mod q, or None

    Raises:
        ValueError: If the class vanishes modulo p
    """
    p = X.p
    j = report.dimension
    if report.trivial_mod_p:
        raise ValueError(f"A^{j} vanishes modulo {p}; it has no dual")
    modulus = _lcm(p, q)
    if report.parity == D_FOLD:
        cells = sorted(X.orbits(j).reps)
        blocks = [
            _operator_matrix(X, j, apply_s, cells).scaled(modulus // p),
            _operator_matrix(X, j, apply_d, cells).scaled(modulus // q),
        ]
        phi = fundamental_representative(X, report.representative)
        verify = verify_certificate_d
    else:
        cells = list(range(X.rank(j)))
        blocks = [_operator_matrix(X, j, apply_d, cells)]
        phi = report.primitive
        verify = verify_certificate_s
    entries = {}
    offset = 0
    for block in blocks:
        for (r, c), v in block.entries.items():
            entries[(offset + r, c)] = v
        offset += block.rows
    stacked = IntMatrix(offset, len(cells), entries)

    decomposition = snf(stacked, inverses=False)
    x = [report.representative[cell] for cell in cells]
    values = decomposition.right.apply_left(x)
    columns = decomposition.right.transpose()
    for i, value in enumerate(values):
        s = decomposition.diagonal[i] if i < len(decomposition.diagonal) else 0
        scale = modulus // gcd(s, modulus)
        if (scale * value) % p == 0:
            continue
        chain = {}
        for k, v in columns.row(i).items():
            reduced = (scale * v) % modulus
            if 2 * reduced > modulus:
                reduced -= modulus
            if reduced:
                chain[cells[k]] = reduced
        c = Chain(j, chain)
        if not boundary_equivariant(X, c, q) or not verify(X, phi, c, p):
            continue
        logger.debug("boundary_equivariant_dual", extra={"dimension": j, "q": q})
        return Certificate(chain=c, modulus=p, kind=report.parity, dimension=j)
    return None
