"""
ZP-Smith Joins

Joins of Z_p-complexes and free chain complexes, the closed-form resolution
of the unit cocycle on a join, and the operator identities behind it.

Features:
- Simplicial joins K*L with factor-wise action (K-vertices first)
- Join chain complexes D(X*Y) of arbitrary free Z_p chain complexes
- One bijection table (σ, τ) <-> σ*τ per join
- Join resolutions kept as tensor summands and flattened on demand
- Executable operator identities for d, s and s_q on tensor cochains
"""

import logging
from dataclasses import dataclass, field

from zp_smith.complex import (
    Cochain,
    FreeZpChainComplex,
    SimplicialComplex,
    ZpComplex,
    apply_d,
    apply_s,
    apply_sq,
    apply_t,
    coboundary,
    to_free_chain_complex,
)
from zp_smith.conf import smith_settings
from zp_smith.linalg import IntMatrix
from zp_smith.smith import Resolution, validate_resolution

logger = logging.getLogger("zp_smith")

OPERATOR_IDENTITIES = ("claim1", "claim2", "claim3", "claim4")

PROVEN = "proven"
CONDITIONAL = "conditional"


def empty_cochain():
    """The (-1)-cochain ∅* with value 1 on the empty simplex."""
    return Cochain(-1, {0: 1})


@dataclass(frozen=True, eq=False)
class JoinComplex:
    """
    A join together with its identification with the tensor complex.

    `cell_of[(a, i, b, j)]` is the index in dimension a + b + 1 of the join
    of left cell i (dimension a) and right cell j (dimension b); dimension -1
    on either side stands for ∅. `result` is None for joins of cellular
    chain complexes.
    """

    left: FreeZpChainComplex
    right: FreeZpChainComplex
    chain_complex: FreeZpChainComplex
    cell_of: dict
    result: ZpComplex = None
    factor_maps: tuple = None
    _split: dict = field(default=None, repr=False)

    @property
    def p(self):
        return self.chain_complex.p

    def tensor(self, x, y):
        """
        μ(x ⊗ y): the cochain on the join with (x⊗y)(σ*τ) = x(σ)·y(τ).

        Args:
            x: Cochain on the left factor (dimension -1 allowed)
            y: Cochain on the right factor

        Returns:
            Cochain of dimension x.dimension + y.dimension + 1
        """
        a, b = x.dimension, y.dimension
        result = {}
        for i, u in x.coefficients.items():
            for j, v in y.coefficients.items():
                result[self.cell_of[(a, i, b, j)]] = u * v
        return Cochain(a + b + 1, result)

    def split(self, dim, index):
        """Inverse of cell_of: (a, i, b, j) for a cell of the join."""
        table = self._split
        if table is None:
            table = {}
            for key, cell in self.cell_of.items():
                table[(key[0] + key[2] + 1, cell)] = key
            object.__setattr__(self, "_split", table)
        return table[(dim, index)]


def _cell_pairs(left, right, dim):
    """(a, i, b, j) quadruples with a + b + 1 = dim, left dimension ascending."""
    for a in range(-1, left.top_dim + 1):
        b = dim - 1 - a
        if b < -1 or b > right.top_dim:
            continue
        for i in range(left.rank(a)):
            for j in range(right.rank(b)):
                yield a, i, b, j


def _join_cells(M, N):
    """Yield ((a, i, b, j), σ*τ) over all simplex pairs, N's vertices shifted past M's."""
    shift = M.vertex_count
    for a in range(-1, M.dimension + 1):
        for i, simplex in enumerate(M.simplices.get(a, ())):
            for b in range(-1, N.dimension + 1):
                for j, tau in enumerate(N.simplices.get(b, ())):
                    yield (a, i, b, j), simplex + tuple(v + shift for v in tau)


def simplicial_join(M, N):
    """
    Join of two simplicial complexes, N's vertices numbered after M's.

    Examples:
        >>> simplicial_join(build_complex([[0]]), build_complex([[0], [1]])).simplices[1]
        ((0, 1), (0, 2))
    """
    by_dim = {}
    for _, cell in _join_cells(M, N):
        by_dim.setdefault(len(cell) - 1, []).append(cell)
    names = None
    if M.names or N.names:
        names = tuple(M.vertex_name(v) for v in range(M.vertex_count)) + tuple(
            N.vertex_name(v) for v in range(N.vertex_count)
        )
        if len(set(names)) != len(names):
            names = None
    return SimplicialComplex(
        vertex_count=M.vertex_count + N.vertex_count,
        simplices={dim: tuple(sorted(cells)) for dim, cells in by_dim.items()},
        names=names,
    )


def join(K, L):
    """
    Simplicial join of two Z_p-complexes.

    L's vertices are shifted past K's, so σ*τ is the sorted tuple σ + τ'
    and the orientation places L-vertices after K-vertices.

    Args:
        K: ZpComplex
        L: ZpComplex with the same p

    Returns:
        JoinComplex whose `result` is the ZpComplex K*L

    Raises:
        ValueError: If the primes differ or a factor is invalid

    Examples:
        >>> S1 = join(sigma(2), sigma(2)).result
        >>> S1.complex.count(1), S1.action
        (4, (1, 0, 3, 2))
    """
    if K.p != L.p:
        raise ValueError(f"Cannot join a Z_{K.p}-complex with a Z_{L.p}-complex")
    left = to_free_chain_complex(K)
    right = to_free_chain_complex(L)
    shift = K.complex.vertex_count
    n = shift + L.complex.vertex_count
    pairs = dict(_join_cells(K.complex, L.complex))
    action = tuple(K.action) + tuple(v + shift for v in L.action)
    complex_ = simplicial_join(K.complex, L.complex)
    result = ZpComplex(complex=complex_, p=K.p, action=action)
    chain_complex = to_free_chain_complex(result)
    cell_of = {
        key: chain_complex.index_of(key[0] + key[2] + 1, cell) for key, cell in pairs.items()
    }
    logger.debug(
        "join",
        extra={"vertices": n, "dimension": result.dimension, "cells": len(cell_of)},
    )
    return JoinComplex(
        left=left,
        right=right,
        chain_complex=chain_complex,
        cell_of=cell_of,
        result=result,
        factor_maps=(tuple(range(shift)), tuple(range(shift, n))),
    )


def tensor_join(X, Y):
    """
    Join chain complex D(X*Y) of two free Z_p chain complexes.

    D_n is spanned by e⊗f with dim e + dim f = n - 1, with
    ∂(e⊗f) = ∂e⊗f + (-1)^(dim e + 1) e⊗∂f and t(e⊗f) = te⊗tf.

    Args:
        X: FreeZpChainComplex (left factor)
        Y: FreeZpChainComplex with the same p

    Returns:
        JoinComplex with labels (left label, right label) and no `result`

    Raises:
        ValueError: If the primes differ
    """
    if X.p != Y.p:
        raise ValueError(f"Cannot join a Z_{X.p}-complex with a Z_{Y.p}-complex")
    top = X.top_dim + Y.top_dim + 1
    labels = {}
    cell_of = {}
    for dim in range(-1, top + 1):
        cells = []
        for a, i, b, j in _cell_pairs(X, Y, dim):
            cell_of[(a, i, b, j)] = len(cells)
            cells.append((X.labels[a][i], Y.labels[b][j]))
        labels[dim] = tuple(cells)

    boundaries = {}
    actions = {}
    for dim in range(-1, top + 1):
        step = []
        entries = {}
        for a, i, b, j in _cell_pairs(X, Y, dim):
            col = cell_of[(a, i, b, j)]
            ti, si = X.actions[a][i]
            tj, sj = Y.actions[b][j]
            step.append((cell_of[(a, ti, b, tj)], si * sj))
            if dim < 0:
                continue
            if a >= 0:
                for r, v in X.boundary_columns(a).row(i).items():
                    key = (cell_of[(a - 1, r, b, j)], col)
                    entries[key] = entries.get(key, 0) + v
            if b >= 0:
                sign = (-1) ** (a + 1)
                for r, v in Y.boundary_columns(b).row(j).items():
                    key = (cell_of[(a, i, b - 1, r)], col)
                    entries[key] = entries.get(key, 0) + sign * v
        actions[dim] = tuple(step)
        if dim >= 0:
            boundaries[dim] = IntMatrix(len(labels[dim - 1]), len(labels[dim]), entries)

    chain_complex = FreeZpChainComplex(
        p=X.p, top_dim=top, labels=labels, boundaries=boundaries, actions=actions
    )
    return JoinComplex(left=X, right=Y, chain_complex=chain_complex, cell_of=cell_of)


# ---------------------------------------------------------------------------
# Join resolutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorTerm:
    """Summand `left ⊗ t^power right` of Φ_j, indexed by the left dimension k."""

    k: int
    left: Cochain
    right: Cochain
    power: int


@dataclass(frozen=True, eq=False)
class JoinResolution:
    """
    Resolution Φ_0..Φ_D of the unit cocycle on a join, built from the factors.

    `terms[j]` holds the tensor summands of Φ_j; `flatten(j)` evaluates them
    on the join through μ.
    """

    joined: JoinComplex
    terms: tuple
    stability: str = PROVEN
    _flat: dict = field(default_factory=dict, repr=False)

    @property
    def p(self):
        return self.joined.p

    def summands(self, j, k=None):
        """Tensor summands of Φ_j, optionally only Φ^j_k."""
        if not 0 <= j < len(self.terms):
            return ()
        return tuple(term for term in self.terms[j] if k is None or term.k == k)

    def flatten(self, j):
        """Φ_j as a cochain on the join."""
        if j not in self._flat:
            joined = self.joined
            right = joined.right
            total = Cochain(j, {})
            for term in self.summands(j):
                shifted = apply_t(right, term.right, term.power)
                total = total + joined.tensor(term.left, shifted)
            self._flat[j] = total
        return self._flat[j]

    def as_resolution(self, validate=None):
        """
        The flattened Resolution on the join's chain complex.

        Raises:
            ResolutionError: If the flattened cochains fail validation
        """
        if validate is None:
            validate = smith_settings.VALIDATE_RESOLUTIONS
        psis = tuple(self.flatten(j) for j in range(len(self.terms)))
        resolution = Resolution(base=self.joined.chain_complex, psis=psis)
        if validate:
            validate_resolution(resolution)
        return resolution

    def __len__(self):
        return len(self.terms)


def _factor_psi(R, k):
    """φ_k with φ_(-1) = ∅*."""
    if k == -1:
        return empty_cochain()
    return R.psi(k)


def _join_terms(RK, RL, j, p):
    X = RK.base
    terms = [TensorTerm(k=-1, left=empty_cochain(), right=_factor_psi(RL, j), power=0)]
    for k in range(0, j + 1):
        phi = RK.psi(k)
        right = _factor_psi(RL, j - 1 - k)
        if not phi.coefficients or not right.coefficients:
            continue
        level = k // 2
        if k % 2:
            terms.append(TensorTerm(k=k, left=phi, right=right, power=(-(level + 1)) % p))
        elif j % 2 == 0:
            terms.append(TensorTerm(k=k, left=phi, right=right, power=(-level) % p))
        else:
            full = apply_s(X, phi)
            for q in range(p - 1):
                left = full - apply_sq(X, phi, q)
                if left.coefficients:
                    terms.append(
                        TensorTerm(k=k, left=left, right=right, power=(q - level) % p)
                    )
    return tuple(term for term in terms if term.right.coefficients and term.left.coefficients)


def join_resolution(RK, RL, joined=None):
    """
    Resolution of the unit cocycle on K*L from resolutions of K and L.

    With φ_(-1) = ∅* on both factors, Φ_j = Σ_k Φ^j_k over k = -1..j, where
    Φ^j_k pairs φ_k with φ'_(j-1-k) twisted by t^(-l) (k = 2l, j even) or
    t^(-(l+1)) (k = 2l+1), and for k = 2l with j odd by
    Σ_(q<p-1) ((s - s_q)φ_k) ⊗ t^(q-l) φ'_(j-1-k). Φ_0 = ∅⊗φ'_0 + φ_0⊗∅.

    Args:
        RK: Resolution on the left factor
        RL: Resolution on the right factor
        joined: JoinComplex of the two factors; defaults to tensor_join

    Returns:
        JoinResolution covering dimensions 0..dim(K*L)

    Raises:
        ValueError: If the primes differ or `joined` does not match the factors
        ResolutionError: If the flattened resolution fails validation

    Examples:
        >>> R = build_resolution(to_free_chain_complex(sigma(2)))
        >>> JR = join_resolution(R, R)
        >>> [t.k for t in JR.summands(0)]
        [-1, 0]
    """
    X, Y = RK.base, RL.base
    if X.p != Y.p:
        raise ValueError(f"Resolutions over Z_{X.p} and Z_{Y.p} cannot be joined")
    if joined is None:
        joined = tensor_join(X, Y)
    elif joined.left.labels != X.labels or joined.right.labels != Y.labels:
        raise ValueError("Join complex does not match the factors of the resolutions")
    p = X.p
    top = joined.chain_complex.top_dim
    terms = tuple(_join_terms(RK, RL, j, p) for j in range(0, top + 1))
    resolution = JoinResolution(
        joined=joined, terms=terms, stability=PROVEN if p == 2 else CONDITIONAL
    )
    if smith_settings.VALIDATE_RESOLUTIONS:
        resolution.as_resolution(validate=True)
    logger.debug(
        "join_resolution",
        extra={"p": p, "dimension": top, "summands": sum(len(t) for t in terms)},
    )
    return resolution


# ---------------------------------------------------------------------------
# Operator identities
# ---------------------------------------------------------------------------


def _twisted_sum(joined, x, y):
    """Σ_(k<p-1) ((s - s_k)x) ⊗ t^k y, flattened."""
    X, Y = joined.left, joined.right
    full = apply_s(X, x)
    total = Cochain(x.dimension + y.dimension + 1, {})
    for k in range(joined.p - 1):
        total = total + joined.tensor(full - apply_sq(X, x, k), apply_t(Y, y, k))
    return total


def operator_identity_sides(joined, name, x, y):
    """
    Both sides of one operator identity as cochains on the join.

    claim1: d Σ((s - s_k)x)⊗t^k y = sx⊗y - x⊗sy
    claim2: x⊗sy + Σ((s - s_k)dx)⊗t^k y = s(x⊗t^(p-1) y)
    claim3: sx⊗y - Σ((s - s_k)x)⊗t^k dy = s(x⊗y)
    claim4: dx⊗y + x⊗t^(p-1) dy = d(x⊗t^(p-1) y)

    Raises:
        ValueError: On an unknown identity name
    """
    X, Y, Z = joined.left, joined.right, joined.chain_complex
    last = joined.p - 1
    if name == "claim1":
        lhs = apply_d(Z, _twisted_sum(joined, x, y))
        rhs = joined.tensor(apply_s(X, x), y) - joined.tensor(x, apply_s(Y, y))
    elif name == "claim2":
        lhs = joined.tensor(x, apply_s(Y, y)) + _twisted_sum(joined, apply_d(X, x), y)
        rhs = apply_s(Z, joined.tensor(x, apply_t(Y, y, last)))
    elif name == "claim3":
        lhs = joined.tensor(apply_s(X, x), y) - _twisted_sum(joined, x, apply_d(Y, y))
        rhs = apply_s(Z, joined.tensor(x, y))
    elif name == "claim4":
        lhs = joined.tensor(apply_d(X, x), y) + joined.tensor(x, apply_t(Y, apply_d(Y, y), last))
        rhs = apply_d(Z, joined.tensor(x, apply_t(Y, y, last)))
    else:
        raise ValueError(f"Unknown operator identity: {name!r}")
    return lhs, rhs


def check_operator_identity(joined, name, x, y):
    """
    Evaluate one operator identity on cochains x (left) and y (right).

    Returns:
        True iff both sides agree on every cell of the join

    Examples:
        >>> J = tensor_join(*[to_free_chain_complex(sigma(3))] * 2)
        >>> check_operator_identity(J, "claim1", Cochain(0, {0: 1}), Cochain(0, {1: 2}))
        True
    """
    lhs, rhs = operator_identity_sides(joined, name, x, y)
    return lhs == rhs


def coboundary_leibniz(joined, x, y):
    """δ(x⊗y) and δx⊗y + (-1)^(dim x + 1) x⊗δy, flattened."""
    Z = joined.chain_complex
    left = coboundary(Z, joined.tensor(x, y))
    sign = (-1) ** (x.dimension + 1)
    right = joined.tensor(coboundary(joined.left, x), y) + sign * joined.tensor(
        x, coboundary(joined.right, y)
    )
    return left, right
