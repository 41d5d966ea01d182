"""
ZP-Smith Deleted Joins and Products

The deleted join M^{*2} (simplicial) and deleted product M^{×2} (cellular) of
a simplicial complex, each with the free Z_2 action swapping the factors.

Features:
- Deleted joins on two disjoint vertex copies, with provenance of every simplex
- Deleted products as free Z_2 chain complexes with product cell signs
"""

import logging
from dataclasses import dataclass

from zp_smith.complex import (
    FreeZpChainComplex,
    SimplicialComplex,
    ZpComplex,
    simplex_boundary,
)
from zp_smith.linalg import IntMatrix

logger = logging.getLogger("zp_smith")


@dataclass(frozen=True, eq=False)
class DeletedJoin:
    """
    Deleted join of `base` with the swap action.

    Copy-one vertices are 0..n-1, copy-two vertices are n..2n-1;
    `provenance[simplex] = (σ, τ)` with σ, τ disjoint simplices of `base`.
    """

    base: SimplicialComplex
    result: ZpComplex
    provenance: dict


@dataclass(frozen=True, eq=False)
class DeletedProduct:
    """Deleted product of `base`: cells (σ, τ) of nonempty disjoint simplices."""

    base: SimplicialComplex
    chain_complex: FreeZpChainComplex


def _masks(M):
    simplices = list(M.all_simplices())
    return [(s, sum(1 << v for v in s)) for s in simplices]


def _copy_names(M):
    if M.vertex_count == 0:
        return None
    return tuple(f"{M.vertex_name(v)}:1" for v in range(M.vertex_count)) + tuple(
        f"{M.vertex_name(v)}:2" for v in range(M.vertex_count)
    )


def deleted_join(M):
    """
    Deleted join of a simplicial complex.

    Args:
        M: SimplicialComplex

    Returns:
        DeletedJoin whose result is a free Z_2-complex

    Examples:
        >>> D = deleted_join(build_complex([[0, 1]]))
        >>> D.result.complex.simplices[1]
        ((0, 1), (0, 3), (1, 2), (2, 3))
    """
    n = M.vertex_count
    cells = _masks(M)
    by_dim = {}
    provenance = {}
    for sigma, a in cells:
        for tau, b in cells:
            if a & b:
                continue
            simplex = sigma + tuple(v + n for v in tau)
            by_dim.setdefault(len(simplex) - 1, []).append(simplex)
            provenance[simplex] = (sigma, tau)
    simplices = {dim: tuple(sorted(found)) for dim, found in by_dim.items()}
    action = tuple(range(n, 2 * n)) + tuple(range(n))
    complex_ = SimplicialComplex(vertex_count=2 * n, simplices=simplices, names=_copy_names(M))
    result = ZpComplex(complex=complex_, p=2, action=action)
    logger.debug(
        "deleted_join",
        extra={"vertices": 2 * n, "simplices": len(provenance), "dimension": complex_.dimension},
    )
    return DeletedJoin(base=M, result=result, provenance=provenance)


def deleted_product(M):
    """
    Deleted product of a simplicial complex as a free Z_2 chain complex.

    Cells σ×τ (σ, τ nonempty and disjoint) sit in dimension dim σ + dim τ, with
    ∂(σ×τ) = ∂σ×τ + (-1)^(dim σ) σ×∂τ (faces with an empty factor dropped;
    0-cells map to ∅) and t(σ×τ) = (-1)^(dim σ·dim τ) τ×σ.

    Args:
        M: SimplicialComplex

    Returns:
        DeletedProduct (chain complex validated)

    Examples:
        >>> triangle = build_complex([[0, 1], [1, 2], [0, 2]])
        >>> X = deleted_product(triangle).chain_complex
        >>> X.rank(0), X.rank(1), X.rank(2)
        (6, 6, 0)
    """
    cells = [(s, mask) for s, mask in _masks(M) if s]
    by_dim = {}
    for sigma, a in cells:
        for tau, b in cells:
            if a & b:
                continue
            by_dim.setdefault(len(sigma) + len(tau) - 2, []).append((sigma, tau))
    top = max(by_dim) if by_dim else -1
    labels = {-1: (((), ()),)}
    for dim in range(0, top + 1):
        labels[dim] = tuple(sorted(by_dim.get(dim, ())))
    index = {dim: {label: i for i, label in enumerate(labels[dim])} for dim in labels}

    boundaries = {}
    actions = {-1: ((0, 1),)}
    for dim in range(0, top + 1):
        entries = {}
        step = []
        for col, (sigma, tau) in enumerate(labels[dim]):
            ds, dt = len(sigma) - 1, len(tau) - 1
            step.append((index[dim][(tau, sigma)], (-1) ** (ds * dt)))
            if dim == 0:
                entries[(0, col)] = 1
                continue
            if ds > 0:
                for face, sign in simplex_boundary(sigma):
                    entries[(index[dim - 1][(face, tau)], col)] = sign
            if dt > 0:
                for face, sign in simplex_boundary(tau):
                    entries[(index[dim - 1][(sigma, face)], col)] = (-1) ** ds * sign
        actions[dim] = tuple(step)
        boundaries[dim] = IntMatrix(len(labels[dim - 1]), len(labels[dim]), entries)

    X = FreeZpChainComplex(p=2, top_dim=top, labels=labels, boundaries=boundaries, actions=actions)
    X.validate()
    logger.debug(
        "deleted_product",
        extra={"dimension": top, "cells": sum(map(len, by_dim.values()))},
    )
    return DeletedProduct(base=M, chain_complex=X)
