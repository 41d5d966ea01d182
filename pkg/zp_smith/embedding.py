"""
ZP-Smith Embeddability

Van Kampen obstructions read off deleted joins, and embed / does-not-embed /
inconclusive verdicts for joins M*N in twice their dimension.

Features:
- Obstruction status over Z and modulo powers of 2 for any simplicial complex
- Boundary-equivariant dual status per requested modulus
- Optional deleted-product cross-check of the obstruction
- Verdicts naming the clause that decided them, with dimension caveats
"""

import logging
from dataclasses import dataclass, field

from zp_smith.certificates import find_boundary_equivariant_dual
from zp_smith.complex import to_free_chain_complex
from zp_smith.conf import smith_settings
from zp_smith.deleted import deleted_join, deleted_product
from zp_smith.joins import simplicial_join
from zp_smith.smith import SmithComputation, TheoremViolation

logger = logging.getLogger("zp_smith")

EMBEDS = "Embeds"
DOES_NOT_EMBED = "DoesNotEmbed"
INCONCLUSIVE = "Inconclusive"

INCOMPLETE_IN_DIMENSION_TWO = (
    "the van Kampen obstruction is not complete for 2-complexes in R^4; "
    "vanishing does not by itself certify an embedding"
)


@dataclass(frozen=True, eq=False)
class ObstructionReport:
    """
    Van Kampen obstruction of `complex` read as A^(2d+1) of its deleted join.

    `duals[q]` holds a boundary-equivariant dual mod q (or None when none was
    found); `product_check` records the deleted-product class A^(2d) when the
    cross-check ran.
    """

    complex: object
    dimension: int
    chain_complex: object
    report: object
    duals: dict = field(default_factory=dict)
    product_check: dict = None

    @property
    def class_dimension(self):
        return 2 * self.dimension + 1

    @property
    def vanishes(self):
        return self.report.trivial_over_z

    @property
    def vanishes_mod_2(self):
        return self.report.trivial_mod_p

    @property
    def minimal_modulus_exponent(self):
        return self.report.minimal_modulus_exponent

    def to_dict(self):
        return {
            "dimension": self.dimension,
            "class_dimension": self.class_dimension,
            "trivial_over_z": self.vanishes,
            "trivial_mod_2": self.vanishes_mod_2,
            "minimal_modulus_exponent": self.minimal_modulus_exponent,
            "duals": {str(q): dual is not None for q, dual in self.duals.items()},
            "product_check": self.product_check,
        }


@dataclass(frozen=True, eq=False)
class Verdict:
    """Outcome for M*N in R^target_dimension with the deciding clause."""

    outcome: str
    target_dimension: int
    clause: str
    caveats: tuple = ()
    obstructions: tuple = ()
    dual: object = None
    cross_check: dict = None

    def to_dict(self):
        return {
            "outcome": self.outcome,
            "target_dimension": self.target_dimension,
            "clause": self.clause,
            "caveats": list(self.caveats),
            "obstructions": [o.to_dict() for o in self.obstructions],
            "cross_check": self.cross_check,
        }


def _product_check(M, d, report):
    X = deleted_product(M).chain_complex
    product = SmithComputation(X).smith_class(2 * d, certificate=False)
    check = {
        "dimension": 2 * d,
        "trivial_over_z": product.trivial_over_z,
        "trivial_mod_2": product.trivial_mod_p,
    }
    if (check["trivial_over_z"], check["trivial_mod_2"]) != (
        report.trivial_over_z,
        report.trivial_mod_p,
    ):
        logger.error("deleted_product_disagreement", extra=check)
        raise TheoremViolation(
            f"Deleted product A^{2 * d} and deleted join A^{2 * d + 1} disagree on triviality"
        )
    return check


def van_kampen_obstruction(M, dual_moduli=None, cross_check=None):
    """
    Van Kampen obstruction status of a simplicial complex.

    The obstruction vanishes iff the class A^(2d+1) of the deleted join is
    trivial over Z.

    Args:
        M: SimplicialComplex of dimension d ≥ 0
        dual_moduli: Moduli q for the boundary-equivariant dual search;
            defaults to DUAL_MODULI
        cross_check: Also compute A^(2d) of the deleted product; defaults to
            CROSS_CHECK_DELETED_PRODUCT

    Returns:
        ObstructionReport

    Raises:
        ValueError: If M has no vertices
        TheoremViolation: If the deleted product disagrees

    Examples:
        >>> van_kampen_obstruction(build_complex([[0, 1]])).vanishes
        True
    """
    if M.dimension < 0:
        raise ValueError("The empty complex has no van Kampen obstruction")
    if dual_moduli is None:
        dual_moduli = smith_settings.DUAL_MODULI
    if cross_check is None:
        cross_check = smith_settings.CROSS_CHECK_DELETED_PRODUCT
    d = M.dimension
    X = to_free_chain_complex(deleted_join(M).result)
    report = SmithComputation(X).smith_class(2 * d + 1)

    duals = {}
    if not report.trivial_mod_p:
        for q in dual_moduli:
            duals[q] = find_boundary_equivariant_dual(X, report, q)
    product_check = _product_check(M, d, report) if cross_check else None
    logger.info(
        "van_kampen_obstruction",
        extra={
            "dimension": d,
            "trivial_over_z": report.trivial_over_z,
            "minimal_modulus_exponent": report.minimal_modulus_exponent,
        },
    )
    return ObstructionReport(
        complex=M,
        dimension=d,
        chain_complex=X,
        report=report,
        duals=duals,
        product_check=product_check,
    )


def _caveats(dim_m, dim_n, outcome):
    caveats = []
    if dim_m + dim_n + 1 == 2 and outcome == EMBEDS:
        caveats.append(INCOMPLETE_IN_DIMENSION_TWO)
    if outcome == INCONCLUSIVE:
        caveats.append(
            "one obstruction is nonzero modulo 2 but has no boundary-equivariant dual "
            "for the other factor's minimal modulus"
        )
    return tuple(caveats)


def _decide(left, right):
    """(outcome, clause, dual) from two obstruction reports."""
    if left.vanishes or right.vanishes:
        return EMBEDS, "1", None
    if left.vanishes_mod_2 and right.vanishes_mod_2:
        return EMBEDS, "1", None
    if not left.vanishes_mod_2 and not right.vanishes_mod_2:
        return DOES_NOT_EMBED, "2.b", None
    if min(left.dimension, right.dimension) <= 1:
        return DOES_NOT_EMBED, "2.a", None
    for nonzero, other in ((left, right), (right, left)):
        if nonzero.vanishes_mod_2:
            continue
        q = 2**other.minimal_modulus_exponent
        dual = nonzero.duals.get(q)
        if q not in nonzero.duals:
            dual = find_boundary_equivariant_dual(nonzero.chain_complex, nonzero.report, q)
            nonzero.duals[q] = dual
        if dual is not None:
            return DOES_NOT_EMBED, "2.c", dual
    return INCONCLUSIVE, "2.c", None


def _join_cross_check(M, N, outcome):
    """A^(2(dM+dN)+3) of the deleted join of M*N, computed directly."""
    MN = simplicial_join(M, N)
    X = to_free_chain_complex(deleted_join(MN).result)
    j = 2 * MN.dimension + 1
    report = SmithComputation(X).smith_class(j, certificate=False)
    agrees = report.trivial_over_z == (outcome == EMBEDS)
    check = {"dimension": j, "trivial_over_z": report.trivial_over_z, "agrees": agrees}
    if outcome != INCONCLUSIVE and not agrees:
        logger.error("verdict_disagreement", extra=check)
        raise TheoremViolation(f"Verdict {outcome} contradicts A^{j} of the join's deleted join")
    return check


def embed_verdict(M, N, cross_check=False):
    """
    Decide whether M*N embeds in R^(2(dM + dN + 1)).

    Clause 1 (Embeds): an obstruction vanishes, or both vanish modulo 2.
    Otherwise DoesNotEmbed by 2.b (both nonzero modulo 2), 2.a (a factor of
    dimension ≤ 1) or 2.c (a mod-2 nonzero class with a dual that is
    boundary-equivariant modulo 2^m, m the other factor's minimal exponent);
    Inconclusive when none applies.

    Args:
        M: SimplicialComplex
        N: SimplicialComplex
        cross_check: Also compute the join's own deleted-join class

    Returns:
        Verdict

    Raises:
        TheoremViolation: If the cross-check contradicts the verdict
    """
    left = van_kampen_obstruction(M, dual_moduli=())
    right = van_kampen_obstruction(N, dual_moduli=())
    outcome, clause, dual = _decide(left, right)
    check = _join_cross_check(M, N, outcome) if cross_check else None
    verdict = Verdict(
        outcome=outcome,
        target_dimension=2 * (M.dimension + N.dimension + 1),
        clause=clause,
        caveats=_caveats(M.dimension, N.dimension, outcome),
        obstructions=(left, right),
        dual=dual,
        cross_check=check,
    )
    logger.info(
        "embed_verdict",
        extra={"outcome": outcome, "clause": clause, "target": verdict.target_dimension},
    )
    return verdict
