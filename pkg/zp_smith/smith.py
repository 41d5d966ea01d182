"""
ZP-Smith Engine

Resolutions of the unit cocycle, folding of the d- and s-cochain complexes
into free complexes, and Smith classes, indices and moduli sequences over Z
and Z/p^m.

Features:
- Orbit-wise construction and exact validation of resolutions
- d-fold and s-fold complexes on a fundamental domain (no quotient complex)
- Class triviality over Z and modulo p^m from one Smith normal form per dimension
- Smith index, mod-p^m index and moduli sequence with theorem post-checks
- Resolution shortening below a vanishing class
"""

import logging
from dataclasses import dataclass
from math import gcd

from zp_smith.complex import (
    Chain,
    Cochain,
    apply_d,
    apply_s,
    coboundary,
    unit_cochain,
)
from zp_smith.conf import smith_settings
from zp_smith.linalg import IntMatrix, snf, solve

logger = logging.getLogger("zp_smith")

D_FOLD = "d"
S_FOLD = "s"


class ResolutionError(RuntimeError):
    """A resolution step could not be solved or failed validation."""


class TheoremViolation(RuntimeError):
    """A computed result contradicts a structural theorem (sandwich, moduli shape, torsion)."""


def class_kind(j):
    """d-classes live in even dimensions, s-classes in odd ones."""
    return D_FOLD if j % 2 == 0 else S_FOLD


# ---------------------------------------------------------------------------
# Folded complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FoldedComplex:
    """
    Free complex presenting im s (d-fold) or im d (s-fold) on a fundamental domain.

    d-fold generators are sσ, one per orbit; s-fold generators are d t^k σ for
    k = 0..p-2. `basis[n]` lists generators as (orbit, k) pairs and
    `boundaries[n]` is the folded chain boundary from dimension n to n-1.
    """

    kind: str
    base: object
    basis: dict
    boundaries: dict

    @property
    def p(self):
        return self.base.p

    def rank(self, dim):
        return len(self.basis.get(dim, ()))

    def generator(self, orbit, k=0):
        return orbit if self.kind == D_FOLD else orbit * (self.p - 1) + k

    def boundary(self, dim):
        if dim in self.boundaries:
            return self.boundaries[dim]
        return IntMatrix.zeros(self.rank(dim - 1), self.rank(dim))

    def coboundary(self, dim):
        """Cochain coboundary C^(dim-1) -> C^dim of the non-augmented folded complex."""
        if dim <= 0:
            return IntMatrix.zeros(self.rank(max(dim, 0)), 0)
        return self.boundary(dim).transpose()

    def cochain_coordinates(self, cochain):
        """Coordinates of an invariant (d-fold) or s-annihilated (s-fold) cochain."""
        dim = cochain.dimension
        if dim < 0 or dim > self.base.top_dim:
            return [0] * self.rank(dim)
        table = self.base.orbits(dim)
        values = cochain.coefficients
        if self.kind == D_FOLD:
            return [values.get(rep, 0) for rep in table.reps]
        coords = []
        for row in table.members:
            for k in range(self.p - 1):
                i, sign = row[k]
                coords.append(sign * values.get(i, 0))
        return coords

    def cochain_from_coordinates(self, dim, coords):
        """Invariant cochain (d-fold) or s-annihilated cochain (s-fold) with these coordinates."""
        values = {}
        if dim > self.base.top_dim or not any(coords):
            return Cochain(dim, {})
        table = self.base.orbits(dim)
        p = self.p
        for orbit, row in enumerate(table.members):
            if self.kind == D_FOLD:
                level = [coords[orbit]] * p
            else:
                start = orbit * (p - 1)
                level = list(coords[start : start + p - 1])
                level.append(-sum(level))
            for k, (i, sign) in enumerate(row):
                if level[k]:
                    values[i] = sign * level[k]
        return Cochain(dim, values)

    def chain_from_coordinates(self, dim, coords):
        """Back-map a folded chain: Σ a_σ σ (d-fold) or Σ a_(σ,k) t^k σ (s-fold)."""
        values = {}
        table = self.base.orbits(dim)
        for g, a in enumerate(coords):
            if not a:
                continue
            if self.kind == D_FOLD:
                values[table.reps[g]] = values.get(table.reps[g], 0) + a
            else:
                orbit, k = divmod(g, self.p - 1)
                i, sign = table.members[orbit][k]
                values[i] = values.get(i, 0) + sign * a
        return Chain(dim, values)

    def validate(self):
        for dim in range(1, self.base.top_dim + 1):
            if not (self.boundary(dim - 1) @ self.boundary(dim)).is_zero():
                raise ResolutionError(
                    f"Folded {self.kind}-complex has ∂∘∂ ≠ 0 at dimension {dim}"
                )
        return True

    def __repr__(self):
        ranks = [self.rank(d) for d in range(0, self.base.top_dim + 1)]
        return f"FoldedComplex(kind={self.kind!r}, ranks={ranks})"


def fold(X, kind):
    """
    Fold the d- or s-part of X onto a fundamental domain.

    Args:
        X: FreeZpChainComplex with a free action
        kind: "d" or "s"

    Returns:
        FoldedComplex (cached on X)

    Raises:
        ValueError: If the action is not free or kind is unknown

    Examples:
        >>> fold(to_free_chain_complex(sigma(2)), "d").boundary(0).to_dense()
        [[2]]
    """
    if kind not in (D_FOLD, S_FOLD):
        raise ValueError(f"Unknown fold kind: {kind!r}")
    key = ("fold", kind)
    if key in X._cache:
        return X._cache[key]

    p = X.p
    tables = {dim: X.orbits(dim) for dim in range(0, X.top_dim + 1)}
    basis = {}
    if kind == D_FOLD:
        basis[-1] = ((0, 0),)
        for dim, table in tables.items():
            basis[dim] = tuple((o, 0) for o in range(len(table)))
    else:
        basis[-1] = ()
        for dim, table in tables.items():
            basis[dim] = tuple((o, k) for o in range(len(table)) for k in range(p - 1))

    boundaries = {}
    for dim in range(0, X.top_dim + 1):
        table = tables[dim]
        columns = X.boundary_columns(dim)
        entries = {}
        if dim == 0:
            if kind == D_FOLD:
                # ∂(s v) = p·∅
                for o, rep in enumerate(table.reps):
                    total = sum(columns.row(rep).values()) * p
                    if total:
                        entries[(0, o)] = total
            boundaries[0] = IntMatrix(len(basis[-1]), len(basis[0]), entries)
            continue
        lower = tables[dim - 1]
        for o, rep in enumerate(table.reps):
            face_terms = columns.row(rep)
            if kind == D_FOLD:
                for i, v in face_terms.items():
                    orbit, _, sign = lower.position[i]
                    key_ = (orbit, o)
                    entries[key_] = entries.get(key_, 0) + v * sign
                continue
            for k in range(p - 1):
                col = o * (p - 1) + k
                for i, v in face_terms.items():
                    orbit, a, sign = lower.position[i]
                    r = (k + a) % p
                    if r < p - 1:
                        key_ = (orbit * (p - 1) + r, col)
                        entries[key_] = entries.get(key_, 0) + v * sign
                    else:
                        # d t^(p-1) σ = -Σ_(r<p-1) d t^r σ
                        for r2 in range(p - 1):
                            key_ = (orbit * (p - 1) + r2, col)
                            entries[key_] = entries.get(key_, 0) - v * sign
        boundaries[dim] = IntMatrix(len(basis[dim - 1]), len(basis[dim]), entries)

    folded = FoldedComplex(kind=kind, base=X, basis=basis, boundaries=boundaries)
    X._cache[key] = folded
    return folded


def class_decomposition(X, j):
    """Cached Smith normal form of the folded coboundary into dimension j."""
    key = ("snf", j)
    if key not in X._cache:
        folded = fold(X, class_kind(j))
        X._cache[key] = snf(folded.coboundary(j), inverses=False)
    return X._cache[key]


# ---------------------------------------------------------------------------
# Resolutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Resolution:
    """Cochains ψ_0..ψ_D resolving the unit cocycle on `base`."""

    base: object
    psis: tuple

    def psi(self, j):
        if 0 <= j < len(self.psis):
            return self.psis[j]
        return Cochain(max(j, 0), {})

    def __len__(self):
        return len(self.psis)

    def __repr__(self):
        support = [len(psi.coefficients) for psi in self.psis]
        return f"Resolution(p={self.base.p}, support={support})"


def _solve_orbitwise(X, target, kind):
    """
    Solve dy = target (kind "d") or sy = target (kind "s") orbit by orbit.

    In orbit coordinates f_k = target(t^k σ) the operator d is f_k - f_(k+1) and
    s is the orbit sum, so both have closed-form preimages.
    """
    dim = target.dimension
    if dim > X.top_dim:
        return Cochain(dim, {})
    table = X.orbits(dim)
    values = target.coefficients
    result = {}
    for row in table.members:
        f = [sign * values.get(i, 0) for i, sign in row]
        if not any(f):
            continue
        if kind == D_FOLD:
            if sum(f):
                raise ResolutionError(
                    f"δψ is not in the image of d at dimension {dim} (orbit sum {sum(f)})"
                )
            g = 0
            for k in range(1, len(row)):
                g -= f[k - 1]
                if g:
                    i, sign = row[k]
                    result[i] = sign * g
        else:
            if any(v != f[0] for v in f):
                raise ResolutionError(f"δψ is not t-invariant at dimension {dim}")
            i, sign = row[0]
            result[i] = sign * f[0]
    return Cochain(dim, result)


def build_resolution(X, max_dim=None):
    """
    Build a resolution of the unit cocycle on X.

    ψ_0 is the indicator of the vertex-orbit representatives; each next
    cochain solves dψ_(j+1) = δψ_j (j even) or sψ_(j+1) = δψ_j (j odd).

    Args:
        X: FreeZpChainComplex
        max_dim: Last dimension to resolve; defaults to the top dimension of X

    Returns:
        Resolution

    Raises:
        ResolutionError: If a step has no solution or validation fails

    Examples:
        >>> R = build_resolution(to_free_chain_complex(sigma(2)))
        >>> R.psis[0]
        Cochain(0, {0: 1})
    """
    if max_dim is None:
        max_dim = X.top_dim
    max_dim = min(max_dim, X.top_dim)
    if max_dim < 0:
        return Resolution(base=X, psis=())
    reps = X.orbits(0).reps
    psis = [Cochain(0, {rep: 1 for rep in reps})]
    for j in range(0, max_dim):
        target = coboundary(X, psis[j])
        psis.append(_solve_orbitwise(X, target, D_FOLD if j % 2 == 0 else S_FOLD))
    resolution = Resolution(base=X, psis=tuple(psis))
    if smith_settings.VALIDATE_RESOLUTIONS:
        validate_resolution(resolution)
    return resolution


def validate_resolution(R):
    """
    Check sψ_0 = 1 and the alternating relations δψ_j = dψ_(j+1) / sψ_(j+1).

    Raises:
        ResolutionError: Naming the first failing relation
    """
    X = R.base
    if not R.psis:
        if X.rank(0):
            raise ResolutionError("Empty resolution on a complex with vertices")
        return True
    if apply_s(X, R.psis[0]) != unit_cochain(X):
        raise ResolutionError("sψ_0 is not the unit cochain")
    for j in range(len(R.psis) - 1):
        left = coboundary(X, R.psis[j])
        nxt = R.psis[j + 1]
        right = apply_d(X, nxt) if j % 2 == 0 else apply_s(X, nxt)
        if left != right:
            op = "d" if j % 2 == 0 else "s"
            raise ResolutionError(f"δψ_{j} ≠ {op}ψ_{j + 1}")
    return True


def shorten_resolution(R, at):
    """
    Shorten a resolution below a vanishing class.

    If A^at = 0 over Z, write the class representative as a coboundary in the
    folded complex, subtract the matching cochain from ψ_(at-1) and set
    ψ_j = 0 for j ≥ at.

    Args:
        R: Resolution
        at: Dimension whose class vanishes

    Returns:
        Resolution agreeing with R below at-1

    Raises:
        ValueError: If A^at is nonzero over Z
    """
    X = R.base
    if at < 0:
        raise ValueError(f"Cannot shorten at negative dimension {at}")
    psis = list(R.psis)
    if at >= len(psis):
        return R
    if at == 0:
        if X.rank(0):
            raise ValueError("A^0 is nonzero on a complex with vertices")
        return Resolution(base=X, psis=tuple(Cochain(j, {}) for j in range(len(psis))))

    kind = class_kind(at)
    folded = fold(X, kind)
    representative = _representative(X, psis[at], at)
    coords = folded.cochain_coordinates(representative)
    y = solve(folded.coboundary(at), coords, decomposition=class_decomposition(X, at))
    if y is None:
        raise ValueError(f"A^{at} is nonzero over Z; the resolution cannot be shortened there")
    correction = folded.cochain_from_coordinates(at - 1, y)
    psis[at - 1] = psis[at - 1] - correction
    for j in range(at, len(psis)):
        psis[j] = Cochain(j, {})
    shortened = Resolution(base=X, psis=tuple(psis))
    if smith_settings.VALIDATE_RESOLUTIONS:
        validate_resolution(shortened)
    return shortened


def _representative(X, psi, j):
    return apply_s(X, psi) if j % 2 == 0 else apply_d(X, psi)


def fundamental_representative(X, invariant):
    """
    The fundamental-domain cochain φ with sφ equal to an invariant cochain.

    Raises:
        ValueError: If the cochain is not t-invariant
    """
    if apply_d(X, invariant).coefficients:
        raise ValueError("Cochain is not t-invariant")
    if invariant.dimension > X.top_dim:
        return Cochain(invariant.dimension, {})
    reps = X.orbits(invariant.dimension).reps
    return Cochain(invariant.dimension, {r: invariant[r] for r in reps if invariant[r]})


# ---------------------------------------------------------------------------
# Smith classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithClassReport:
    """
    Status of the Smith class A^j.

    `representative` is sψ_j (d-class) or dψ_j (s-class); `primitive` is ψ_j.
    """

    dimension: int
    parity: str
    representative: Cochain
    primitive: Cochain
    trivial_over_z: bool
    minimal_modulus_exponent: int = None
    certificate: object = None

    @property
    def trivial_mod_p(self):
        return self.trivial_over_z or self.minimal_modulus_exponent > 1

    def trivial_mod(self, exponent):
        """Whether the class vanishes modulo p^exponent."""
        return self.trivial_over_z or self.minimal_modulus_exponent > exponent


@dataclass(frozen=True)
class ModuliSequence:
    """Minimal moduli p^(m_j) for j = 1..I-1."""

    p: int
    exponents: tuple

    @property
    def values(self):
        return tuple(self.p**m for m in self.exponents)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.exponents)


class SmithComputation:
    """
    Smith data of one free Z_p chain complex.

    Holds a resolution (built on demand or supplied, e.g. from a join) and
    answers class, index and moduli queries. Folds and Smith normal forms are
    cached on the complex, so computations sharing a complex share them.

    Example:
        >>> computation = SmithComputation(to_free_chain_complex(example_a(1)))
        >>> computation.index(), computation.index_mod(1)
        (3, 2)
    """

    def __init__(self, X, resolution=None):
        self.X = X
        self._resolution = resolution
        self._reports = {}
        self._class_status = {}

    @property
    def p(self):
        return self.X.p

    @property
    def resolution(self):
        if self._resolution is None:
            key = ("resolution",)
            if key not in self.X._cache:
                self.X._cache[key] = build_resolution(self.X)
            self._resolution = self.X._cache[key]
        return self._resolution

    def representative(self, j):
        return _representative(self.X, self.resolution.psi(j), j)

    def class_coordinates(self, j):
        """Coordinates P·x of the class representative in the Smith basis."""
        if j not in self._class_status:
            folded = fold(self.X, class_kind(j))
            decomposition = class_decomposition(self.X, j)
            x = folded.cochain_coordinates(self.representative(j))
            self._class_status[j] = (decomposition, decomposition.left.apply(x))
        return self._class_status[j]

    def is_trivial(self, j, modulus=None):
        """Whether A^j vanishes over Z (modulus None) or modulo `modulus`."""
        if j < 0 or j > self.X.top_dim:
            return True
        decomposition, coords = self.class_coordinates(j)
        diagonal = decomposition.diagonal
        for i, n in enumerate(coords):
            if not n:
                continue
            s = diagonal[i] if i < len(diagonal) else 0
            if modulus is None:
                if s == 0 or n % s:
                    return False
            elif n % gcd(s, modulus):
                return False
        return True

    def minimal_modulus_exponent(self, j):
        """Smallest m with A^j ≠ 0 mod p^m, or None if A^j = 0 over Z."""
        if self.is_trivial(j):
            return None
        cap = smith_settings.MAX_MODULUS_EXPONENT
        for m in range(1, cap + 1):
            if not self.is_trivial(j, self.p**m):
                return m
        logger.error("modulus_scan_cap", extra={"dimension": j, "cap": cap})
        raise TheoremViolation(f"A^{j} stays zero modulo {self.p}^m for all m ≤ {cap}")

    def smith_class(self, j, certificate=None):
        """
        Report on the Smith class A^j.

        Args:
            j: Dimension
            certificate: Attach a certificate; defaults to ATTACH_CERTIFICATES

        Returns:
            SmithClassReport
        """
        if certificate is None:
            certificate = smith_settings.ATTACH_CERTIFICATES
        cached = self._reports.get(j)
        if cached is not None and (cached.certificate is not None or not certificate):
            return cached
        if cached is None:
            trivial = self.is_trivial(j)
            cached = SmithClassReport(
                dimension=j,
                parity=class_kind(j),
                representative=self.representative(j),
                primitive=self.resolution.psi(j),
                trivial_over_z=trivial,
                minimal_modulus_exponent=None if trivial else self.minimal_modulus_exponent(j),
            )
        report = cached
        if certificate and not report.trivial_over_z and report.certificate is None:
            from zp_smith.certificates import find_certificate

            modulus = self.p**report.minimal_modulus_exponent
            found = find_certificate(self.X, report, modulus)
            report = SmithClassReport(
                dimension=j,
                parity=report.parity,
                representative=report.representative,
                primitive=report.primitive,
                trivial_over_z=False,
                minimal_modulus_exponent=report.minimal_modulus_exponent,
                certificate=found,
            )
        self._reports[j] = report
        if smith_settings.AUDIT_COMPUTATIONS:
            logger.info(
                "smith_class",
                extra={
                    "dimension": j,
                    "parity": report.parity,
                    "trivial_over_z": report.trivial_over_z,
                    "minimal_modulus_exponent": report.minimal_modulus_exponent,
                },
            )
        return report

    def index(self):
        """Smith index I: smallest n with A^n = 0 over Z."""
        j = 0
        while not self.is_trivial(j):
            j += 1
        index = j
        index_p = self.index_mod(1)
        if not index - 1 <= index_p <= index:
            logger.error("sandwich_violation", extra={"index": index, "index_p": index_p})
            raise TheoremViolation(f"I - 1 ≤ I_p ≤ I fails with I = {index}, I_p = {index_p}")
        return index

    def index_mod(self, exponent):
        """Smallest n with A^n = 0 modulo p^exponent."""
        if exponent < 1:
            raise ValueError(f"Modulus exponent must be positive, got {exponent}")
        modulus = self.p**exponent
        j = 0
        while not self.is_trivial(j, modulus):
            j += 1
        return j

    def moduli(self):
        """
        Moduli sequence p^(m_1), ..., p^(m_(I-1)).

        Raises:
            TheoremViolation: If the sequence does not have the shape p, ..., p, p^m
        """
        index = self.index()
        exponents = tuple(self.minimal_modulus_exponent(j) for j in range(1, index))
        if any(m != 1 for m in exponents[:-1]):
            logger.error("moduli_shape_violation", extra={"exponents": exponents})
            raise TheoremViolation(
                f"Only the top class may vanish mod {self.p}, got exponents {list(exponents)}"
            )
        return ModuliSequence(p=self.p, exponents=exponents)

    def check_torsion(self, j):
        """
        Check that p·A^j is a coboundary (j ≥ 1).

        Raises:
            TheoremViolation: If p times the representative is not a coboundary
        """
        if j < 1 or j > self.X.top_dim:
            return True
        decomposition, coords = self.class_coordinates(j)
        diagonal = decomposition.diagonal
        for i, n in enumerate(coords):
            s = diagonal[i] if i < len(diagonal) else 0
            if n and (s == 0 or (self.p * n) % s):
                raise TheoremViolation(f"p·A^{j} is not a coboundary")
        return True

    def reports(self, max_dim=None, certificate=None):
        """Class reports for dimensions 0..max_dim (default: through the index)."""
        if max_dim is None:
            max_dim = self.index()
        return [self.smith_class(j, certificate=certificate) for j in range(0, max_dim + 1)]


def smith_class(X, j, resolution=None):
    """Report on A^j of X (see SmithComputation.smith_class)."""
    return SmithComputation(X, resolution).smith_class(j)


def smith_index(X, resolution=None):
    """
    Smith index of X.

    Examples:
        >>> smith_index(to_free_chain_complex(sphere(2)))
        3
    """
    return SmithComputation(X, resolution).index()


def smith_index_mod(X, exponent=1, resolution=None):
    """Smith index of X computed modulo p^exponent."""
    return SmithComputation(X, resolution).index_mod(exponent)


def moduli_sequence(X, resolution=None):
    """Moduli sequence of X."""
    return SmithComputation(X, resolution).moduli()
