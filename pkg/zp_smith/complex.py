"""
ZP-Smith Complexes

Augmented simplicial complexes, Z_p-actions, their free chain complexes,
and the operators t, d, s and s_q on chains and cochains.

Features:
- Face-closed simplicial complexes with the standard vertex-order orientation
- Validation of simplicial, order-p, simple actions
- Free Z_p chain complexes with a signed basis action (simplicial and cellular)
- Orbit tables and exact chain/cochain arithmetic
"""

import logging
from dataclasses import dataclass, field

from sympy import isprime

from zp_smith.linalg import IntMatrix
from zp_smith.response import SmithResponse

logger = logging.getLogger("zp_smith")

EMPTY = ()


# ---------------------------------------------------------------------------
# Simplicial complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """
    Augmented simplicial complex on vertices 0..vertex_count-1.

    `simplices` maps each dimension -1..D to the lexicographically sorted
    tuple of strictly increasing vertex tuples; dimension -1 holds ∅.
    """

    vertex_count: int
    simplices: dict
    names: tuple = None

    @property
    def dimension(self):
        return max(self.simplices)

    def count(self, dim):
        return len(self.simplices.get(dim, ()))

    def all_simplices(self):
        for dim in sorted(self.simplices):
            yield from self.simplices[dim]

    def __contains__(self, simplex):
        return tuple(simplex) in self._lookup

    @property
    def _lookup(self):
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = frozenset(self.all_simplices())
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    @property
    def facets(self):
        """Maximal simplices in dimension order."""
        covered = set()
        for dim in range(1, self.dimension + 1):
            for simplex in self.simplices[dim]:
                covered.update(face for face, _ in simplex_boundary(simplex))
        return [
            simplex
            for dim in range(0, self.dimension + 1)
            for simplex in self.simplices[dim]
            if simplex not in covered
        ]

    def vertex_name(self, v):
        return self.names[v] if self.names else str(v)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.simplices == other.simplices

    def __hash__(self):
        return hash((self.vertex_count, tuple(self.all_simplices())))

    def __repr__(self):
        counts = [self.count(d) for d in range(0, self.dimension + 1)]
        return f"SimplicialComplex(vertices={self.vertex_count}, counts={counts})"


def build_complex(facets, vertex_count=None, names=None):
    """
    Build the downward closure of a list of facets.

    Args:
        facets: Iterable of vertex tuples
        vertex_count: Number of vertices; defaults to 1 + largest vertex used
        names: Optional vertex names (one per vertex)

    Returns:
        SimplicialComplex with ∅ in dimension -1

    Raises:
        ValueError: On repeated vertices inside a facet or vertices out of range

    Examples:
        >>> build_complex([[0, 1]]).simplices
        {-1: ((),), 0: ((0,), (1,)), 1: ((0, 1),)}
    """
    by_dim = {}
    largest = -1
    for facet in facets:
        simplex = tuple(sorted(int(v) for v in facet))
        if len(set(simplex)) != len(simplex):
            raise ValueError(f"Facet {list(facet)} repeats a vertex")
        if simplex and simplex[0] < 0:
            raise ValueError(f"Facet {list(facet)} uses a negative vertex index")
        if simplex:
            largest = max(largest, simplex[-1])
        by_dim.setdefault(len(simplex) - 1, set()).add(simplex)

    if vertex_count is None:
        vertex_count = largest + 1
    elif largest >= vertex_count:
        raise ValueError(f"Vertex {largest} out of range for {vertex_count} vertices")
    if names is not None:
        names = tuple(str(n) for n in names)
        if len(names) != vertex_count:
            raise ValueError(f"Got {len(names)} vertex names for {vertex_count} vertices")
        if len(set(names)) != len(names):
            raise ValueError("Vertex names must be distinct")

    top = max(by_dim) if by_dim else -1
    for dim in range(top, 0, -1):
        faces = by_dim.setdefault(dim - 1, set())
        for simplex in by_dim.get(dim, ()):
            for i in range(len(simplex)):
                faces.add(simplex[:i] + simplex[i + 1 :])
    by_dim[-1] = {EMPTY}
    # isolated vertices still count
    by_dim.setdefault(0, set()).update((v,) for v in range(vertex_count))
    simplices = {dim: tuple(sorted(by_dim.get(dim, ()))) for dim in range(-1, max(top, 0) + 1)}
    if not simplices[0]:
        simplices = {-1: (EMPTY,)} if top < 0 else simplices
    return SimplicialComplex(vertex_count=vertex_count, simplices=simplices, names=names)


def simplex_boundary(simplex):
    """Yield (face, sign) of the simplicial boundary; a vertex has boundary ∅."""
    for i in range(len(simplex)):
        yield simplex[:i] + simplex[i + 1 :], (-1) ** i


def sort_with_sign(vertices):
    """Sort a vertex tuple, returning (sorted tuple, sign of the sorting permutation)."""
    items = list(vertices)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return tuple(items), sign


@dataclass(frozen=True, eq=False)
class ZpComplex:
    """Simplicial complex with an order-p vertex permutation (the pair (K, t))."""

    complex: SimplicialComplex
    p: int
    action: tuple

    def act(self, simplex, k=1):
        """Apply t^k to an oriented simplex; returns (sorted simplex, sign)."""
        image = tuple(simplex)
        for _ in range(k % self.p):
            image = tuple(self.action[v] for v in image)
        return sort_with_sign(image)

    @property
    def dimension(self):
        return self.complex.dimension

    def __repr__(self):
        return f"ZpComplex(p={self.p}, {self.complex!r})"


def make_zp_complex(facets, p, action, names=None):
    """Build and validate a ZpComplex from facets and a vertex permutation."""
    complex_ = build_complex(facets, vertex_count=len(action), names=names)
    K = ZpComplex(complex=complex_, p=p, action=tuple(int(v) for v in action))
    report = validate_zp(K)
    if not report.success:
        raise ValueError(report.error_message)
    return K


def validate_zp(K):
    """
    Check every ZpComplex invariant.

    Args:
        K: ZpComplex

    Returns:
        SmithResponse.ok() or an INVALID_COMPLEX error naming the first
        violating simplex and power

    Examples:
        >>> validate_zp(make_zp_complex([[0], [1]], 2, [1, 0])).success
        True
    """
    p, action, complex_ = K.p, K.action, K.complex
    n = complex_.vertex_count

    if not isprime(p):
        return SmithResponse.error("INVALID_COMPLEX", f"p = {p} is not prime")
    if len(action) != n or sorted(action) != list(range(n)):
        return SmithResponse.error(
            "INVALID_COMPLEX", f"action {list(action)} is not a permutation of {n} vertices"
        )
    for v in range(n):
        image = v
        for _ in range(p):
            image = action[image]
        if image != v:
            return SmithResponse.error(
                "INVALID_COMPLEX", f"t^{p} moves vertex {v}", simplex=[v], power=p
            )
    for simplex in complex_.all_simplices():
        image, _ = K.act(simplex)
        if image not in complex_:
            return SmithResponse.error(
                "INVALID_COMPLEX",
                f"t maps simplex {list(simplex)} to {list(image)}, which is not in the complex",
                simplex=list(simplex),
                power=1,
            )
    for simplex in complex_.all_simplices():
        if not simplex:
            continue
        for k in range(1, p):
            if K.act(simplex, k)[0] == simplex:
                return SmithResponse.error(
                    "INVALID_COMPLEX",
                    f"simplex {list(simplex)} is fixed by t^{k}",
                    simplex=list(simplex),
                    power=k,
                )
    return SmithResponse.ok()


# ---------------------------------------------------------------------------
# Free Z_p chain complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitTable:
    """
    Orbit data for one dimension.

    `reps[o]` is the least basis index of orbit o; `position[i] = (o, k, sign)`
    means basis element i equals sign·t^k(rep of o); `members[o][k] = (i, sign)`
    is the inverse lookup.
    """

    reps: tuple
    position: tuple
    members: tuple

    def __len__(self):
        return len(self.reps)


@dataclass(frozen=True, eq=False)
class FreeZpChainComplex:
    """
    Augmented free chain complex with a signed order-p basis action.

    `labels[n]` lists basis labels in dimensions -1..top_dim; `boundaries[n]`
    is the matrix of ∂_n (rows: dimension n-1, columns: dimension n);
    `actions[n][i] = (j, sign)` means t e_i = sign·e_j.
    """

    p: int
    top_dim: int
    labels: dict
    boundaries: dict
    actions: dict
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def rank(self, dim):
        return len(self.labels.get(dim, ()))

    def index_of(self, dim, label):
        key = ("index", dim)
        if key not in self._cache:
            self._cache[key] = {lab: i for i, lab in enumerate(self.labels.get(dim, ()))}
        return self._cache[key][label]

    def boundary_matrix(self, dim):
        """∂_dim as an IntMatrix; zero outside the stored range."""
        if dim in self.boundaries:
            return self.boundaries[dim]
        return IntMatrix.zeros(self.rank(dim - 1), self.rank(dim))

    def boundary_columns(self, dim):
        key = ("columns", dim)
        if key not in self._cache:
            self._cache[key] = self.boundary_matrix(dim).transpose()
        return self._cache[key]

    def action_power(self, dim, k):
        """Signed permutation of t^k in dimension dim, as a tuple of (target, sign)."""
        k %= self.p
        key = ("power", dim, k)
        if key not in self._cache:
            size = self.rank(dim)
            if k == 0:
                power = tuple((i, 1) for i in range(size))
            else:
                step = self.actions[dim]
                previous = self.action_power(dim, k - 1)
                power = tuple(
                    (step[j][0], sign * step[j][1]) for j, sign in previous
                )
            self._cache[key] = power
        return self._cache[key]

    def action_inverse(self, dim, k):
        """For t^k: maps target j to (source i, sign)."""
        k %= self.p
        key = ("inverse", dim, k)
        if key not in self._cache:
            inverse = [None] * self.rank(dim)
            for i, (j, sign) in enumerate(self.action_power(dim, k)):
                inverse[j] = (i, sign)
            self._cache[key] = tuple(inverse)
        return self._cache[key]

    def orbits(self, dim):
        """
        Orbit table of the basis in dimension dim ≥ 0.

        Raises:
            ValueError: If the action is not free on this basis
        """
        key = ("orbits", dim)
        if key in self._cache:
            return self._cache[key]
        if dim < 0:
            raise ValueError("The augmentation dimension carries no free action")
        p = self.p
        step = self.actions.get(dim, ())
        size = self.rank(dim)
        position = [None] * size
        reps = []
        members = []
        for start in range(size):
            if position[start] is not None:
                continue
            orbit = len(reps)
            reps.append(start)
            row = []
            current, sign = start, 1
            for k in range(p):
                if position[current] is not None:
                    raise ValueError(
                        f"Action is not free in dimension {dim}: "
                        f"basis element {self.labels[dim][current]!r} repeats under t^{k}"
                    )
                position[current] = (orbit, k, sign)
                row.append((current, sign))
                target, step_sign = step[current]
                current, sign = target, sign * step_sign
            if (current, sign) != (start, 1):
                raise ValueError(
                    f"t^{p} is not the identity on {self.labels[dim][start]!r} in dimension {dim}"
                )
            members.append(tuple(row))
        table = OrbitTable(reps=tuple(reps), position=tuple(position), members=tuple(members))
        self._cache[key] = table
        return table

    def validate(self):
        """
        Check ∂∘∂ = 0, freeness, t^p = id and ∂t = t∂.

        Raises:
            ValueError: Naming the first failed invariant
        """
        if not isprime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        for dim in range(0, self.top_dim + 1):
            matrix = self.boundary_matrix(dim)
            if matrix.shape != (self.rank(dim - 1), self.rank(dim)):
                raise ValueError(f"Boundary matrix in dimension {dim} has shape {matrix.shape}")
        for dim in range(1, self.top_dim + 1):
            if not (self.boundary_matrix(dim - 1) @ self.boundary_matrix(dim)).is_zero():
                raise ValueError(f"∂∘∂ ≠ 0 from dimension {dim}")
        for dim in range(-1, self.top_dim + 1):
            step = self.actions.get(dim)
            if step is None or len(step) != self.rank(dim):
                raise ValueError(f"Action missing or incomplete in dimension {dim}")
            if sorted(j for j, _ in step) != list(range(self.rank(dim))):
                raise ValueError(f"Action is not a permutation in dimension {dim}")
            if dim >= 0:
                self.orbits(dim)
        for dim in range(0, self.top_dim + 1):
            for i in range(self.rank(dim)):
                e = Chain(dim, {i: 1})
                if boundary(self, apply_t(self, e)) != apply_t(self, boundary(self, e)):
                    raise ValueError(
                        f"Action does not commute with ∂ on {self.labels[dim][i]!r}"
                    )
        return True

    def chain_from_labels(self, dim, coefficients):
        return Chain(dim, {self.index_of(dim, lab): c for lab, c in coefficients.items()})

    def labeled(self, x):
        """Coefficient list [(label, value), ...] in basis order."""
        names = self.labels.get(x.dimension, ())
        return [(names[i], v) for i, v in sorted(x.coefficients.items())]

    def __repr__(self):
        ranks = [self.rank(d) for d in range(-1, self.top_dim + 1)]
        return f"FreeZpChainComplex(p={self.p}, ranks={ranks})"


def to_free_chain_complex(K):
    """
    Chain complex of a ZpComplex with its signed basis action.

    Args:
        K: ZpComplex (validated here)

    Returns:
        FreeZpChainComplex with simplex tuples as labels

    Raises:
        ValueError: If K violates a ZpComplex invariant

    Examples:
        >>> K = make_zp_complex([[0, 1], [1, 2], [2, 3], [0, 3]], 2, [2, 3, 0, 1])
        >>> X = to_free_chain_complex(K)
        >>> X.actions[1][X.index_of(1, (1, 2))]
        (1, -1)
    """
    report = validate_zp(K)
    if not report.success:
        raise ValueError(report.error_message)
    complex_ = K.complex
    top = complex_.dimension
    labels = {dim: complex_.simplices.get(dim, ()) for dim in range(-1, top + 1)}
    index = {dim: {s: i for i, s in enumerate(labels[dim])} for dim in labels}
    boundaries = {}
    actions = {}
    for dim in range(-1, top + 1):
        step = []
        for simplex in labels[dim]:
            image, sign = K.act(simplex)
            step.append((index[dim][image], sign))
        actions[dim] = tuple(step)
        if dim < 0:
            continue
        entries = {}
        for col, simplex in enumerate(labels[dim]):
            for face, sign in simplex_boundary(simplex):
                entries[(index[dim - 1][face], col)] = sign
        boundaries[dim] = IntMatrix(len(labels[dim - 1]), len(labels[dim]), entries)
    return FreeZpChainComplex(
        p=K.p, top_dim=top, labels=labels, boundaries=boundaries, actions=actions
    )


# ---------------------------------------------------------------------------
# Chains and cochains
# ---------------------------------------------------------------------------


class _Element:
    """Sparse integer combination of basis elements in one dimension."""

    __slots__ = ("dimension", "coefficients")

    def __init__(self, dimension, coefficients=None):
        if dimension < -1:
            raise ValueError(f"Dimension must be at least -1, got {dimension}")
        self.dimension = dimension
        self.coefficients = {int(k): int(v) for k, v in (coefficients or {}).items() if v}

    def _new(self, coefficients):
        element = type(self).__new__(type(self))
        element.dimension = self.dimension
        element.coefficients = coefficients
        return element

    def _check(self, other):
        if type(other) is not type(self) or other.dimension != self.dimension:
            raise ValueError(
                f"Cannot combine {type(self).__name__} of dimension {self.dimension} "
                f"with {type(other).__name__} of dimension {other.dimension}"
            )

    def __add__(self, other):
        self._check(other)
        result = dict(self.coefficients)
        for k, v in other.coefficients.items():
            total = result.get(k, 0) + v
            if total:
                result[k] = total
            else:
                result.pop(k, None)
        return self._new(result)

    def __neg__(self):
        return self._new({k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, factor):
        if not factor:
            return self._new({})
        return self._new({k: factor * v for k, v in self.coefficients.items()})

    def reduce(self, modulus):
        """Coefficients reduced into 0..modulus-1."""
        return self._new(
            {k: v % modulus for k, v in self.coefficients.items() if v % modulus}
        )

    def is_zero(self, modulus=None):
        if modulus is None:
            return not self.coefficients
        return all(v % modulus == 0 for v in self.coefficients.values())

    def __getitem__(self, index):
        return self.coefficients.get(index, 0)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.dimension == other.dimension and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((type(self).__name__, self.dimension, frozenset(self.coefficients.items())))

    def __repr__(self):
        terms = ", ".join(f"{k}: {v}" for k, v in sorted(self.coefficients.items()))
        return f"{type(self).__name__}({self.dimension}, {{{terms}}})"


class Chain(_Element):
    """Chain: basis index -> integer coefficient."""

    __slots__ = ()


class Cochain(_Element):
    """Cochain: basis index -> value on that basis element."""

    __slots__ = ()


def apply_t(X, x, k=1):
    """
    Apply t^k to a chain or cochain on X.

    Chains: t e_i = sign·e_j. Cochains: (tφ)(e) = φ(t e).
    """
    k %= X.p
    if k == 0 or not x.coefficients:
        return x._new(dict(x.coefficients))
    result = {}
    if isinstance(x, Chain):
        power = X.action_power(x.dimension, k)
        for i, c in x.coefficients.items():
            j, sign = power[i]
            result[j] = sign * c
    else:
        inverse = X.action_inverse(x.dimension, k)
        for j, c in x.coefficients.items():
            i, sign = inverse[j]
            result[i] = sign * c
    return x._new(result)


def apply_sq(X, x, q):
    """s_q x = (1 + t + ... + t^q) x for 0 ≤ q ≤ p."""
    if not 0 <= q <= X.p:
        raise ValueError(f"s_q needs 0 ≤ q ≤ p = {X.p}, got q = {q}")
    result = {}
    for r in range(q + 1):
        for i, c in apply_t(X, x, r).coefficients.items():
            total = result.get(i, 0) + c
            if total:
                result[i] = total
            else:
                result.pop(i, None)
    return x._new(result)


def apply_s(X, x):
    """s = 1 + t + ... + t^(p-1)."""
    return apply_sq(X, x, X.p - 1)


def apply_d(X, x):
    """d = 1 - t."""
    return x - apply_t(X, x)


def boundary(X, chain):
    """∂ of a chain; the boundary of a vertex lands on ∅."""
    dim = chain.dimension
    if dim < 0 or dim > X.top_dim:
        return Chain(max(dim - 1, -1), {})
    columns = X.boundary_columns(dim)
    result = {}
    for j, c in chain.coefficients.items():
        for i, v in columns.row(j).items():
            result[i] = result.get(i, 0) + v * c
    return Chain(dim - 1, result)


def coboundary(X, cochain):
    """δφ = φ∘∂; zero above the top dimension."""
    dim = cochain.dimension
    if dim >= X.top_dim:
        return Cochain(dim + 1, {})
    matrix = X.boundary_matrix(dim + 1)
    result = {}
    for i, c in cochain.coefficients.items():
        for j, v in matrix.row(i).items():
            result[j] = result.get(j, 0) + v * c
    return Cochain(dim + 1, result)


def evaluate(cochain, chain):
    """φ(c) for a cochain and a chain of the same dimension."""
    if cochain.dimension != chain.dimension:
        raise ValueError(
            f"Cannot evaluate a {cochain.dimension}-cochain on a {chain.dimension}-chain"
        )
    small, large = cochain.coefficients, chain.coefficients
    if len(small) > len(large):
        small, large = large, small
    return sum(v * large.get(i, 0) for i, v in small.items())


def unit_cochain(X):
    """The cochain 1 with value 1 on every vertex."""
    return Cochain(0, {i: 1 for i in range(X.rank(0))})
