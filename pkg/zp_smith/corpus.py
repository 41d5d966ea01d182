"""
ZP-Smith Corpus

Named builders for the complexes used throughout the package: spheres,
skeleta, Melikhov complexes and the two Möbius-tower Z_2-complexes.

Features:
- Σ_p, antipodal spheres and (2n+2)-simplex skeleta
- Melikhov complexes in every dimension n ≥ 2, one top simplex reattached by degree 2^h
- Example complexes with antipodal Möbius towers and swapped tubes
- CORPUS registry with parameter checks and `build(name, **params)`
"""

import logging
from itertools import combinations

from sympy import isprime

from zp_smith.complex import build_complex, make_zp_complex
from zp_smith.joins import join

logger = logging.getLogger("zp_smith")


class _Vertices:
    """Name -> index registry used while writing down a complex by hand."""

    def __init__(self):
        self.names = []
        self.index = {}

    def __call__(self, name):
        if name not in self.index:
            self.index[name] = len(self.names)
            self.names.append(name)
        return self.index[name]

    def cycle(self, prefix, length):
        return [self(f"{prefix}{i}") for i in range(length)]


def annulus(outer, inner):
    """
    Triangulated annulus between two vertex cycles.

    Walks both cycles at once, advancing whichever lags behind, so the
    result has len(outer) + len(inner) triangles.
    """
    n, m = len(outer), len(inner)
    i = j = 0
    triangles = []
    while i < n or j < m:
        if j == m or (i < n and (i + 1) * m <= (j + 1) * n):
            triangles.append((outer[i % n], outer[(i + 1) % n], inner[j % m]))
            i += 1
        else:
            triangles.append((outer[i % n], inner[j % m], inner[(j + 1) % m]))
            j += 1
    return triangles


def mobius_level(outer, inner):
    """
    Mapping cylinder of the double cover from a 2L-cycle onto an L-cycle.

    Glued along `inner`, this is a Möbius band whose boundary is `outer`.
    """
    length = len(inner)
    if len(outer) != 2 * length:
        raise ValueError(f"Möbius level needs a {2 * length}-cycle over a {length}-cycle")
    triangles = []
    for i in range(len(outer)):
        x, x_next = outer[i], outer[(i + 1) % len(outer)]
        y, y_next = inner[i % length], inner[(i + 1) % length]
        triangles.append((x, x_next, y))
        triangles.append((x_next, y, y_next))
    return triangles


def _cone(cycle, apex):
    return [(cycle[i], cycle[(i + 1) % len(cycle)], apex) for i in range(len(cycle))]


def _tower(vertices, base, height, prefix):
    """Möbius tower of the given height over `base`, capped by a cone."""
    triangles = []
    current = base
    for level in range(1, height + 1):
        outer = vertices.cycle(f"{prefix}{level}_", 2 * len(current))
        triangles += mobius_level(outer, current)
        current = outer
    triangles += _cone(current, vertices(f"{prefix}apex"))
    return triangles


def _mapping_cylinder(facets, image):
    """
    Staircase triangulation of the mapping cylinder of a simplicial map.

    `image` sends each vertex of the source facets to the target. Vertices are
    ordered by index, and a facet (a_0 < ... < a_k) contributes the simplices
    (a_0, ..., a_i, f(a_i), ..., f(a_k)). The map must be injective on every
    simplex and the lowest vertex of a source simplex must determine the lift
    of the rest.
    """
    simplices = []
    for facet in facets:
        ordered = sorted(facet)
        for i in range(len(ordered)):
            simplices.append(tuple(ordered[: i + 1]) + tuple(image[v] for v in ordered[i:]))
    return simplices


def _stellar(facets, face, apex):
    """Stellar subdivision of a pure complex at `face`."""
    face = set(face)
    result = []
    for facet in facets:
        if not face <= set(facet):
            result.append(tuple(facet))
            continue
        others = tuple(v for v in facet if v not in face)
        for dropped in sorted(face):
            result.append(tuple(sorted(face - {dropped})) + others + (apex,))
    return result


def _cycle_join_sphere(cycle, sphere_vertices):
    """Facets of a cycle joined with the boundary of the simplex on `sphere_vertices`."""
    ridge = [()]
    if sphere_vertices:
        ridge = list(combinations(sphere_vertices, len(sphere_vertices) - 1))
    edges = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    return [edge + face for edge in edges for face in ridge]


def _check_height(h):
    if not isinstance(h, int) or h < 1:
        raise ValueError(f"Tower height must be a positive integer, got {h!r}")


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def sigma(p):
    """
    Σ_p: p isolated vertices permuted cyclically.

    Examples:
        >>> sigma(3).action
        (1, 2, 0)
    """
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    return make_zp_complex([[v] for v in range(p)], p, [(v + 1) % p for v in range(p)])


def sphere(k):
    """
    Antipodal k-sphere, the join of k + 1 copies of S^0.

    Vertex pairs (2i, 2i + 1) are swapped by the action.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"Sphere dimension must be a non-negative integer, got {k!r}")
    result = sigma(2)
    for _ in range(k):
        result = join(result, sigma(2)).result
    return result


def skeleton(n):
    """
    The n-skeleton of the (2n+2)-simplex (no Z_p action).

    skeleton(1) is the complete graph K_5; skeleton(n) does not embed in R^(2n).
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"Skeleton dimension must be a non-negative integer, got {n!r}")
    return build_complex(combinations(range(2 * n + 3), n + 1), vertex_count=2 * n + 3)


def melikhov(n=2, h=1):
    """
    Melikhov complex: skeleton(n) with one top simplex reattached by degree 2^h.

    The simplex (0, ..., n) is removed. A collar joins its boundary to an inner
    copy, stellar subdivided at the face (0', 1', 2') so that the inner sphere
    is a triangle joined with an (n-3)-sphere. A tower of h degree-2 maps
    (the double cover of the cycle joined with the identity) hangs from that
    sphere and a cone caps the top level.

    Args:
        n: Dimension ≥ 2
        h: Tower height ≥ 1

    Raises:
        ValueError: For n < 2 or a bad height

    Examples:
        >>> melikhov(2, 1).vertex_count
        17
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"Melikhov complexes need an integer n ≥ 2, got {n!r}")
    _check_height(h)
    vertices = _Vertices()
    for v in range(2 * n + 3):
        vertices(str(v))
    removed = tuple(range(n + 1))
    facets = [f for f in combinations(range(2 * n + 3), n + 1) if f != removed]

    inner = {v: vertices(f"{v}'") for v in removed}
    collar = _mapping_cylinder(combinations(removed, n), inner)
    cycle = [inner[0], inner[1], inner[2]]
    rest = [inner[v] for v in removed[3:]]
    if n > 2:
        w = vertices("w")
        collar = _stellar(collar, cycle, w)
        rest.append(w)
    facets += collar

    for level in range(1, h + 1):
        outer = vertices.cycle(f"x{level}_", 2 * len(cycle))
        copies = [vertices(f"q{level}_{i}") for i in range(len(rest))]
        image = {v: cycle[i % len(cycle)] for i, v in enumerate(outer)}
        image.update(zip(copies, rest))
        facets += _mapping_cylinder(_cycle_join_sphere(outer, copies), image)
        cycle, rest = outer, copies
    apex = vertices("apex")
    facets += [f + (apex,) for f in _cycle_join_sphere(cycle, rest)]
    return build_complex(facets, vertex_count=len(vertices.names), names=vertices.names)


def example_a(h=1):
    """
    Antipodal hexagon with two swapped Möbius towers of height h.

    Each tower is a sequence of Möbius bands over the hexagon, capped by a
    disk; the action rotates the hexagon by three steps and exchanges the
    towers. Height 1 has 32 vertices, Smith index 3 and moduli (2, 4).
    """
    _check_height(h)
    vertices = _Vertices()
    hexagon = vertices.cycle("c", 6)
    facets = []
    for prefix in ("x", "y"):
        facets += _tower(vertices, hexagon, h, prefix)

    action = [0] * len(vertices.names)
    for i in range(6):
        action[hexagon[i]] = hexagon[(i + 3) % 6]
    for level in range(1, h + 1):
        length = 6 * 2**level
        for i in range(length):
            x = vertices.index[f"x{level}_{i}"]
            y = vertices.index[f"y{level}_{i}"]
            action[x] = vertices.index[f"y{level}_{(i + 3) % length}"]
            action[y] = vertices.index[f"x{level}_{(i - 3) % length}"]
    action[vertices.index["xapex"]] = vertices.index["yapex"]
    action[vertices.index["yapex"]] = vertices.index["xapex"]
    return make_zp_complex(facets, 2, action, names=vertices.names)


def example_b():
    """
    Antipodal 2-sphere with two antipodal pairs of holes joined by swapped tubes.

    Each hemisphere is cut into two hexagons with one hole each; a tube runs
    from a hole in the upper hemisphere to the antipode of the other one, with
    reversed orientation. Its 2-dimensional Smith class is nonzero modulo 2.
    """
    vertices = _Vertices()
    e = vertices.cycle("e", 6)

    def half(prime):
        m = [vertices(f"m{i}{prime}") for i in (1, 2)]
        a = [vertices(f"a{i}{prime}") for i in range(3)]
        b = [vertices(f"b{i}{prime}") for i in range(3)]
        r = [vertices(f"r{i}{prime}") for i in range(3)]
        return m, a, b, r

    (m1, m2), a, b, r = half("")
    _, a_, b_, r_ = half("'")

    upper = annulus([e[1], e[2], e[3], e[4], m2, m1], a)
    upper += annulus([e[4], e[5], e[0], e[1], m1, m2], b)
    tube = annulus(a, r) + annulus(r, [b_[0], b_[2], b_[1]])

    names = vertices.names
    action = [0] * len(names)
    for i in range(6):
        action[e[i]] = e[(i + 3) % 6]
    for name, v in vertices.index.items():
        if name.startswith("e"):
            continue
        partner = name[:-1] if name.endswith("'") else name + "'"
        action[v] = vertices.index[partner]

    facets = upper + tube
    facets += [tuple(action[v] for v in f) for f in facets]
    return make_zp_complex(facets, 2, action, names=names)


CORPUS = {
    "sigma": (sigma, {"p": "prime"}),
    "sphere": (sphere, {"k": "integer ≥ 0"}),
    "skeleton": (skeleton, {"n": "integer ≥ 0"}),
    "melikhov": (melikhov, {"n": "integer ≥ 2", "h": "integer ≥ 1"}),
    "example_a": (example_a, {"h": "integer ≥ 1"}),
    "example_b": (example_b, {}),
}


def build(name, **params):
    """
    Build a corpus complex by name.

    Args:
        name: Key of CORPUS
        **params: Builder parameters

    Returns:
        ZpComplex or SimplicialComplex

    Raises:
        ValueError: On an unknown name, unknown parameters or out-of-range values

    Examples:
        >>> build("sphere", k=1).complex.count(1)
        4
    """
    if name not in CORPUS:
        raise ValueError(f"Unknown corpus complex: {name!r}; choose from {sorted(CORPUS)}")
    builder, accepted = CORPUS[name]
    unknown = set(params) - set(accepted)
    if unknown:
        raise ValueError(f"{name} does not take parameters {sorted(unknown)}")
    logger.debug("corpus_build", extra={"complex": name, "params": params})
    return builder(**params)
