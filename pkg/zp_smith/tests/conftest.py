"""
Pytest configuration for zp-smith tests.
"""

import os
import random
import sys

import pytest

# Add the project root to the path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))


def pytest_configure():
    """Configure Django settings before tests run."""
    from django.conf import settings

    if not settings.configured:
        settings.configure(
            SECRET_KEY="test-secret-key",
            DEBUG=True,
            INSTALLED_APPS=[],
            ZP_SMITH={
                "MAX_MODULUS_EXPONENT": 64,
                "VALIDATE_RESOLUTIONS": True,
                "ATTACH_CERTIFICATES": True,
            },
        )

    import django

    django.setup()


@pytest.fixture(autouse=True)
def restore_settings():
    """Undo ZP_SMITH changes made by a test (the CLI writes its flags there)."""
    from django.conf import settings

    from zp_smith.conf import smith_settings

    saved = dict(settings.ZP_SMITH)
    yield
    settings.ZP_SMITH = saved
    smith_settings.reload()


def _random_zp_complex(seed, p=2, base_vertices=4, facets=4, max_dim=2):
    """
    Free Z_p-complex on base_vertices·p vertices (v, g) -> v·p + g.

    Every facet uses distinct base vertices, so no simplex is fixed by a
    nontrivial power of t.
    """
    from zp_smith.complex import make_zp_complex

    rng = random.Random(seed)
    chosen = []
    for _ in range(facets):
        size = rng.randint(1, min(max_dim + 1, base_vertices))
        base = rng.sample(range(base_vertices), size)
        facet = [v * p + rng.randrange(p) for v in base]
        for k in range(p):
            chosen.append([(v // p) * p + (v % p + k) % p for v in facet])
    action = [(v // p) * p + (v % p + 1) % p for v in range(base_vertices * p)]
    return make_zp_complex(chosen, p, action)


def _random_complex(seed, vertices=5, facets=4, max_dim=2):
    from zp_smith.complex import build_complex

    rng = random.Random(seed)
    chosen = [rng.sample(range(vertices), rng.randint(1, max_dim + 1)) for _ in range(facets)]
    return build_complex(chosen, vertex_count=vertices)


@pytest.fixture
def random_zp_complex():
    return _random_zp_complex


@pytest.fixture
def random_complex():
    return _random_complex


@pytest.fixture
def four_cycle():
    """The 4-cycle 0-1-2-3 with t = (0 2)(1 3)."""
    from zp_smith.complex import make_zp_complex, to_free_chain_complex

    K = make_zp_complex([[0, 1], [1, 2], [2, 3], [0, 3]], 2, [2, 3, 0, 1])
    return to_free_chain_complex(K)


@pytest.fixture
def antipodal_cylinder():
    """Annulus between two antipodal 4-cycles: free, 2-dimensional, Smith index 2."""
    from zp_smith.complex import make_zp_complex, to_free_chain_complex

    facets = []
    for i in range(4):
        a, a_next = i, (i + 1) % 4
        b, b_next = 4 + i, 4 + (i + 1) % 4
        facets += [[a, a_next, b], [a_next, b, b_next]]
    action = [2, 3, 0, 1, 6, 7, 4, 5]
    return to_free_chain_complex(make_zp_complex(facets, 2, action))
