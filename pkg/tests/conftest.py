"""Test configuration.
Shared fixtures: the shipped example documents and seeded
generators of random characteristic pairs.
"""

import pathlib
import random

import pytest

EXAMPLES = pathlib.Path(__file__).parent.parent / "toricres" / "examples"


def _load(name):
    from toricres import documents

    return documents.build(documents.load_document(EXAMPLES / name))


@pytest.fixture(scope="session")
def examples_dir():
    return EXAMPLES


@pytest.fixture(scope="function")
def prism_pair():
    """Triangular prism with one edge of order 2."""
    return _load("prism-singular-edge.json")


@pytest.fixture(scope="function")
def cube_pair():
    return _load("prism-resolved.json")


@pytest.fixture(scope="function")
def pentagon_pair():
    return _load("pentagon-hyper.json")


@pytest.fixture(scope="function")
def segment_pair():
    return _load("segment-hyper.json")


@pytest.fixture(scope="function")
def simplex_pair():
    return _load("simplex-sphere.json")


@pytest.fixture(scope="function")
def pentagon_prism(pentagon_pair):
    """The pentagonal prism capped with (1, 2, 0) on both ends."""
    from toricres.cobordism import build_prism_pair

    return build_prism_pair(pentagon_pair, (1, 2, 0))


@pytest.fixture(scope="function")
def rng():
    return random.Random(20240617)


def _shapes():
    from toricres.polytope import cube, polygon, product_with_interval, simplex

    return {
        2: [simplex(2), polygon(4), polygon(5)],
        3: [simplex(3), product_with_interval(simplex(2)), cube(3)],
        4: [simplex(4), product_with_interval(simplex(3))],
    }


@pytest.fixture(scope="session")
def shapes():
    return _shapes()


@pytest.fixture(scope="function")
def make_rcharpair(shapes):
    """Return a function drawing random valid R-characteristic pairs.

    :param rng: random.Random to draw from
    :param dims: dimensions to pick the polytope from
    :param bound: vector entries lie in [-bound, bound]
    :param singular: require at least one vertex of order above 1
    """
    from toricres.charpair import RCharPair, validate_r_characteristic, vertex_orders

    def make(rng, dims=(2, 3), bound=1, singular=False):
        for _ in range(5000):
            polytope = rng.choice(shapes[rng.choice(dims)])
            vectors = [[rng.randint(-bound, bound) for _ in range(polytope.dim)] for _ in range(polytope.num_facets)]
            pair = RCharPair(polytope, vectors)
            if not validate_r_characteristic(pair).valid:
                continue
            if singular and max(vertex_orders(pair)) == 1:
                continue
            return pair
        raise RuntimeError("no random pair found")

    return make


@pytest.fixture(scope="function")
def make_hyperpair(shapes):
    """Return a function drawing random valid hyper characteristic pairs over a given polytope."""
    from toricres.charpair import HyperCharPair, validate_hyper_characteristic

    def make(rng, polytope, bound=1):
        for _ in range(5000):
            vectors = [[rng.randint(-bound, bound) for _ in range(polytope.dim + 1)] for _ in range(polytope.num_facets)]
            pair = HyperCharPair(polytope, vectors)
            if validate_hyper_characteristic(pair).valid:
                return pair
        raise RuntimeError("no random hyper pair found")

    return make
