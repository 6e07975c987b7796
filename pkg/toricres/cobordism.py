"""Null-cobordism certificates for hyper characteristic pairs.

A hyper characteristic pair (Q, xi) is capped off by a transverse vector a:
the prism Q x I gets xi on its sides and a on both caps. Resolving the
prism by blowups that stay near the caps leaves a middle cross-section
identical to (Q, xi), which is the combinatorial content of the bounding
manifold.
"""

import itertools
import logging
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from . import lattice
from .charpair import HyperCharPair, RCharPair, face_matrix, face_order, require_hyper_characteristic, require_r_characteristic
from .errors import CharacteristicError, ConsistencyError, DimensionMismatchError, LatticeError, TransverseError, ValidationReport
from .polytope import Face, faces_of_codim, product_with_interval, validate
from .resolution import ResolutionConfig, ResolutionTrace, resolve

__all__ = [
    "CobordismCertificate",
    "LocalityEntry",
    "EmbeddedPolytope",
    "vertex_normals",
    "transverse_violations",
    "verify_transverse",
    "find_transverse_vector",
    "build_prism_pair",
    "cobound",
    "replay_certificate",
    "validate_embedded",
    "cone_hyper_characteristic",
]

logger = logging.getLogger(__name__)

BOTTOM = "bottom"
TOP = "top"


@dataclass(frozen=True)
class LocalityEntry:
    """Where a blown-up face of the prism resolution sits.

    ``cap`` is the cap the face descends from; ``literal`` tells whether
    the face contains the original bottom or top facet itself.
    """

    step: int
    face: Face
    cap: str
    literal: bool


@dataclass
class CobordismCertificate:
    boundary: HyperCharPair
    transverse_vector: tuple
    transverse_source: str
    prism: RCharPair
    trace: ResolutionTrace
    locality: list = field(default_factory=list)

    @property
    def config(self):
        return self.trace.config

    @property
    def final(self):
        return self.trace.final


class EmbeddedPolytope(object):
    """A simple n-polytope with one rational point of Q^(n+1) per vertex.

    :param polytope: the combinatorial polytope
    :param coordinates: vertex coordinates in vertex order, as anything ``Fraction`` accepts

    """

    __slots__ = ("polytope", "coordinates")

    def __init__(self, polytope, coordinates):
        self.polytope = polytope
        self.coordinates = tuple(tuple(Fraction(x) for x in point) for point in coordinates)

    def __repr__(self):
        return f"<EmbeddedPolytope dim={self.polytope.dim} vertices={len(self.coordinates)}>"


def vertex_normals(pair):
    """Primitive normal of the span of the vectors at each vertex, in vertex order."""
    return [lattice.integer_kernel_normal(face_matrix(pair, Face(vertex))) for vertex in pair.polytope.vertices]


def _as_vector(pair, a):
    a = tuple(operator.index(x) for x in a)
    if len(a) != pair.rank:
        raise DimensionMismatchError(f"transverse vector has length {len(a)}, expected {pair.rank}")
    return a


def transverse_violations(pair, a):
    """Indices of the vertices whose vector span contains ``a``."""
    require_hyper_characteristic(pair)
    a = _as_vector(pair, a)
    return [index for index, normal in enumerate(vertex_normals(pair)) if lattice.dot(normal, a) == 0]


def verify_transverse(pair, a):
    return not transverse_violations(pair, a)


def _by_size(value):
    # 0, 1, -1, 2, -2, ...
    return 2 * abs(value) - (value > 0)


def _candidates(size, bound):
    for norm in range(1, bound + 1):
        values = sorted(range(-norm, norm + 1), key=_by_size)
        for candidate in itertools.product(values, repeat=size):
            if max(abs(x) for x in candidate) == norm and reduce(math.gcd, candidate, 0) == 1:
                yield candidate


def find_transverse_vector(pair, max_norm=None):
    """Smallest primitive vector (in the l-infinity norm) outside every vertex span.

    Within a norm shell candidates are taken in lexicographic order of the
    entries ranked 0, 1, -1, 2, -2, ... . The m vertex hyperplanes cannot
    cover a cube of side larger than m, which bounds the search.
    """
    require_hyper_characteristic(pair)
    normals = vertex_normals(pair)
    bound = pair.polytope.num_vertices // 2 + 1 if max_norm is None else max_norm
    for candidate in _candidates(pair.rank, bound):
        if all(lattice.dot(normal, candidate) for normal in normals):
            logger.info("transverse vector %s", list(candidate))
            return candidate
    raise TransverseError(f"no transverse vector with norm at most {bound}")


def build_prism_pair(pair, a):
    """Q x I with xi on the side facets and ``a`` on the bottom and top."""
    require_hyper_characteristic(pair)
    a = _as_vector(pair, a)
    if not lattice.is_primitive(a):
        raise TransverseError(f"transverse vector {list(a)} is not primitive")
    violations = transverse_violations(pair, a)
    if violations:
        vertex = violations[0]
        names = pair.polytope.names_of(pair.polytope.vertices[vertex])
        raise TransverseError(f"vector {list(a)} lies in the span of vertex {vertex} {names}", vertex=vertex)

    prism = RCharPair(product_with_interval(pair.polytope), pair.vectors + (a, a))
    require_r_characteristic(prism)
    return prism


def _check_side_faces(pair, prism):
    sides = frozenset(range(pair.polytope.num_facets))
    for k in range(1, prism.polytope.dim):
        for face in faces_of_codim(prism.polytope, k):
            if face.facets <= sides and face_order(prism, face) != 1:
                raise ConsistencyError(f"side face {face.names()} of the prism is singular")


def _check_locality(pair, trace):
    r = pair.polytope.num_facets
    lineage = {r: BOTTOM, r + 1: TOP}
    entries = []
    for step in trace.steps:
        face = step.choice.face
        caps = {lineage[facet] for facet in face.facets if facet in lineage}
        if len(caps) != 1:
            raise ConsistencyError(f"blown-up face {step.before.polytope.names_of(face.facets)} is not near exactly one cap")
        cap = caps.pop()
        lineage[step.before.polytope.num_facets] = cap
        literal = bool(face.facets & {r, r + 1})
        entries.append(LocalityEntry(step.index, face, cap, literal))
        logger.info("step %d is localized to the %s cap%s", step.index, cap, "" if literal else " through a new facet")
    return entries


def _check_side_vectors(pair, final):
    r = pair.polytope.num_facets
    if final.vectors[:r] != pair.vectors:
        raise ConsistencyError("side facets of the resolved prism lost their vectors")


def cobound(pair, config=None, transverse=None):
    """Build the prism over ``pair``, resolve it and certify the result.

    :param pair: a hyper characteristic pair
    :param config: resolution settings
    :param transverse: cap vector; searched for when omitted

    """
    require_hyper_characteristic(pair)
    if transverse is None:
        a = find_transverse_vector(pair)
        source = "search"
    else:
        a = _as_vector(pair, transverse)
        source = "given"

    prism = build_prism_pair(pair, a)
    _check_side_faces(pair, prism)
    trace = resolve(prism, config or ResolutionConfig())
    locality = _check_locality(pair, trace)
    _check_side_vectors(pair, trace.final)
    return CobordismCertificate(pair, a, source, prism, trace, locality)


def replay_certificate(certificate):
    """Rebuild the prism and its resolution from the stored boundary, vector and config."""
    report = ValidationReport("certificate")
    pair = certificate.boundary
    try:
        prism = build_prism_pair(pair, certificate.transverse_vector)
    except (TransverseError, CharacteristicError) as exc:
        report.add("transverse", str(exc))
        return report
    if prism != certificate.prism:
        report.add("prism", "stored prism does not match the boundary data")

    trace = resolve(prism, certificate.config)
    stored = certificate.trace
    if [step.choice for step in trace.steps] != [step.choice for step in stored.steps]:
        report.add("trace", "resolution steps differ from the stored trace")
    if trace.final != stored.final:
        report.add("final", "resolved pair differs from the stored one")
    if _check_locality(pair, trace) != certificate.locality:
        report.add("locality", "locality report differs from the stored one")
    return report


def validate_embedded(ep):
    report = ValidationReport("embedded_polytope")
    report.extend(validate(ep.polytope))
    size = ep.polytope.dim + 1
    if len(ep.coordinates) != ep.polytope.num_vertices:
        report.add("coordinates", f"{len(ep.coordinates)} points for {ep.polytope.num_vertices} vertices")
    for index, point in enumerate(ep.coordinates):
        if len(point) != size:
            report.add("coordinates", f"point of vertex {index} has {len(point)} coordinates, expected {size}", index)
        elif not any(point):
            report.add("origin", f"vertex {index} sits at the origin", index)
    return report


def _integral(point):
    scale = reduce(math.lcm, (x.denominator for x in point), 1)
    return tuple(int(x * scale) for x in point)


def cone_hyper_characteristic(ep):
    """Primitive outward normals of the cone over each facet.

    The cone over ``ep`` has apex 0; a normal is outward when its dot
    product with the centroid of the vertices is negative.
    """
    validate_embedded(ep).raise_for(CharacteristicError)
    polytope = ep.polytope
    count = len(ep.coordinates)
    centroid = [sum(column, Fraction(0)) / count for column in zip(*ep.coordinates)]

    vectors = []
    for facet in range(polytope.num_facets):
        points = [_integral(ep.coordinates[index]) for index, vertex in enumerate(polytope.vertices) if facet in vertex]
        matrix = lattice.as_matrix(points)
        span = lattice.rank(matrix)
        name = polytope.facet_names[facet]
        if span != polytope.dim:
            raise CharacteristicError(f"cone over facet {name!r} spans dimension {span}, expected {polytope.dim}")
        try:
            normal = lattice.integer_kernel_normal(matrix)
        except LatticeError as exc:
            raise CharacteristicError(f"facet {name!r}: {exc}") from None
        side = lattice.dot(normal, centroid)
        if side == 0:
            raise CharacteristicError(f"cannot orient the normal of facet {name!r}")
        if side > 0:
            normal = tuple(-x for x in normal)
        vectors.append(normal)
    return HyperCharPair(polytope, vectors)
