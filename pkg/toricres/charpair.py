"""Characteristic data on simple polytopes and the singularity orders |G_F|."""

import operator
from dataclasses import dataclass
from functools import lru_cache

from . import lattice
from .errors import CharacteristicError, DimensionMismatchError, LatticeError, PolytopeError, ValidationReport
from .polytope import Face, faces_of_codim, face_partial_order, FaceOrder, validate, vertices_of_face

__all__ = [
    "RCharPair",
    "HyperCharPair",
    "LocusEntry",
    "SingularLocus",
    "face_matrix",
    "validate_r_characteristic",
    "require_r_characteristic",
    "is_characteristic",
    "face_order",
    "vertex_orders",
    "singular_locus",
    "validate_hyper_characteristic",
    "require_hyper_characteristic",
]


class _FacetLabelling(object):
    __slots__ = ("_polytope", "_vectors")

    # vectors live in Z^(dim + extra_rank)
    extra_rank = 0

    def __init__(self, polytope, vectors):
        self._polytope = polytope
        self._vectors = tuple(tuple(operator.index(x) for x in vector) for vector in vectors)

    @property
    def polytope(self):
        return self._polytope

    @property
    def vectors(self):
        return self._vectors

    @property
    def rank(self):
        return self._polytope.dim + self.extra_rank

    def vector_of(self, facet):
        return self._vectors[facet]

    def check_dimensions(self):
        if len(self._vectors) != self._polytope.num_facets:
            raise DimensionMismatchError(f"{len(self._vectors)} vectors for {self._polytope.num_facets} facets")
        for facet, vector in enumerate(self._vectors):
            if len(vector) != self.rank:
                name = self._polytope.facet_names[facet]
                raise DimensionMismatchError(f"vector of facet {name!r} has length {len(vector)}, expected {self.rank}")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._polytope == other._polytope and self._vectors == other._vectors

    def __hash__(self):
        return hash((self._polytope, self._vectors))

    def __repr__(self):
        return f"<{type(self).__name__} dim={self._polytope.dim} facets={self._polytope.num_facets}>"


class RCharPair(_FacetLabelling):
    """A simple polytope with one primitive vector of Z^n per facet."""

    __slots__ = ()


class HyperCharPair(_FacetLabelling):
    """A simple n-polytope with one vector of Z^(n+1) per facet."""

    __slots__ = ()
    extra_rank = 1


@dataclass(frozen=True)
class LocusEntry:
    face: Face
    order: int
    maximal: bool


class SingularLocus(object):
    """Faces with |G_F| != 1, sorted by codimension (descending) then facet set."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    @property
    def is_empty(self):
        return not self.entries

    def maximal(self):
        return [entry for entry in self.entries if entry.maximal]

    def orders(self):
        return {entry.face.key: entry.order for entry in self.entries}


@lru_cache(maxsize=65536)
def _order_of_columns(columns):
    return lattice.saturation_index(lattice.as_matrix(columns))


def face_matrix(pair, face):
    """Matrix whose columns are the vectors of the facets containing ``face``, by facet index."""
    return lattice.as_matrix([pair.vectors[i] for i in face.key])


def validate_r_characteristic(pair):
    """Check primitivity of every vector and independence at every vertex.

    Independence is checked at vertices only: every non-empty facet
    intersection of a simple polytope extends to a vertex.
    """
    pair.check_dimensions()
    report = ValidationReport("rcharpair")
    report.extend(validate(pair.polytope))
    if not report.valid:
        return report

    names = pair.polytope.facet_names
    for facet, vector in enumerate(pair.vectors):
        if not any(vector):
            report.add("zero vector", f"facet {names[facet]!r} carries the zero vector", facet)
        elif not lattice.is_primitive(vector):
            report.add("not primitive", f"vector {list(vector)} of facet {names[facet]!r} is not primitive", facet)

    for index, vertex in enumerate(pair.polytope.vertices):
        matrix = face_matrix(pair, Face(vertex))
        if lattice.rank(matrix) < len(vertex):
            report.add("singular vertex matrix", f"vectors at vertex {index} {pair.polytope.names_of(vertex)} are linearly dependent", index)
    return report


def require_r_characteristic(pair):
    validate_r_characteristic(pair).raise_for(CharacteristicError)


def face_order(pair, face):
    """|G_F| for a face of codimension >= 1."""
    if face.codim < 1:
        raise CharacteristicError("the order of the polytope itself is undefined")
    try:
        vertices_of_face(pair.polytope, face)
    except PolytopeError as exc:
        raise CharacteristicError(str(exc)) from exc
    try:
        return _order_of_columns(tuple(pair.vectors[i] for i in face.key))
    except LatticeError:
        raise CharacteristicError(f"vectors on face {face.names()} are linearly dependent") from None


def vertex_orders(pair):
    return [face_order(pair, pair.polytope.vertex_face(index)) for index in range(pair.polytope.num_vertices)]


def is_characteristic(pair):
    """True iff every vertex (hence every face) has order 1."""
    require_r_characteristic(pair)
    return all(order == 1 for order in vertex_orders(pair))


def singular_locus(pair):
    """All faces of codimension 2..n with |G_F| >= 2, flagging maximal ones.

    A face order divides the order of every vertex on it, so only subsets
    of singular vertices need checking.
    """
    require_r_characteristic(pair)
    polytope = pair.polytope
    singular_vertices = [vertex for vertex, order in zip(polytope.vertices, vertex_orders(pair)) if order > 1]

    entries = []
    for k in range(2, polytope.dim + 1):
        for face in faces_of_codim(polytope, k):
            if not any(face.facets <= vertex for vertex in singular_vertices):
                continue
            order = face_order(pair, face)
            if order > 1:
                entries.append((face, order))

    located = []
    for face, order in entries:
        maximal = not any(face_partial_order(face, other) is FaceOrder.LESS for other, _ in entries)
        located.append(LocusEntry(face, order, maximal))
    located.sort(key=lambda entry: (-entry.face.codim, entry.face.key))
    return SingularLocus(located)


def validate_hyper_characteristic(pair):
    """Every vertex's vectors must span a rank-n direct summand of Z^(n+1)."""
    pair.check_dimensions()
    report = ValidationReport("hypercharpair")
    report.extend(validate(pair.polytope))
    if not report.valid:
        return report

    for index, vertex in enumerate(pair.polytope.vertices):
        matrix = face_matrix(pair, Face(vertex))
        names = pair.polytope.names_of(vertex)
        if lattice.rank(matrix) < len(vertex):
            report.add("rank", f"vectors at vertex {index} {names} have rank below {len(vertex)}", index)
        elif lattice.saturation_index(matrix) != 1:
            report.add("not unimodular", f"vectors at vertex {index} {names} do not span a unimodular submodule", index)
    return report


def require_hyper_characteristic(pair):
    validate_hyper_characteristic(pair).raise_for(CharacteristicError)
