"""Combinatorial simple polytopes.

A simple polytope of dimension n is stored as vertex-facet incidence: each
vertex is the set of the n facet indices that meet there, and a face of
codimension k is the set of k facets containing it. No coordinates are kept.
"""

import enum
import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import PolytopeError, ValidationReport

__all__ = [
    "SimplePolytope",
    "Face",
    "FaceOrder",
    "BlowupProvenance",
    "validate",
    "require_valid",
    "faces_of_codim",
    "vertices_of_face",
    "face_partial_order",
    "product_with_interval",
    "blowup",
    "simplex",
    "polygon",
    "cube",
]


class SimplePolytope(object):
    """Vertex-facet incidence of an n-dimensional simple polytope.

    :param dim: dimension n
    :param facet_names: one label per facet, in index order
    :param vertices: iterable of facet-index collections, one per vertex

    """

    __slots__ = ("_dim", "_facet_names", "_vertices")

    def __init__(self, dim, facet_names, vertices):
        self._dim = int(dim)
        self._facet_names = tuple(str(name) for name in facet_names)
        self._vertices = tuple(frozenset(int(i) for i in vertex) for vertex in vertices)

    @property
    def dim(self):
        return self._dim

    @property
    def facet_names(self):
        return self._facet_names

    @property
    def vertices(self):
        return self._vertices

    @property
    def num_facets(self):
        return len(self._facet_names)

    @property
    def num_vertices(self):
        return len(self._vertices)

    def facet_index(self, token):
        """Resolve a facet name, or failing that a decimal index, to an index."""
        token = str(token).strip()
        if token in self._facet_names:
            return self._facet_names.index(token)
        if token.lstrip("-").isdigit() and 0 <= int(token) < self.num_facets:
            return int(token)
        raise PolytopeError(f"unknown facet {token!r}")

    def face(self, facets):
        """Return the face cut out by ``facets`` (names or indices)."""
        indices = frozenset(i if isinstance(i, int) else self.facet_index(i) for i in facets)
        face = Face(indices, self)
        vertices_of_face(self, face)
        return face

    def vertex_face(self, index):
        return Face(self._vertices[index], self)

    def names_of(self, facets):
        return [self._facet_names[i] for i in sorted(facets)]

    def __eq__(self, other):
        if not isinstance(other, SimplePolytope):
            return NotImplemented
        return (self._dim, self._facet_names, self._vertices) == (other._dim, other._facet_names, other._vertices)

    def __hash__(self):
        return hash((self._dim, self._facet_names, self._vertices))

    def __repr__(self):
        return f"<SimplePolytope dim={self._dim} facets={self.num_facets} vertices={self.num_vertices}>"


@dataclass(frozen=True)
class Face:
    """Face of a simple polytope, named by the facets containing it.

    The empty facet set is the polytope itself.
    """

    facets: frozenset
    polytope: Optional[SimplePolytope] = field(default=None, compare=False, repr=False)

    @property
    def codim(self):
        return len(self.facets)

    @property
    def key(self):
        return tuple(sorted(self.facets))

    def names(self):
        if self.polytope is None:
            return [str(i) for i in self.key]
        return self.polytope.names_of(self.facets)


class FaceOrder(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class BlowupProvenance:
    """Where each vertex of a blowup came from.

    ``kept`` maps a new vertex index to the unchanged old vertex; ``created``
    maps it to ``(source vertex, dropped facet)``.
    """

    face: Face
    new_facet: int
    kept: dict
    created: dict


def validate(polytope):
    """Check every invariant of a simple polytope and report the violations."""
    report = ValidationReport("polytope")
    n = polytope.dim
    r = polytope.num_facets
    vertices = polytope.vertices

    if n < 1:
        report.add("dimension", f"dimension must be at least 1, got {n}", n)
        return report
    if not vertices:
        report.add("no vertices", "polytope has no vertices")
        return report

    for index, vertex in enumerate(vertices):
        if len(vertex) != n:
            report.add("vertex not simple", f"vertex {index} lies on {len(vertex)} facets, expected {n}", index)
        outside = sorted(i for i in vertex if not 0 <= i < r)
        if outside:
            report.add("facet out of range", f"vertex {index} refers to unknown facets {outside}", index)

    seen = {}
    for index, vertex in enumerate(vertices):
        if vertex in seen:
            report.add("duplicate vertex", f"vertices {seen[vertex]} and {index} have the same facets", [seen[vertex], index])
        else:
            seen[vertex] = index

    used = set().union(*vertices)
    for facet in range(r):
        if facet not in used:
            report.add("empty facet", f"facet {polytope.facet_names[facet]!r} contains no vertex", facet)

    if len(set(polytope.facet_names)) != r:
        report.add("duplicate name", "facet names are not unique")

    if not report.valid:
        return report

    ridges = Counter(frozenset(ridge) for vertex in vertices for ridge in itertools.combinations(sorted(vertex), n - 1))
    for ridge, count in sorted(ridges.items(), key=lambda item: sorted(item[0])):
        if count != 2:
            report.add("ridge", f"ridge {sorted(ridge)} lies in {count} vertices, expected 2", sorted(ridge))

    reached = {0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for other, vertex in enumerate(vertices):
            if other not in reached and len(vertex & vertices[current]) == n - 1:
                reached.add(other)
                queue.append(other)
    if len(reached) != len(vertices):
        missing = sorted(set(range(len(vertices))) - reached)
        report.add("disconnected", f"vertices {missing} are not connected to vertex 0", missing)

    return report


def require_valid(polytope):
    validate(polytope).raise_for(PolytopeError)


def faces_of_codim(polytope, k):
    """All faces of codimension ``k`` in lexicographic order of their facet sets."""
    if not 0 <= k <= polytope.dim:
        raise PolytopeError(f"codimension must lie in 0..{polytope.dim}, got {k}")
    if k == 0:
        return [Face(frozenset(), polytope)]
    keys = {subset for vertex in polytope.vertices for subset in itertools.combinations(sorted(vertex), k)}
    return [Face(frozenset(key), polytope) for key in sorted(keys)]


def vertices_of_face(polytope, face):
    """Indices of the vertices lying on ``face``."""
    facets = face.facets
    if any(not 0 <= i < polytope.num_facets for i in facets):
        raise PolytopeError(f"face {sorted(facets)} refers to unknown facets")
    result = [index for index, vertex in enumerate(polytope.vertices) if facets <= vertex]
    if not result:
        raise PolytopeError(f"facets {polytope.names_of(facets)} do not meet in a face")
    return result


def face_partial_order(first, second):
    """Compare two faces by inclusion (F <= F' iff F is contained in F').

    Containment of faces reverses containment of their facet sets.
    """
    if first.polytope is not None and second.polytope is not None and first.polytope != second.polytope:
        raise PolytopeError("faces belong to different polytopes")
    if first.facets == second.facets:
        return FaceOrder.EQUAL
    if second.facets < first.facets:
        return FaceOrder.LESS
    if first.facets < second.facets:
        return FaceOrder.GREATER
    return FaceOrder.INCOMPARABLE


def _unique_name(name, taken):
    while name in taken:
        name += "'"
    return name


def product_with_interval(polytope):
    """Combinatorial Q x [0, 1].

    Facets are the sides E x I in the order of Q's facets, then the bottom
    Q x {0}, then the top Q x {1}.
    """
    require_valid(polytope)
    r = polytope.num_facets
    bottom, top = r, r + 1
    names = list(polytope.facet_names)
    names.append(_unique_name("bottom", names))
    names.append(_unique_name("top", names))
    vertices = [vertex | {bottom} for vertex in polytope.vertices]
    vertices += [vertex | {top} for vertex in polytope.vertices]
    return SimplePolytope(polytope.dim + 1, names, vertices)


def blowup(polytope, face, name=None):
    """Cut off ``face`` and return ``(polytope, provenance)``.

    Old facets keep their indices and the new facet is appended last. Each
    vertex on the face with facets {i_1..i_k} + R becomes k vertices
    ({i_1..i_k} - {i_s}) + R + {new}. Vertices off the face come first, in
    their old order, followed by the new ones.

    :param polytope: a valid simple polytope
    :param face: face of codimension 2..n
    :param name: label of the new facet

    """
    require_valid(polytope)
    k = face.codim
    if k == 1:
        raise PolytopeError("blowup along facet is a no-op, rejected")
    if not 2 <= k <= polytope.dim:
        raise PolytopeError(f"cannot blow up a face of codimension {k}")
    on_face = set(vertices_of_face(polytope, face))

    new_facet = polytope.num_facets
    names = list(polytope.facet_names)
    names.append(_unique_name(name or f"new{new_facet}", names))

    vertices = []
    kept = {}
    created = {}
    for index, vertex in enumerate(polytope.vertices):
        if index not in on_face:
            kept[len(vertices)] = index
            vertices.append(vertex)
    for index in sorted(on_face):
        vertex = polytope.vertices[index]
        for dropped in face.key:
            created[len(vertices)] = (index, dropped)
            vertices.append((vertex - {dropped}) | {new_facet})

    result = SimplePolytope(polytope.dim, names, vertices)
    require_valid(result)
    return result, BlowupProvenance(Face(face.facets, polytope), new_facet, kept, created)


def simplex(n):
    """The n-simplex: n+1 facets, vertex i misses facet i."""
    if n < 1:
        raise PolytopeError("simplex dimension must be at least 1")
    facets = range(n + 1)
    return SimplePolytope(n, [f"E{i}" for i in facets], [set(facets) - {i} for i in facets])


def polygon(m):
    """An m-gon whose edge i meets edges i-1 and i+1 (cyclically)."""
    if m < 3:
        raise PolytopeError("a polygon needs at least 3 edges")
    return SimplePolytope(2, [f"E{i}" for i in range(m)], [{i, (i + 1) % m} for i in range(m)])


def cube(n):
    """The n-cube as an iterated product of intervals; facets come in pairs."""
    polytope = SimplePolytope(1, ["x0-", "x0+"], [{0}, {1}])
    for axis in range(1, n):
        polytope = product_with_interval(polytope)
        names = list(polytope.facet_names[:-2]) + [f"x{axis}-", f"x{axis}+"]
        polytope = SimplePolytope(polytope.dim, names, polytope.vertices)
    return polytope
