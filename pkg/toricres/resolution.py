"""Blowups of characteristic pairs and resolution of their singularities.

Each step cuts off a maximal singular face F and labels the new facet with
the primitive part of an integral point sum(c_j * lambda_j) of the
fundamental parallelepiped of F. A vertex b on F is replaced by k new
vertices whose orders are (|c_s| / d) * |G_b|, so the multiset of vertex
orders strictly decreases and the process terminates.
"""

import enum
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import lattice
from .charpair import RCharPair, face_matrix, face_order, require_r_characteristic, singular_locus, validate_r_characteristic, vertex_orders
from .errors import CharacteristicError, ConfigError, ConsistencyError, ResolutionGuardError, ValidationReport
from .polytope import Face, blowup

__all__ = [
    "DEFAULT_GUARD_FACTOR",
    "FaceRule",
    "PointRule",
    "ResolutionConfig",
    "BlowupChoice",
    "PairSummary",
    "ResolutionStep",
    "ResolutionTrace",
    "select_face",
    "choose_lattice_point",
    "choice_from_coefficients",
    "blowup_pair",
    "predict_new_vertex_orders",
    "multiset_decreases",
    "resolve",
    "replay",
]

logger = logging.getLogger(__name__)

DEFAULT_GUARD_FACTOR = 10


class FaceRule(enum.Enum):
    MAX_ORDER_THEN_LEX = "max-order-then-lex"
    LEX_ONLY = "lex-only"


class PointRule(enum.Enum):
    MIN_SUM_THEN_LEX = "min-sum-then-lex"


@dataclass(frozen=True)
class ResolutionConfig:
    """How ``resolve`` picks faces and lattice points.

    :param max_steps: guard on the number of blowups; ``None`` means
        ``DEFAULT_GUARD_FACTOR`` times the sum of the initial vertex orders
    :param face_rule: which maximal singular face to blow up first
    :param point_rule: which lattice point of the parallelepiped to use

    """

    max_steps: Optional[int] = None
    face_rule: FaceRule = FaceRule.MAX_ORDER_THEN_LEX
    point_rule: PointRule = PointRule.MIN_SUM_THEN_LEX

    def __post_init__(self):
        try:
            object.__setattr__(self, "face_rule", FaceRule(self.face_rule))
            object.__setattr__(self, "point_rule", PointRule(self.point_rule))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.max_steps is not None and self.max_steps < 1:
            raise ConfigError(f"max_steps must be positive, got {self.max_steps}")

    def guard_for(self, pair):
        if self.max_steps is not None:
            return self.max_steps
        return DEFAULT_GUARD_FACTOR * sum(vertex_orders(pair))

    def to_dict(self):
        return {"max_steps": self.max_steps, "face_rule": self.face_rule.value, "point_rule": self.point_rule.value}


@dataclass(frozen=True)
class BlowupChoice:
    """The integral point lambda_F = M.c chosen for blowing up ``face``.

    ``fallback`` is set when some coefficient is zero, which happens only
    for faces that are not maximal in the singular locus.
    """

    face: Face
    coefficients: tuple
    lattice_point: tuple
    d: int
    new_vector: tuple
    fallback: bool = False


@dataclass(frozen=True)
class PairSummary:
    num_facets: int
    num_vertices: int
    vertex_orders: tuple
    singular_faces: int

    @classmethod
    def of(cls, pair, locus):
        return cls(pair.polytope.num_facets, pair.polytope.num_vertices, tuple(vertex_orders(pair)), len(locus))


@dataclass(frozen=True)
class ResolutionStep:
    index: int
    before: RCharPair
    before_summary: PairSummary
    order: int
    choice: BlowupChoice
    predicted: dict
    after: RCharPair
    after_summary: PairSummary


@dataclass
class ResolutionTrace:
    initial: RCharPair
    config: ResolutionConfig
    steps: list = field(default_factory=list)
    final: Optional[RCharPair] = None
    complete: bool = True

    @property
    def num_steps(self):
        return len(self.steps)

    def faces(self):
        return [step.choice.face for step in self.steps]


def select_face(locus, rule=FaceRule.MAX_ORDER_THEN_LEX):
    """Pick one maximal element of a non-empty singular locus."""
    maximal = locus.maximal()
    if not maximal:
        raise CharacteristicError("singular locus is empty")
    if FaceRule(rule) is FaceRule.LEX_ONLY:
        return min(maximal, key=lambda entry: entry.face.key)
    return min(maximal, key=lambda entry: (-entry.order, entry.face.key))


def _make_choice(pair, face, coefficients, fallback):
    point = lattice.combine(face_matrix(pair, face), coefficients)
    if any(x.denominator != 1 for x in point):
        raise CharacteristicError(f"combination {[str(x) for x in point]} is not integral")
    point = tuple(int(x) for x in point)
    if not any(point):
        raise CharacteristicError("combination is the zero vector")
    d, primitive = lattice.primitive_decompose(point)
    return BlowupChoice(Face(face.facets, pair.polytope), tuple(coefficients), point, d, primitive, fallback)


def _check_blowable(pair, face):
    if face.codim < 2:
        raise CharacteristicError(f"cannot blow up a face of codimension {face.codim}")
    return face_order(pair, face)


def choose_lattice_point(pair, face, rule=PointRule.MIN_SUM_THEN_LEX):
    """Choose the coefficients of lambda_F among the non-zero points of the parallelepiped of ``face``.

    Representatives with every coefficient in (0, 1) are preferred; they
    exist whenever ``face`` is maximal in the singular locus. Among the
    candidates the smallest coefficient sum wins, ties broken
    lexicographically.
    """
    PointRule(rule)
    if _check_blowable(pair, face) == 1:
        raise CharacteristicError(f"face {face.names()} is nonsingular, nothing to blow up")

    matrix = face_matrix(pair, face)
    candidates = lattice.interior_representatives(matrix)
    fallback = not candidates
    if fallback:
        candidates = [c for c in lattice.coset_representatives(matrix) if any(c)]
        logger.warning("face %s has no interior lattice point, using a boundary one", face.names())
    coefficients = min(candidates, key=lambda c: (sum(c), c))
    logger.debug("face %s: coefficients %s", face.names(), [str(c) for c in coefficients])
    return _make_choice(pair, face, coefficients, fallback)


def choice_from_coefficients(pair, face, coefficients, strict=True):
    """Build a choice from user-supplied coefficients, checking they describe a point of Q(F).

    :param coefficients: one rational per facet of ``face``, in facet index order
    :param strict: reject zero coefficients

    """
    _check_blowable(pair, face)
    coefficients = tuple(Fraction(c) for c in coefficients)
    if len(coefficients) != face.codim:
        raise CharacteristicError(f"expected {face.codim} coefficients, got {len(coefficients)}")
    for c in coefficients:
        if abs(c) >= 1:
            raise CharacteristicError(f"coefficient {c} is out of range, need |c| < 1")
    if strict and any(c == 0 for c in coefficients):
        raise CharacteristicError("zero coefficient rejected in strict mode")
    return _make_choice(pair, face, coefficients, any(c == 0 for c in coefficients))


def _blowup_with_provenance(pair, choice):
    _check_blowable(pair, choice.face)
    if lattice.combine(face_matrix(pair, choice.face), choice.coefficients) != tuple(Fraction(x) for x in choice.lattice_point):
        raise CharacteristicError("choice does not belong to this pair")
    polytope, provenance = blowup(pair.polytope, Face(choice.face.facets, pair.polytope))
    result = RCharPair(polytope, pair.vectors + (choice.new_vector,))
    validate_r_characteristic(result).raise_for(CharacteristicError)
    return result, provenance


def blowup_pair(pair, choice):
    """Blow up ``choice.face``; old facets keep their vectors and the new facet gets ``choice.new_vector``."""
    result, _ = _blowup_with_provenance(pair, choice)
    return result


def predict_new_vertex_orders(pair, choice, provenance):
    """Map each created vertex index to (|c_s| / d) * |G_b| of its source vertex b."""
    position = {facet: s for s, facet in enumerate(choice.face.key)}
    predicted = {}
    for index, (source, dropped) in sorted(provenance.created.items()):
        source_order = face_order(pair, pair.polytope.vertex_face(source))
        value = abs(choice.coefficients[position[dropped]]) * source_order / choice.d
        if value.denominator != 1:
            raise ConsistencyError(f"predicted order {value} of new vertex {index} is not an integer")
        predicted[index] = int(value)
    return predicted


def multiset_decreases(before, after):
    """True iff ``after`` is smaller than ``before`` in the multiset order.

    Every element gained must be dominated by some element lost.
    """
    before, after = Counter(before), Counter(after)
    if before == after:
        return False
    gained = after - before
    lost = before - after
    return all(any(y > x for y in lost) for x in gained)


def _check_step(before_orders, after_orders, predicted, provenance):
    for index, value in predicted.items():
        source = provenance.created[index][0]
        if after_orders[index] != value:
            raise ConsistencyError(f"new vertex {index}: predicted order {value}, found {after_orders[index]}")
        if value >= before_orders[source]:
            raise ConsistencyError(f"new vertex {index} has order {value}, not below its source order {before_orders[source]}")
    for index, source in provenance.kept.items():
        if after_orders[index] != before_orders[source]:
            raise ConsistencyError(f"vertex {source} off the blown-up face changed order")
    if not multiset_decreases(before_orders, after_orders):
        raise ConsistencyError("vertex orders did not decrease")


def resolve(pair, config=None):
    """Blow up maximal singular faces until the pair is characteristic.

    Every step is checked against the order prediction and the multiset
    descent. Exceeding the step guard raises ``ResolutionGuardError``
    carrying the partial trace.
    """
    config = config or ResolutionConfig()
    require_r_characteristic(pair)
    guard = config.guard_for(pair)
    trace = ResolutionTrace(pair, config)

    current = pair
    locus = singular_locus(current)
    while locus:
        if trace.num_steps >= guard:
            trace.final = current
            trace.complete = False
            raise ResolutionGuardError(f"resolution did not finish within {guard} steps", trace)

        entry = select_face(locus, config.face_rule)
        choice = choose_lattice_point(current, entry.face, config.point_rule)
        after, provenance = _blowup_with_provenance(current, choice)
        predicted = predict_new_vertex_orders(current, choice, provenance)
        _check_step(vertex_orders(current), vertex_orders(after), predicted, provenance)
        after_locus = singular_locus(after)

        step = ResolutionStep(
            index=trace.num_steps,
            before=current,
            before_summary=PairSummary.of(current, locus),
            order=entry.order,
            choice=choice,
            predicted=predicted,
            after=after,
            after_summary=PairSummary.of(after, after_locus),
        )
        trace.steps.append(step)
        logger.info("step %d: blew up %s (order %d) with new vector %s, %d singular faces left", step.index, entry.face.names(), entry.order, list(choice.new_vector), len(after_locus))
        current, locus = after, after_locus

    trace.final = current
    return trace


def replay(trace):
    """Re-run every recorded step on its recorded pre-state and report disagreements."""
    report = ValidationReport("trace")
    current = trace.initial
    for step in trace.steps:
        if step.before != current:
            report.add("chain", f"step {step.index} does not start from the previous result", step.index)
        choice = step.choice
        try:
            rebuilt = choice_from_coefficients(step.before, choice.face, choice.coefficients, strict=False)
            after, provenance = _blowup_with_provenance(step.before, rebuilt)
            predicted = predict_new_vertex_orders(step.before, rebuilt, provenance)
        except CharacteristicError as exc:
            report.add("step", f"step {step.index} cannot be replayed: {exc}", step.index)
            current = step.after
            continue
        if rebuilt != choice:
            report.add("choice", f"step {step.index} records an inconsistent lattice point", step.index)
        if after != step.after:
            report.add("post-state", f"step {step.index} does not reproduce its result", step.index)
        if predicted != step.predicted:
            report.add("predictions", f"step {step.index} records different predicted orders", step.index)
        current = step.after

    if trace.final != current:
        report.add("final", "final pair is not the result of the last step")
    elif trace.complete and singular_locus(current):
        report.add("final", "final pair is not characteristic")
    return report
