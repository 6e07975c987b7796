"""Exceptions and validation reports shared by every toricres module."""


class ToricError(Exception):
    """Base class of every error raised by toricres."""


class LatticeError(ToricError, ValueError):
    pass


class PolytopeError(ToricError, ValueError):
    pass


class CharacteristicError(ToricError, ValueError):
    pass


class DimensionMismatchError(CharacteristicError):
    pass


class TransverseError(ToricError, ValueError):
    """The candidate cap vector lies in the span of a vertex."""

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class ResolutionGuardError(ToricError, RuntimeError):
    """The resolution did not finish within ``max_steps``.

    :param trace: the partial trace recorded up to the guard
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class ConsistencyError(ToricError, RuntimeError):
    """A recomputed quantity disagrees with its prediction."""


class InputError(ToricError, ValueError):
    pass


class ConfigError(ToricError, ValueError):
    """A resolution setting is out of range or unknown."""


class Violation(object):
    __slots__ = "code", "message", "witness"

    def __init__(self, code, message, witness=None):
        self.code = code
        self.message = message
        self.witness = witness

    def __eq__(self, other):
        if not isinstance(other, Violation):
            return NotImplemented
        return (self.code, self.message, self.witness) == (other.code, other.message, other.witness)

    def __repr__(self):
        return f"Violation({self.code!r}, {self.message!r})"

    def to_dict(self):
        return {"code": self.code, "message": self.message, "witness": self.witness}


class ValidationReport(object):
    """Ordered list of violated invariants. An empty report means valid."""

    __slots__ = ("subject", "violations")

    def __init__(self, subject, violations=()):
        self.subject = subject
        self.violations = list(violations)

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    def add(self, code, message, witness=None):
        self.violations.append(Violation(code, message, witness))

    def extend(self, other):
        self.violations.extend(other.violations)

    def first(self):
        return self.violations[0] if self.violations else None

    def raise_for(self, exc_class):
        """Raise ``exc_class`` with the first violation's message, if any."""
        if self.violations:
            raise exc_class(f"{self.subject}: {self.violations[0].message}")

    def to_dict(self):
        return {"subject": self.subject, "valid": self.valid, "violations": [v.to_dict() for v in self.violations]}

    def __repr__(self):
        status = "valid" if self.valid else f"{len(self.violations)} violation(s)"
        return f"<ValidationReport {self.subject}: {status}>"
