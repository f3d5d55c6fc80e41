"""Exception hierarchy.

Input/validation problems derive from ``ValueError`` (CLI exit code 1);
failed identity checks derive from :class:`VerificationError` (exit code 2).
"""


class ZigzagError(Exception):
    pass


class InputError(ZigzagError, ValueError):
    pass


class VerificationError(ZigzagError, AssertionError):
    """A checked identity did not hold. ``details`` carries the counterexample."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details


# -- complexes -------------------------------------------------------------

class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EmptyComplex(InputError):
    pass


class NotPure(InputError):
    pass


class DuplicateFacet(InputError):
    pass


class DuplicateVertexInFacet(InputError):
    pass


class NotThin(InputError):
    def __init__(self, offending):
        # offending: list of (ridge labels, incident facet count)
        self.offending = offending
        ridge, count = offending[0]
        more = f" (+{len(offending) - 1} more)" if len(offending) > 1 else ""
        super().__init__(f"ridge {{{', '.join(ridge)}}} lies in {count} facets{more}")

    @property
    def ridge(self):
        return self.offending[0][0]

    @property
    def count(self):
        return self.offending[0][1]


class NotChamber(InputError):
    def __init__(self, component_sizes):
        self.component_sizes = component_sizes
        super().__init__(f"facet graph is disconnected; component sizes {component_sizes}")


class LevelOutOfRange(InputError):
    pass


class ParameterOutOfRange(InputError):
    pass


class FaceNotInGraph(InputError):
    pass


class FaceNotInComplex(InputError):
    pass


class InvalidFlag(InputError):
    pass


class RankMismatch(InputError):
    pass


class RankOutOfRange(InputError):
    pass


# -- zigzags ---------------------------------------------------------------

class NotAShadow(InputError):
    pass


class Z1Violation(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"window starting at position {index} is not a facet")


class Z2Violation(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"vertex at position {index} repeats n places later")


# -- geodesics -------------------------------------------------------------

class NotAPath(InputError):
    pass


class NotDistanceNormal(InputError):
    pass


# -- coxeter / polytopes ---------------------------------------------------

class InvalidCoxeterMatrix(InputError):
    pass


class BudgetExceeded(InputError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"group has more than {cap} elements (or is infinite)")


class LengthTooLarge(InputError):
    pass


class NotStringDiagram(InputError):
    pass


class InvalidPolytope(InputError):
    pass


class CorrespondenceFailure(VerificationError):
    pass
