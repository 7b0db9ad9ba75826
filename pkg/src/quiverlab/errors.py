"""Exception hierarchy shared by all modules."""


class QuiverLabError(Exception):
    pass


# ice quivers
class DanglingArrow(QuiverLabError):
    pass


class FrozenArrowUnfrozenEndpoint(QuiverLabError):
    pass


class DuplicateLabel(QuiverLabError):
    pass


class VertexFrozen(QuiverLabError):
    pass


class LoopOrTwoCycleAtVertex(QuiverLabError):
    pass


# potentials
class UnknownArrow(QuiverLabError):
    pass


class RedundantPotentialTerm(QuiverLabError):
    pass


class NonUnitTwoCycleCoefficient(QuiverLabError):
    pass


class SubstitutionNotStabilized(QuiverLabError):
    def __init__(self, cap, msg=""):
        self.cap = cap
        super().__init__(msg or f"2-cycle elimination did not stabilize within cap={cap}")


# integer linear algebra / pairs
class Singular(QuiverLabError):
    pass


class BadOrdering(QuiverLabError):
    pass


class EulerSingular(QuiverLabError):
    pass


class IndexFrozen(QuiverLabError):
    pass


# seeds
class InexactDivision(QuiverLabError):
    pass


class NotPointed(QuiverLabError):
    pass


class ZeroPolynomial(QuiverLabError):
    pass


# words and moves
class MovePreconditionFailed(QuiverLabError):
    pass


class EmptyInterval(QuiverLabError):
    pass


class NotAdapted(QuiverLabError):
    pass


class NoIsoFound(QuiverLabError):
    pass


# green sequences
class NotGreenAtStep(QuiverLabError):
    def __init__(self, step, vertex=None):
        self.step = step
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} is red at step {step}")


class MutationIllegal(QuiverLabError):
    def __init__(self, step, msg=""):
        self.step = step
        super().__init__(msg or f"illegal mutation at step {step}")


class WindowTooSmall(QuiverLabError):
    pass


# ext tables
class VertexOutsideModel(QuiverLabError):
    pass


class MatrixMismatch(QuiverLabError):
    def __init__(self, entry, got, want):
        self.entry = entry
        self.got = got
        self.want = want
        super().__init__(f"matrices differ at {entry}: {got} != {want}")


class TailNotVanished(QuiverLabError):
    pass


# sessions
class IllegalVertex(QuiverLabError):
    pass


class EmptyUndoStack(QuiverLabError):
    pass
