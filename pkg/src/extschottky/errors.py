"""Exception hierarchy.

Every domain error carries a stable class name; the CLI prints that name on
stderr and exits with status 1.
"""


class SchottkyError(Exception):
    """Base class for domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# moebius
class NumericallyAmbiguous(SchottkyError):
    pass


class IdentityInput(SchottkyError):
    pass


class DegenerateCircle(SchottkyError):
    pass


# assembly
class InvalidOrder(SchottkyError):
    pass


class ParityViolation(SchottkyError):
    pass


class RelationFailure(SchottkyError):
    pass


class HostOverlap(SchottkyError):
    def __init__(self, first: int, second: int, separation: float):
        self.first = first
        self.second = second
        self.separation = separation
        super().__init__(
            f"host discs of factors {first} and {second} are not disjoint "
            f"(separation {separation:.3g})"
        )


class EmptyFactorList(SchottkyError):
    pass


class PairingGeometryFailure(SchottkyError):
    pass


class WrongTransformClass(SchottkyError):
    pass


class DepthExplosion(SchottkyError):
    pass


class PingPongFailure(SchottkyError):
    pass


# signatures
class InvalidSignature(SchottkyError):
    pass


class NotAdmissible(SchottkyError):
    pass


class SearchSpaceExceeded(SchottkyError):
    pass


class NonIntegralRank(SchottkyError):
    pass


class RegimeMismatch(SchottkyError):
    pass


# census
class OutOfRange(SchottkyError):
    pass


# fixed locus
class ParityConstraintViolated(SchottkyError):
    pass


class NonIntegral(SchottkyError):
    pass


class CrossCheckFailure(SchottkyError):
    """A closed form disagreed with its brute-force or independent count."""
