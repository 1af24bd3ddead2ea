"""Exception hierarchy.

Every error carries the name of the violated invariant as its class name, which
the command line reports verbatim in its diagnostics.
"""


class PACMeasureError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PACMeasureError, ValueError):
    """Input data violates a structural invariant."""


class ResourceCapError(PACMeasureError):
    """A configured size cap would be exceeded."""


# group construction
class InvalidPermutation(ValidationError):
    pass


class InvalidAction(ValidationError):
    pass


class NotPrime(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


# counting
class NotEGenerated(ValidationError):
    pass


class NotGenerating(ValidationError):
    pass


# scenarios and measures
class NotRegularTarget(ValidationError):
    pass


class BadComplement(ValidationError):
    pass


class DuplicateTarget(ValidationError):
    pass


class UnknownTarget(ValidationError):
    pass


class NoRegularTuples(ValidationError):
    pass


class NotSplit(ValidationError):
    pass


class Sigma0NotGenerating(ValidationError):
    pass


class BadTower(ValidationError):
    pass


# asymptotics
class NotZeroOne(ValidationError):
    pass


class GenericMissing(ValidationError):
    pass


# pro-p
class QuotientNotPGroup(ValidationError):
    pass


class TargetNotPGroup(ValidationError):
    pass


# amenability
class NotTransversal(ValidationError):
    pass


# monte carlo
class NoRegularSamples(ValidationError):
    pass


# scenario files
class ScenarioFormatError(ValidationError):
    pass


# caps
class GroupTooLarge(ResourceCapError):
    pass


class LatticeTooLarge(ResourceCapError):
    pass


class EnumerationTooLarge(ResourceCapError):
    pass
