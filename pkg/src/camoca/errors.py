"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`CamocaError`,
which is itself a ``ValueError`` so callers that only care about bad input can
catch the builtin.
"""


class CamocaError(ValueError):
    pass


class FieldMismatchError(CamocaError):
    pass


class NotBipermutiveError(CamocaError):
    pass


class NotLinearError(CamocaError):
    pass


class InfeasibleError(CamocaError):
    """Requested parameters exceed an enumeration or construction bound."""


class NotOrthogonalError(CamocaError):
    pass


class NoSurvivorError(CamocaError):
    """No input is consistent with both shares (wrong rules or corrupted shares)."""


class MultipleSurvivorsError(CamocaError):
    """More than one input is consistent with both shares (rules not orthogonal)."""


class SameShareError(CamocaError):
    pass


class EmptyIntersectionError(CamocaError):
    """Candidate families share no preimage set (shares come from different deals)."""


class AmbiguousIntersectionError(CamocaError):
    """Candidate families share several preimage sets (public family not orthogonal)."""


class DigestMismatchError(CamocaError):
    pass


class FormatError(CamocaError):
    pass
