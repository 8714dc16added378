"""Exception types raised by the workbench."""


class AlgebraError(ValueError):
    """Base class for invalid algebraic input."""


class AlgebraMismatch(AlgebraError):
    pass


class NotAssociativeError(AlgebraError):
    pass


class NotUnitalError(AlgebraError):
    pass


class NotAnIdealError(AlgebraError):
    pass


class NotCommutativeError(AlgebraError):
    pass


class MorphismError(AlgebraError):
    """A map failed its homomorphism/intertwiner verification."""


class CharacteristicError(AlgebraError):
    """The operation is only valid in characteristic 0 or p > dim."""


class NotSplitError(AlgebraError):
    """Some minimal polynomial does not split into linear factors over the base field."""


class MissingSplittingError(AlgebraError):
    """The algebra carries no Wedderburn-Malcev complement metadata."""


class GenericityError(ValueError):
    """Input violates a genericity hypothesis (repeated or non-square eigenvalues)."""
