"""Exception types shared across the package."""


class WeylresError(Exception):
    pass


class FormatError(WeylresError, ValueError):
    pass


class AffineTypeError(WeylresError):
    """The Cartan matrix is singular; enlarge the diagram first."""


class NotReducedError(WeylresError, ValueError):
    pass


class NotFiniteTypeError(WeylresError):
    pass


class NotDominantError(WeylresError, ValueError):
    pass


class NotPositiveRootError(WeylresError, ValueError):
    pass


class NotSkewError(WeylresError, ValueError):
    pass


class NoSolution(WeylresError):
    pass


class InfiniteMonomialBasis(WeylresError):
    pass


class NotMinimalCosetError(WeylresError, ValueError):
    pass


class IdentityFailure(WeylresError):
    def __init__(self, message, plucker=None):
        super().__init__(message)
        self.plucker = plucker


class RegularSequenceSuspect(WeylresError):
    pass
