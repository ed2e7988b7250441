"""Exception hierarchy.

Every error carries the name of the module that raised it, so the CLI can
report a qualified code such as ``series.InsufficientPrecision``.
"""


class ValdiffError(Exception):
    module = "valdiff"
    # CLI exit category: 2 precondition violation, 3 solver failure, 4 parse error
    exit_code = 2

    @property
    def code(self):
        return f"{self.module}.{type(self).__name__}"


class RankMismatch(ValdiffError, ValueError):
    module = "ordgroup"


class DivisionByZero(ValdiffError, ZeroDivisionError):
    module = "residue"


class Unsolvable(ValdiffError):
    """No witness found in the searched class (not a proof of unsolvability)."""

    module = "residue"
    exit_code = 3

    def __init__(self, message, searched=None):
        super().__init__(message)
        self.searched = searched


class ParseError(ValdiffError, ValueError):
    module = "serial"
    exit_code = 4


class InsufficientPrecision(ValdiffError):
    module = "series"


class ZeroHasNoValuation(ValdiffError, ValueError):
    module = "series"


class NotInValuationRing(ValdiffError, ValueError):
    module = "series"


class ZeroConjugate(ValdiffError, ValueError):
    module = "diffpoly"


class ZeroPolynomial(ValdiffError, ValueError):
    module = "diffpoly"


class NotInDotO(ValdiffError, ValueError):
    module = "coarsen"


class AllCoefficientsVanish(ValdiffError, ValueError):
    module = "coarsen"


class DerivationNotInduced(ValdiffError, ValueError):
    module = "coarsen"


class NotPseudoCauchy(ValdiffError, ValueError):
    module = "cuts"


class PreconditionViolated(ValdiffError, ValueError):
    module = "dhensel"


class EmptyPool(ValdiffError, ValueError):
    module = "oracle"
