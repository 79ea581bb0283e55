"""Exception types shared across the package."""


class ZpinvError(Exception):
    """Base class for all package errors."""


class AmbientMismatchError(ZpinvError):
    """Two values from different ambient module specs were combined."""


class ZeroPolynomialError(ZpinvError):
    """An operation that needs a nonzero polynomial got the zero polynomial."""


class ModuleSpecSyntaxError(ZpinvError):
    """A module-spec string does not match the grammar."""


class BlockTooLargeError(ZpinvError):
    """A Jordan block size exceeds the prime."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        super().__init__(
            f"V{n} is not a module for the cyclic group of order {p}: a "
            f"unipotent Jordan block of size {n} > {p} has order at least "
            f"{p}^2 in characteristic {p}"
        )


class PreconditionError(ZpinvError):
    """An operation was called with inputs outside its contract."""


class SizeBudgetError(ZpinvError):
    """A computation would exceed the configured size budget."""

    exit_code = 3


class TheoremViolationError(ZpinvError):
    """A certified bound or identity failed; this is a build-stopping bug."""

    exit_code = 1
