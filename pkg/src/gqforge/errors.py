"""Exception types shared across the toolkit."""


class GQForgeError(Exception):
    """Base class for all toolkit errors."""


class NotAGroup(GQForgeError):
    """A multiplication table fails one of the group axioms."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        msg = f"not a group ({reason})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotAGQ(GQForgeError):
    """An incidence structure violates a quadrangle axiom.

    ``witness`` is a JSON-ready dict naming the first violation found.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not a generalized quadrangle: {witness}")


class TooLarge(GQForgeError):
    """Structure or group exceeds the configured search size cap."""


class ShapeMismatch(GQForgeError):
    """Point and line counts rule the requested search out."""


class AxiomsFail(GQForgeError):
    """The sigma-set axioms do not hold."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"sigma axioms fail: {report.failed_axiom} witness {report.witness}"
        )


class OrderMismatch(GQForgeError):
    """Group order is incompatible with the sigma-set size."""


class OrderNotAdmissible(GQForgeError):
    """No integer s >= 1 solves |G| = (s+1)(s^2+1)."""


class NotRegular(GQForgeError):
    """An action fails transitivity or has a nontrivial stabilizer."""

    def __init__(self, part: str, detail: str = ""):
        self.part = part
        msg = f"action not regular on {part}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotIncident(GQForgeError):
    """The base line does not pass through the base point."""


class UnsupportedField(GQForgeError):
    """Symplectic fixtures are only built over GF(2) and GF(3)."""


class NotRegularPoint(GQForgeError):
    """Payne derivation needs a combinatorially regular base point."""


class HypothesisFail(GQForgeError):
    """Inputs violate the hypothesis of the check being run."""


class BadQ(GQForgeError):
    """q is not an odd power of two."""


class RangeError(GQForgeError):
    """Sieve range bounds are malformed."""
