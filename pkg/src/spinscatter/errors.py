"""Exception types raised by the scattering pipeline."""


class BandEdgeError(ValueError):
    """Wave number too close to 0 or pi, where the propagators diverge."""


class ResonanceSingularityError(ArithmeticError):
    """The multiple-scattering system (1 - chi) is numerically singular."""

    def __init__(self, k0, condition):
        self.k0 = k0
        self.condition = condition
        super().__init__(
            f"singular scattering system at k0={k0!r} (condition number {condition:.3e})"
        )


class HermiticityError(ArithmeticError):
    """Matrix expected to be Hermitian deviates beyond tolerance."""


class UndefinedStateError(ValueError):
    """Both reflected and transmitted spin states vanish."""


class OracleFailure(RuntimeError):
    """An independent verifier failed to converge to its own tolerance."""
