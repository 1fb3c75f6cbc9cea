"""Exception hierarchy for the engine."""


class VoalogError(Exception):
    pass


class UnregisteredVector(VoalogError):
    """A lattice vector lies outside the group the cocycle is defined on."""


class NonIntegralExponent(VoalogError):
    """The requested mode does not exist on the sector of the target state."""


class NotInKernel(VoalogError):
    """A vector handed to the deformation operator is not killed by v_0."""


class NotNilpotent(VoalogError):
    def __init__(self, bound):
        super().__init__(f"v_0 is not nilpotent within bound N={bound}")
        self.bound = bound


class NonIntegralWeight(VoalogError):
    pass


class IrrationalEigenvalue(VoalogError):
    def __init__(self, factor):
        super().__init__(f"characteristic polynomial has irreducible factor {factor}")
        self.factor = factor


class CutoffTooSmall(VoalogError):
    pass


class InvalidParameters(VoalogError):
    pass


class ConfigError(VoalogError):
    pass
