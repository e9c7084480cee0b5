"""Exception hierarchy shared by every module."""


class OrbitFrameError(ValueError):
    """Base class for all input and certification errors."""


class CertificationError(OrbitFrameError):
    """A mathematical property failed to hold (CLI exit code 2)."""


class NotAGroup(OrbitFrameError):
    pass


class GroupMismatch(OrbitFrameError):
    pass


class NotInAlgebra(OrbitFrameError):
    pass


class NotHermitian(OrbitFrameError):
    pass


class NotPSD(OrbitFrameError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(f"operator is not positive semidefinite (min eigenvalue {self.min_eigenvalue:.3e})")


class NotUnitary(OrbitFrameError):
    def __init__(self, element, defect):
        self.element = element
        self.defect = float(defect)
        super().__init__(f"Pi({element}) is not unitary (defect {self.defect:.3e})")


class NotHomomorphism(OrbitFrameError):
    def __init__(self, g1, g2, defect):
        self.pair = (g1, g2)
        self.defect = float(defect)
        super().__init__(f"Pi({g1})Pi({g2}) != Pi({g1}*{g2}) (defect {self.defect:.3e})")


class InvalidAction(OrbitFrameError):
    pass


class ZeroGenerator(OrbitFrameError):
    pass


class NotInvariant(OrbitFrameError):
    def __init__(self, element, defect):
        self.element = element
        self.defect = float(defect)
        super().__init__(f"span is not invariant under Pi({element}) (defect {self.defect:.3e})")


class NotFree(OrbitFrameError):
    def __init__(self, point, element):
        self.point = point
        self.element = element
        super().__init__(f"element {element} fixes point {point}; action is not free")


class InvalidTiling(OrbitFrameError):
    pass


class FiberMismatch(OrbitFrameError):
    pass


class NotMinimal(CertificationError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(f"bracket is not invertible (min eigenvalue {self.min_eigenvalue:.3e}); orbit is not minimal")


class NotInPrincipalSpace(CertificationError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"vector is not in the principal space (residual {self.residual:.3e})")


class DegenerateComb(OrbitFrameError):
    pass


class NotCyclic(OrbitFrameError):
    pass


class ConfigError(OrbitFrameError):
    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class VerificationFailed(CertificationError):
    """A certified value disagreed with its oracle or expected constant."""
