#!/usr/bin/env python3
"""
Error hierarchy for the jetweil toolkit.

Library code raises these and never prints; the CLI turns them into
report cases or exit codes.
"""


class WeilError(Exception):
    """Base class for every exact-arithmetic failure"""


# scalars
class DivisionByNonUnit(WeilError):
    pass


class NegativeRadicand(WeilError):
    pass


class BranchUndetermined(WeilError):
    pass


# jets
class BaseMismatch(WeilError):
    pass


class NonUnitLeadingCoefficient(WeilError):
    pass


class SingularBase(WeilError):
    pass


# weyl
class ArityMismatch(WeilError):
    pass


class NotInSp(WeilError):
    pass


# gauss
class DimensionMismatch(WeilError):
    pass


class SingularSubstitution(WeilError):
    pass


class NonIntegrablePhase(WeilError):
    pass


class ConstantPhaseNotExpandable(WeilError):
    pass


# oscillator / metaplectic
class NotAGenerator(WeilError):
    pass


class NonSquareBase(WeilError):
    pass


class NotSymplectic(WeilError):
    pass


class SignInconsistent(WeilError):
    """Two probes disagreed on the projective sign"""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# kashiwara
class DegreeOverflow(WeilError):
    pass


class SingularCenter(WeilError):
    pass
