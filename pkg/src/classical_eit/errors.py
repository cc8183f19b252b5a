"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
1 for bad input (configuration, parameters, contracts), 2 for numerical
failures.
"""


class EITError(Exception):
    exit_code = 1


class ParameterDomainError(EITError, ValueError):
    """A physical parameter violates its domain (e.g. negative capacitance)."""


class MappingDomainError(ParameterDomainError):
    """Mechanical/electrical translation is undefined for these values."""


class NonDegenerateError(ParameterDomainError):
    """An operation that requires equal natural frequencies got unequal ones."""


class OverdampedModeError(ParameterDomainError):
    """Coupling is so strong that the lower normal mode is not oscillatory."""


class ContractError(EITError, ValueError):
    """Input violates an operation's precondition (wrong observable, holes...)."""


class WrappedPhaseError(ContractError):
    pass


class WindowTooShortError(ContractError):
    pass


class ConfigSyntaxError(EITError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownKeyError(ConfigSyntaxError):
    pass


class IntegrationConfigError(EITError, ValueError):
    pass


class NumericalError(EITError, ArithmeticError):
    exit_code = 2


class SingularityError(NumericalError):
    """Response denominator vanishes (undamped system driven at a mode)."""

    def __init__(self, message, omega=None):
        self.omega = omega
        super().__init__(message)


class DivergenceError(NumericalError):
    def __init__(self, message, t=None):
        self.t = t
        super().__init__(message)


class NotSteadyError(NumericalError):
    pass
