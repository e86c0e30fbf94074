"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto its documented status codes without a lookup table.
"""

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_MALFORMED_CHAIN = 5
EXIT_DENSITY_REQUIRED = 6
EXIT_CERTIFICATE = 7
EXIT_RESOURCE = 8


class UltrapowerError(Exception):
    exit_code = EXIT_PRECONDITION


class DocumentError(UltrapowerError, ValueError):
    """A structured document could not be parsed or has the wrong shape."""

    exit_code = EXIT_PARSE

    def __init__(self, message, *, source=None, line=None, path=None):
        self.source = source
        self.line = line
        self.path = path
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(path)
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class DescriptorMismatch(UltrapowerError, ValueError):
    """Values or sequences from different ordered sets were mixed."""


class NoInteriorPoint(UltrapowerError, ValueError):
    """No element lies strictly between the two given elements."""


class PeriodCapExceeded(UltrapowerError):
    exit_code = EXIT_RESOURCE

    def __init__(self, period, cap):
        self.period = period
        self.cap = cap
        super().__init__(f"period {period} exceeds the configured cap {cap}")


class IncompatibleSelector(UltrapowerError, ValueError):
    exit_code = EXIT_PARSE


class NotACover(UltrapowerError, ValueError):
    pass


class FiniteGenerator(UltrapowerError, ValueError):
    """The set generating a filter extension must be infinite."""


class FiniteCarrierRequired(UltrapowerError, ValueError):
    pass


class NotAnUpperBound(UltrapowerError, ValueError):
    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"bound fails at level {level}")


class DegenerateInput(UltrapowerError, ValueError):
    pass


class MalformedChain(UltrapowerError, ValueError):
    exit_code = EXIT_MALFORMED_CHAIN

    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"chain invariant violated at level {level}")


class DensityRequired(UltrapowerError, ValueError):
    exit_code = EXIT_DENSITY_REQUIRED


class UndecidableWithoutCertificate(UltrapowerError):
    """Opaque sequences can only be compared through a certificate."""


class CertificateError(UltrapowerError):
    exit_code = EXIT_CERTIFICATE


class InvalidCertificate(CertificateError):
    """The certificate's support is not accepted by the ultrafilter."""


class FalsifiedCertificate(CertificateError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"claim fails at index {index}")
