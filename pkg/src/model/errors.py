"""
Exception hierarchy for architecture diagram tooling
Verdicts (violations, diagnoses, conformance failures) are data; these are for misuse and bad input
"""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourceSpan:
    """Location in a source file, 1-based line and column"""
    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class ArchdiaError(Exception):
    """Base class for all errors raised by the library"""


class ParseError(ArchdiaError):
    """Lexical, syntactic or resolution error in a diagram or architecture file"""

    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


class DiagramValidationError(ParseError):
    """A parsed diagram violates well-formedness rules"""

    def __init__(self, report, span: Optional[SourceSpan] = None):
        self.report = report
        first = report.violations[0]
        super().__init__(f"{first.rule}: {first.message}", span)


class ZeroMultiplicityError(ArchdiaError, ValueError):
    """Matching factor requested for a port with multiplicity 0"""

    def __init__(self):
        super().__init__("zero multiplicity")


class NotSimpleDiagramError(ArchdiaError, ValueError):
    """A simple-diagram operation was called on an interval diagram"""


class ConstraintError(ArchdiaError):
    """Synthesis constraints that cannot be expressed or are contradictory"""


class OracleLimitError(ArchdiaError):
    """Exhaustive search would exceed the configured limit"""

    def __init__(self, what: str, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"oracle limit: {what} has size {size}, limit is {limit}")
