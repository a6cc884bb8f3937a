from typing import Optional


class WeilabError(Exception):
    """Base class for every domain error raised by weilab"""
    pass


class PolyParseError(WeilabError, ValueError):
    """Polynomial text does not conform to the grammar"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(PolyParseError):
    """A factor names a variable that is not declared"""
    pass


class DegreeExceededError(PolyParseError):
    """A parsed term has total degree above the truncation order"""
    pass


class SpecFileError(WeilabError, ValueError):
    """Algebra spec file is malformed"""

    def __init__(self, message: str, source: Optional[str] = None, line: Optional[int] = None):
        location = ""
        if source is not None:
            location = f"{source}:{line}: " if line is not None else f"{source}: "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")
        self.source = source
        self.line = line


class ContextMismatchError(WeilabError, ValueError):
    """Operands live in different rings, algebras or coordinate spaces"""
    pass


class NonLocalAlgebraError(WeilabError):
    """The presentation does not define a local algebra"""
    pass


class DimensionCapExceeded(WeilabError):
    """The quotient is larger than the configured dimension cap"""

    def __init__(self, dim: int, cap: int):
        super().__init__(f"Algebra dimension {dim} exceeds the dimension cap {cap}")
        self.dim = dim
        self.cap = cap


class DegenerateAlgebraError(WeilabError):
    """The algebra has a zero nilradical (A = R)"""
    pass


class EndoNotWellDefinedError(WeilabError):
    """Images of the variable classes do not respect the relations"""
    pass


class NotAnAutomorphismError(WeilabError):
    """Operation requires an automorphism"""
    pass


class MissingUnknownError(WeilabError, KeyError):
    """An assignment does not cover every ansatz unknown"""

    def __str__(self) -> str:
        return Exception.__str__(self)
