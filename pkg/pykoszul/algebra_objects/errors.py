class KoszulError(Exception):
    def __init__(self, message: str = "") -> None:
        super().__init__(message)
        self.message = message


class ValidationError(KoszulError):
    pass


class JobParseError(KoszulError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class UnknownJobError(KoszulError):
    def __init__(self, command: str) -> None:
        super().__init__(f"unknown command '{command}'")
        self.command = command


class InhomogeneousError(ValidationError):
    pass


class NotWellFormedError(ValidationError):
    def __init__(self, weights: tuple[int, ...], subset: tuple[int, ...]) -> None:
        super().__init__(f"weights {list(weights)} are not well formed: subset {list(subset)} is not coprime")
        self.weights = weights
        self.subset = subset


class NotAComplexError(ValidationError):
    pass


class BoundExhaustedError(KoszulError):
    def __init__(self, message: str, degree: int) -> None:
        super().__init__(f"bound exhausted: {message} (degree reached {degree})")
        self.degree = degree


class HypothesisError(KoszulError):
    def __init__(self, p: int, q: int, character: tuple[int, ...], dimension: int) -> None:
        super().__init__(f"vanishing violated at (p,q,χ)=({p},{q},{list(character)}): dimension {dimension}")
        self.p = p
        self.q = q
        self.character = character
        self.dimension = dimension
