"""Domain error hierarchy shared across the engine."""


class HylosError(Exception):
    """Base class for all domain errors."""


class NotFound(HylosError):
    pass


class MalformedBody(HylosError):
    pass


class EmptySource(HylosError):
    pass


class VocabError(HylosError):
    def __init__(self, field: str, value=None):
        self.field = field
        self.value = value
        msg = field if value is None else f"{field}: invalid vocabulary value {value!r}"
        super().__init__(msg)


class CycleError(HylosError):
    pass


class DuplicateChild(HylosError):
    pass


class InvalidSelector(HylosError):
    pass


class DanglingSelector(HylosError):
    pass


class RangeError(HylosError):
    pass


class EmptyLink(HylosError):
    pass


class InvalidArcrole(HylosError):
    pass


class QuerySyntaxError(HylosError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class UnknownPrefix(HylosError):
    def __init__(self, prefix: str):
        self.prefix = prefix
        super().__init__(f"unknown prefix {prefix!r}")


class FormatError(HylosError):
    pass


class QueryError(HylosError):
    pass


class UnknownContext(HylosError):
    pass


class RenderError(HylosError):
    pass


class ParseError(HylosError):
    def __init__(self, message: str, file: str | None = None):
        self.file = file
        super().__init__(f"{file}: {message}" if file else message)


class IntegrityError(HylosError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
