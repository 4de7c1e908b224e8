"""Exception types shared across framerole."""


class FrameroleError(Exception):
    pass


class ParseError(FrameroleError, ValueError):
    """Malformed input. ``line`` is 1-based, or None when not line-oriented."""

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


class ColumnCountError(ParseError):
    pass


class CycleError(FrameroleError):
    def __init__(self, relation, cycle):
        self.relation = relation
        self.cycle = list(cycle)
        path = " -> ".join(self.cycle)
        super().__init__(f"cycle in {relation}: {path}")


class TreeError(FrameroleError, ValueError):
    pass


class UnknownRole(FrameroleError, KeyError):
    def __str__(self):
        return f"unknown role: {self.args[0]}"


class UnknownToken(FrameroleError, KeyError):
    def __str__(self):
        return f"unknown token: {self.args[0]}"


class ConfigError(FrameroleError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        super().__init__(f"line {line}: {reason}")


class MismatchedSentence(FrameroleError, ValueError):
    pass


class NetworkError(FrameroleError):
    pass


class CacheWriteError(FrameroleError):
    pass
