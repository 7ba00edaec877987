"""Exception types shared across the package."""


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class DegenerateGeometryError(ValueError):
    """Polygonal input is not in generic position (tangency, vertex on edge, ...)."""


class ParseError(ValueError):
    """An expression or loop record could not be parsed."""
