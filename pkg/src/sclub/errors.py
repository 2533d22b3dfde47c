class InputError(ValueError):
    """Malformed input: bad graph data, empty vertex sets, invalid parameters."""


class InapplicableError(ValueError):
    """A parameter combination for which the requested rule or construction does not exist."""
