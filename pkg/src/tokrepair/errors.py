"""Exceptions shared across the toolkit."""


class DataError(Exception):
    """Malformed input data or model file."""


class StreamMismatchError(DataError):
    """Two texts that should agree on their non-space characters do not."""
