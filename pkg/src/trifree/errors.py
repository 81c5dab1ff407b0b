"""Exceptions shared across the package."""


class ConstructionError(Exception):
    """A verified structural claim failed while building a family."""


class VerificationError(Exception):
    """An invariant of a finished artifact does not hold."""


class IllegalIntervalError(Exception):
    """Presenter attempted a move that breaks the game rules."""


class IllegalColorError(Exception):
    """Painter attempted a color already used by an overlap neighbor."""
