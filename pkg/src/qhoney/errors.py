"""Domain exceptions shared across the package."""


class QhoneyError(Exception):
    """Base class for every domain error raised by this package."""


# -- corpus / grouping -------------------------------------------------------

class EmptyCorpusError(QhoneyError):
    pass


class DegenerateTableError(QhoneyError):
    """Frequency table has no positive entry; no groups can be formed."""


class NoViableIndexError(QhoneyError):
    """No candidate index position yields groups large enough for d alternatives."""


# -- alternatives ------------------------------------------------------------

class AnswerTooShortError(QhoneyError):
    pass


class GroupTooSmallError(QhoneyError):
    def __init__(self, message: str, question_id: int | None = None):
        super().__init__(message)
        self.question_id = question_id


class LetterUngroupedError(QhoneyError):
    def __init__(self, message: str, question_id: int | None = None):
        super().__init__(message)
        self.question_id = question_id


class WrongKindError(QhoneyError):
    pass


class OutOfRangeError(QhoneyError):
    pass


class RangeTooSmallError(QhoneyError):
    pass


class InvalidAnswerError(QhoneyError):
    def __init__(self, message: str, question_id: int | None = None):
        super().__init__(message)
        self.question_id = question_id


# -- sweetwords --------------------------------------------------------------

class LengthMismatchError(QhoneyError):
    pass


class AttemptsExhaustedError(QhoneyError):
    """Rejection sampling could not place a sweetword; parameters infeasible."""


# -- vault / services --------------------------------------------------------

class DuplicateUserError(QhoneyError):
    pass


class UnknownUserError(QhoneyError):
    pass


# -- analysis ----------------------------------------------------------------

class NoDigitTailError(QhoneyError):
    pass


class InfeasibleParamsError(QhoneyError):
    pass
