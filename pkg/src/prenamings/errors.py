"""Common base class for the toolkit's domain errors.

Everything that signals a failed *operation* (failed match, unsound
extension, unsafe application, verification failure) derives from
:class:`PrenamingsError`.  Parse errors live in :mod:`prenamings.syntax`
and derive from it as well, so callers can distinguish "bad input text"
from "the operation is undefined here".
"""


class PrenamingsError(Exception):
    pass
