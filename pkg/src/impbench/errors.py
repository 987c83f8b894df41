"""Shared error types.

Every validation failure carries a short machine-readable code and, where
possible, a concrete witness (the elements or tuple violating the law).
"""

from __future__ import annotations

from typing import Any


class Diagnostic(Exception):
    """A validation failure in user-supplied data.

    `code` is a short kebab-case tag, `witness` names the offending
    elements when one exists.
    """

    def __init__(self, code: str, message: str, witness: Any = None):
        self.code = code
        self.message = message
        self.witness = witness
        text = f"[{code}] {message}"
        if witness is not None:
            text += f" (witness: {witness!r})"
        super().__init__(text)


class SelfCheckError(AssertionError):
    """An internal cross-check failed.

    Raised when two routes that must agree disagree.  This never blames the
    input: it means the implementation itself is wrong somewhere.
    """

    def __init__(self, code: str, message: str, witness: Any = None):
        self.code = code
        self.witness = witness
        text = f"[internal:{code}] {message}"
        if witness is not None:
            text += f" (witness: {witness!r})"
        super().__init__(text)
