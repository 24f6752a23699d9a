"""Undo/redo cursor over immutable snapshots.

This tiny state machine is the single definition of how UNDO and REDO
behave: the interactive session drives it from user actions, and replay
drives it from journal entries, so the two can never drift apart.

Applying a new snapshot while undone discards the redo branch (standard
editor semantics); the caller may keep its own archive of every state if
it wants the full record.
"""

from __future__ import annotations

from typing import Generic, TypeVar

from .errors import NothingToRedo, NothingToUndo

T = TypeVar("T")


class SnapshotStack(Generic[T]):
    def __init__(self, initial: T):
        self._stack: list[T] = [initial]
        self._undo_depth = 0

    @property
    def current(self) -> T:
        return self._stack[len(self._stack) - 1 - self._undo_depth]

    @property
    def undo_depth(self) -> int:
        return self._undo_depth

    @property
    def can_undo(self) -> bool:
        return len(self._stack) - 1 - self._undo_depth > 0

    @property
    def can_redo(self) -> bool:
        return self._undo_depth > 0

    def push(self, snapshot: T) -> None:
        """Record a new state; any undone states are dropped from the stack."""
        if self._undo_depth:
            del self._stack[len(self._stack) - self._undo_depth:]
            self._undo_depth = 0
        self._stack.append(snapshot)

    def linear(self) -> list[T]:
        """The states from the initial one up to the cursor, undone tail excluded."""
        return self._stack[:len(self._stack) - self._undo_depth]

    def undo(self) -> T:
        if not self.can_undo:
            raise NothingToUndo("no applied operation to undo")
        self._undo_depth += 1
        return self.current

    def redo(self) -> T:
        if not self.can_redo:
            raise NothingToRedo("no undone operation to redo")
        self._undo_depth -= 1
        return self.current
