"""Key automata, inverse key automata, and state trajectories.

Table orientation follows the serialized convention: rows are inputs,
columns are states, so step(a, x) reads delta.entries[x][a]. Under the
quasigroup correspondence x*y = delta(y, x) this is the same array as the
Cayley table, rows indexed by the left operand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyInput
from .latin import LatinSquare, Quasigroup, validate_latin


@dataclass(frozen=True)
class Trajectory:
    start: int
    inputs: tuple[int, ...]
    states: tuple[int, ...]

    def last(self) -> int:
        if not self.states:
            raise EmptyInput("last state of an empty trajectory is undefined")
        return self.states[-1]


@dataclass(frozen=True)
class KeyAutomaton:
    """A finite automaton with A = Sigma whose transition table is Latin."""

    order: int
    delta: LatinSquare

    @classmethod
    def from_table(cls, table) -> "KeyAutomaton":
        sq = validate_latin(table)
        return cls(sq.order, sq)

    def step(self, a: int, x: int) -> int:
        """delta(a, x): next state from state a on input x."""
        return int(self.delta.entries[x, a])

    def run(self, a: int, w: Sequence[int]) -> Trajectory:
        """The full state trajectory of reading word w from state a.

        An empty word yields an empty trajectory.
        """
        t = self.delta.entries
        states = []
        cur = a
        for x in w:
            cur = int(t[x, cur])
            states.append(cur)
        return Trajectory(a, tuple(int(x) for x in w), tuple(states))

    def last_state(self, a: int, w: Sequence[int]) -> int:
        """Last state of run(a, w) without materializing the trajectory."""
        if len(w) == 0:
            raise EmptyInput("last state of the empty word is undefined")
        t = self.delta.entries
        cur = a
        for x in w:
            cur = t[x, cur]
        return int(cur)

    def invert(self) -> "KeyAutomaton":
        """The unique automaton B with delta_B(delta(a, b), b) = a.

        Each input row of the table is a permutation of the states; the
        inverse automaton's row is its inverse permutation. Cached.
        """
        cached = getattr(self, "_inverse", None)
        if cached is not None:
            return cached
        n = self.order
        t = self.delta.entries
        inv = np.empty_like(t)
        states = np.arange(n)
        for x in range(n):
            inv[x, t[x].astype(np.intp)] = states
        result = KeyAutomaton(n, LatinSquare(n, inv))
        object.__setattr__(self, "_inverse", result)
        return result

    def quasigroup(self) -> Quasigroup:
        """The quasigroup with x*y = delta(y, x); shares this table. Cached."""
        cached = getattr(self, "_qg", None)
        if cached is None:
            cached = Quasigroup(self.delta)
            object.__setattr__(self, "_qg", cached)
        return cached


def reverse_run(a_inv: KeyAutomaton, b_n: int, w: Sequence[int]) -> int:
    """Decryption kernel: last state of running the reversed word on A^-1."""
    if len(w) == 0:
        raise EmptyInput("reverse_run needs a nonempty word")
    return a_inv.last_state(b_n, list(reversed(list(w))))
