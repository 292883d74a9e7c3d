"""Latin squares and quasigroups: validation, seeded generation, divisions, folds.

A Latin square of order n doubles as the transition table of a key automaton
and as the Cayley table of a quasigroup; both views share one array whose
rows are indexed by the left operand (= the automaton input).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    ColViolation,
    DimensionMismatch,
    EmptyKeyBlock,
    OrderTooSmall,
    RowViolation,
)

MAX_ORDER = 65536


def symbol_dtype(order: int) -> np.dtype:
    """Storage width for symbols: one byte up to order 256, two bytes beyond."""
    return np.dtype(np.uint8) if order <= 256 else np.dtype(np.uint16)


@dataclass(frozen=True)
class LatinSquare:
    """An n x n table in which every row and every column is a permutation.

    Instances are only produced by :func:`validate_latin` or
    :func:`generate_latin`, so holding a LatinSquare is a certificate.
    The entries array is read-only.
    """

    order: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.entries.setflags(write=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.entries, other.entries)

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]


def validate_latin(table: Sequence[Sequence[int]] | np.ndarray) -> LatinSquare:
    """Certify a table as a Latin square, checking all 2n lines.

    Raises DimensionMismatch for non-square input, OrderTooSmall for n < 2,
    and RowViolation/ColViolation naming the first duplicated symbol.
    """
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square table, got shape {arr.shape}")
    n = arr.shape[0]
    if n < 2:
        raise OrderTooSmall(f"order {n} < 2")
    if n > MAX_ORDER:
        raise DimensionMismatch(f"order {n} > {MAX_ORDER} unsupported")
    if not np.issubdtype(arr.dtype, np.integer):
        raise DimensionMismatch("entries must be integers")
    if arr.min() < 0 or arr.max() >= n:
        raise DimensionMismatch(f"entries must lie in [0, {n})")
    for i in range(n):
        dup = _first_duplicate(arr[i, :])
        if dup is not None:
            raise RowViolation(i, dup)
    for j in range(n):
        dup = _first_duplicate(arr[:, j])
        if dup is not None:
            raise ColViolation(j, dup)
    return LatinSquare(n, np.ascontiguousarray(arr, dtype=symbol_dtype(n)))


def _first_duplicate(line: np.ndarray) -> int | None:
    seen = np.zeros(len(line), dtype=bool)
    for v in line:
        if seen[v]:
            return int(v)
        seen[v] = True
    return None


def is_latin(table) -> bool:
    try:
        validate_latin(table)
        return True
    except (RowViolation, ColViolation, DimensionMismatch, OrderTooSmall):
        return False


def _seeded_rng(order: int, seed: bytes, tag: bytes) -> random.Random:
    digest = hashlib.sha256(tag + order.to_bytes(4, "big") + seed).digest()
    return random.Random(int.from_bytes(digest, "big"))


def generate_latin(
    order: int,
    seed: bytes,
    walk_steps: int = 0,
    *,
    _perms: tuple[Sequence[int], Sequence[int], Sequence[int]] | None = None,
) -> LatinSquare:
    """Deterministically derive a Latin square from (order, seed, walk_steps).

    Construction: a seeded isotopy of the cyclic table (x + a) mod n —
    independent permutations of rows, columns, and symbols — optionally
    followed by `walk_steps` Jacobson-Matthews moves to widen the sampled
    class. Uniformity over all Latin squares is not claimed.

    `_perms` is a test hook overriding the three sampled permutations.
    """
    if order < 2:
        raise OrderTooSmall(f"order {order} < 2")
    if order > MAX_ORDER:
        raise DimensionMismatch(f"order {order} > {MAX_ORDER} unsupported")
    if _perms is None:
        rng = _seeded_rng(order, seed, b"lsq-isotopy")
        row_p = list(range(order))
        col_p = list(range(order))
        sym_p = list(range(order))
        rng.shuffle(row_p)
        rng.shuffle(col_p)
        rng.shuffle(sym_p)
    else:
        row_p, col_p, sym_p = (list(p) for p in _perms)
    rows = np.asarray(row_p, dtype=np.int64)
    cols = np.asarray(col_p, dtype=np.int64)
    syms = np.asarray(sym_p, dtype=np.int64)
    base = (rows[:, None] + cols[None, :]) % order
    table = syms[base]
    if walk_steps > 0:
        walk_rng = _seeded_rng(order, seed, b"lsq-jm-walk")
        table = _jacobson_matthews(table, walk_steps, walk_rng)
    return LatinSquare(order, np.ascontiguousarray(table, dtype=symbol_dtype(order)))


def _jacobson_matthews(square: np.ndarray, steps: int, rng: random.Random) -> np.ndarray:
    """Jacobson-Matthews random walk on the 0/1 incidence cube.

    Runs `steps` moves and then keeps moving, if necessary, until the cube is
    proper again (no -1 cell).
    """
    n = square.shape[0]
    f = np.zeros((n, n, n), dtype=np.int8)
    for r in range(n):
        for c in range(n):
            f[r, c, square[r, c]] = 1
    improper: tuple[int, int, int] | None = None
    done = 0
    while done < steps or improper is not None:
        if improper is None:
            r = rng.randrange(n)
            c = rng.randrange(n)
            s = rng.randrange(n)
            while f[r, c, s] == 1:
                s = rng.randrange(n)
            r2 = int(np.flatnonzero(f[:, c, s] == 1)[0])
            c2 = int(np.flatnonzero(f[r, :, s] == 1)[0])
            s2 = int(np.flatnonzero(f[r, c, :] == 1)[0])
        else:
            r, c, s = improper
            r2 = int(rng.choice(np.flatnonzero(f[:, c, s] == 1)))
            c2 = int(rng.choice(np.flatnonzero(f[r, :, s] == 1)))
            s2 = int(rng.choice(np.flatnonzero(f[r, c, :] == 1)))
        f[r, c, s] += 1
        f[r, c2, s2] += 1
        f[r2, c, s2] += 1
        f[r2, c2, s] += 1
        f[r, c, s2] -= 1
        f[r, c2, s] -= 1
        f[r2, c, s] -= 1
        f[r2, c2, s2] -= 1
        improper = (r2, c2, s2) if f[r2, c2, s2] < 0 else None
        done += 1
    return np.argmax(f, axis=2).astype(square.dtype)


class Quasigroup:
    """A quasigroup (A, *) with x*y read from a Latin Cayley table.

    Left and right divisions are O(1) via inverse-permutation tables built
    once at construction.
    """

    __slots__ = ("order", "cayley", "_row_inv", "_col_inv")

    def __init__(self, cayley: LatinSquare):
        self.order = cayley.order
        self.cayley = cayley
        n = self.order
        t = cayley.entries
        dt = symbol_dtype(n)
        # _row_inv[a][c] = the unique b with a*b = c
        row_inv = np.empty((n, n), dtype=dt)
        cols = np.arange(n)
        for a in range(n):
            row_inv[a, t[a].astype(np.intp)] = cols
        # _col_inv[a][c] = the unique b with b*a = c
        col_inv = np.empty((n, n), dtype=dt)
        for a in range(n):
            col_inv[a, t[:, a].astype(np.intp)] = cols
        row_inv.setflags(write=False)
        col_inv.setflags(write=False)
        self._row_inv = row_inv
        self._col_inv = col_inv

    def mul(self, x: int, y: int) -> int:
        """x * y"""
        return int(self.cayley.entries[x, y])

    def left_div(self, a: int, c: int) -> int:
        """a \\ c: the unique b with a*b = c."""
        return int(self._row_inv[a, c])

    def right_div(self, c: int, a: int) -> int:
        """c / a: the unique b with b*a = c."""
        return int(self._col_inv[a, c])

    def left_inverse(self) -> "Quasigroup":
        """The quasigroup (A, \\) whose table is (a, c) -> a \\ c."""
        return Quasigroup(validate_latin(self._row_inv))

    # flat views used by the vectorized cipher hot loops
    @property
    def mul_flat(self) -> np.ndarray:
        return self.cayley.entries.reshape(-1)

    @property
    def left_div_flat(self) -> np.ndarray:
        return self._row_inv.reshape(-1)


def fold_mul(q: Quasigroup, ks: Sequence[int], p: int) -> int:
    """k_m * ( ... * (k_2 * (k_1 * p)) ... ) over a keystream block."""
    if len(ks) == 0:
        raise EmptyKeyBlock("fold over empty keystream block")
    acc = p
    for k in ks:
        acc = q.mul(k, acc)
    return acc


def fold_left_div(q: Quasigroup, ks: Sequence[int], c: int) -> int:
    """k_1 \\ ( ... \\ (k_{m-1} \\ (k_m \\ c)) ... ); inverts fold_mul."""
    if len(ks) == 0:
        raise EmptyKeyBlock("fold over empty keystream block")
    acc = c
    for k in reversed(ks):
        acc = q.left_div(k, acc)
    return acc
