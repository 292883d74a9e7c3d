"""The two equivalent stream-cipher engines.

FA form: c_i is the last state reached by running keystream block r_i from
state p_i; decryption runs the reversed block on the inverse automaton.
QG form: c_i folds the block through the quasigroup product; decryption
folds through left division. Both produce identical ciphertexts from
identical key material and stream state.
"""

from __future__ import annotations

import numpy as np

from .automaton import KeyAutomaton
from .errors import NonceReuse
from .keystream import KeystreamReader, KeystreamSpec
from .latin import Quasigroup, fold_left_div, fold_mul

ENGINES = ("fa", "qg")


class CipherSession:
    """Single-message cipher state: key views plus one keystream reader.

    A session is sequential: its stream position advances with every symbol.
    Message-level calls claim the whole session; starting a second message
    on the same (seed, nonce) raises NonceReuse.
    """

    def __init__(self, key: KeyAutomaton, seed: bytes, nonce: bytes, m: int,
                 engine: str = "fa"):
        if engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        self.key = key
        self.inverse_key = key.invert()
        self.quasigroup = key.quasigroup()
        self.engine = engine
        self.m = m
        self.spec = KeystreamSpec(seed=seed, nonce=nonce, m=m, order=key.order)
        self.stream = KeystreamReader(self.spec)
        self._used = False

    # --- per-symbol kernels (advance the stream by one block each) ---

    def encrypt_symbol_fa(self, p: int) -> int:
        r = self.stream.next_block()
        return self.key.last_state(p, r)

    def decrypt_symbol_fa(self, c: int) -> int:
        r = self.stream.next_block()
        return self.inverse_key.last_state(c, r[::-1])

    def encrypt_symbol_qg(self, p: int) -> int:
        block = self.stream.next_block()
        return fold_mul(self.quasigroup, block, p)

    def decrypt_symbol_qg(self, c: int) -> int:
        block = self.stream.next_block()
        return fold_left_div(self.quasigroup, block, c)

    def encrypt_symbol(self, p: int) -> int:
        return self.encrypt_symbol_fa(p) if self.engine == "fa" else self.encrypt_symbol_qg(p)

    def decrypt_symbol(self, c: int) -> int:
        return self.decrypt_symbol_fa(c) if self.engine == "fa" else self.decrypt_symbol_qg(c)

    # --- message level ---

    def _claim(self):
        if self._used:
            raise NonceReuse("session already processed a message; use a fresh nonce")
        self._used = True

    def encrypt_message(self, plaintext) -> np.ndarray:
        """Encrypt a whole symbol sequence; symbol i consumes stream block i."""
        self._claim()
        p = _as_symbols(plaintext, self.key.order)
        ks = self.stream.take(len(p) * self.m).reshape(len(p), self.m)
        if self.engine == "fa":
            return _fa_transform(self.key, p, ks, reverse=False)
        return _qg_encrypt(self.quasigroup, p, ks)

    def decrypt_message(self, ciphertext) -> np.ndarray:
        self._claim()
        c = _as_symbols(ciphertext, self.key.order)
        ks = self.stream.take(len(c) * self.m).reshape(len(c), self.m)
        if self.engine == "fa":
            return _fa_transform(self.inverse_key, c, ks, reverse=True)
        return _qg_decrypt(self.quasigroup, c, ks)


def _as_symbols(seq, order: int) -> np.ndarray:
    if isinstance(seq, np.ndarray):
        arr = seq
    elif isinstance(seq, (bytes, bytearray)):
        arr = np.frombuffer(bytes(seq), dtype=np.uint8)
    else:
        arr = np.asarray(list(seq), dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= order):
        raise ValueError(f"symbols out of range for order {order}")
    return arr.astype(np.intp, copy=False)


def _fa_transform(automaton: KeyAutomaton, start: np.ndarray, ks: np.ndarray,
                  reverse: bool) -> np.ndarray:
    """Run each keystream block from the matching start state, vectorized
    across message positions. `reverse` feeds blocks mirrored (decryption)."""
    n = automaton.order
    flat = automaton.delta.entries.reshape(-1)
    m = ks.shape[1]
    state = start
    cols = range(m - 1, -1, -1) if reverse else range(m)
    for j in cols:
        state = flat[ks[:, j].astype(np.intp) * n + state].astype(np.intp)
    return state.astype(automaton.delta.entries.dtype, copy=False)


def _qg_encrypt(q: Quasigroup, p: np.ndarray, ks: np.ndarray) -> np.ndarray:
    n = q.order
    flat = q.mul_flat
    acc = p
    for j in range(ks.shape[1]):
        acc = flat[ks[:, j].astype(np.intp) * n + acc].astype(np.intp)
    return acc.astype(flat.dtype, copy=False)


def _qg_decrypt(q: Quasigroup, c: np.ndarray, ks: np.ndarray) -> np.ndarray:
    n = q.order
    flat = q.left_div_flat
    acc = c
    for j in range(ks.shape[1] - 1, -1, -1):
        acc = flat[ks[:, j].astype(np.intp) * n + acc].astype(np.intp)
    return acc.astype(flat.dtype, copy=False)
