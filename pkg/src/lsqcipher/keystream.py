"""Deterministic keystream: uniform symbols over [0, n) from a ChaCha20 byte source.

The long-term 32-byte seed keys ChaCha20; a 12-byte per-message nonce gives
each message its own stream. Non-power-of-two orders use rejection sampling
on the generator words, so no symbol carries modulo bias; power-of-two
orders mask, and order 256 passes raw bytes through.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms

from .errors import InvalidSpec, StreamExhausted
from .latin import MAX_ORDER, symbol_dtype

SEED_BYTES = 32
NONCE_BYTES = 12

# 2^38 symbols per (seed, nonce); stays inside ChaCha20's 32-bit block counter.
SYMBOL_CAP = 1 << 38

_CHUNK = 1 << 16


@dataclass(frozen=True)
class KeystreamSpec:
    """Everything that determines the blocks r_1, r_2, ...

    A (seed, nonce) pair must never be reused across messages under the same
    key; the CLI's nonce policy enforces this, the library documents it.
    """

    seed: bytes
    nonce: bytes
    m: int
    order: int

    def __post_init__(self):
        if len(self.seed) != SEED_BYTES:
            raise InvalidSpec(f"seed must be {SEED_BYTES} bytes, got {len(self.seed)}")
        if len(self.nonce) != NONCE_BYTES:
            raise InvalidSpec(f"nonce must be {NONCE_BYTES} bytes, got {len(self.nonce)}")
        if self.m < 1:
            raise InvalidSpec("block length m must be >= 1")
        if not 2 <= self.order <= MAX_ORDER:
            raise InvalidSpec(f"order must be in [2, {MAX_ORDER}], got {self.order}")


def open_stream(spec: KeystreamSpec) -> "KeystreamReader":
    return KeystreamReader(spec)


class KeystreamReader:
    """Sequential reader over the symbol stream of one KeystreamSpec.

    Reading k then k' symbols yields the same symbols as one read of k + k';
    blocking is purely a view on the flat stream.
    """

    def __init__(self, spec: KeystreamSpec):
        self.spec = spec
        self.position = 0
        # cryptography's ChaCha20 nonce is 16 bytes: 4-byte counter || nonce
        chacha = algorithms.ChaCha20(spec.seed, b"\x00" * 4 + spec.nonce)
        self._enc = Cipher(chacha, mode=None).encryptor()
        n = spec.order
        self._dtype = symbol_dtype(n)
        self._width = self._dtype.itemsize
        self._pow2 = n & (n - 1) == 0
        space = 1 << (8 * self._width)
        self._limit = space - space % n
        self._buf = np.empty(0, dtype=self._dtype)

    def _raw_words(self, nbytes: int) -> np.ndarray:
        block = self._enc.update(b"\x00" * nbytes)
        if self._width == 1:
            return np.frombuffer(block, dtype=np.uint8)
        return np.frombuffer(block, dtype=">u2").astype(np.uint16)

    def _refill(self, want: int):
        n = self.spec.order
        parts = [self._buf]
        have = len(self._buf)
        while have < want:
            words = self._raw_words(max(_CHUNK, (want - have) * self._width))
            if self._pow2:
                accepted = words & (n - 1)  # identity when n fills the word
            else:
                kept = words[words < self._limit]
                accepted = (kept % n).astype(self._dtype)
            accepted = accepted.astype(self._dtype, copy=False)
            parts.append(accepted)
            have += len(accepted)
        self._buf = np.concatenate(parts)

    def take(self, count: int) -> np.ndarray:
        """The next `count` symbols of the flat stream."""
        if count < 0:
            raise ValueError("count must be nonnegative")
        if self.position + count > SYMBOL_CAP:
            raise StreamExhausted(f"per-nonce cap of {SYMBOL_CAP} symbols reached")
        if count > len(self._buf):
            self._refill(count)
        out, self._buf = self._buf[:count], self._buf[count:]
        self.position += count
        return out

    def next_block(self) -> np.ndarray:
        """The next keystream block r_i of length m."""
        return self.take(self.spec.m)
