#!/usr/bin/env python3
"""Known-plaintext attack on the classical leader cipher, then the contrast run.

First harvests Cayley-table cells from known pairs and decrypts a held-out
ciphertext without the key; then feeds keystream-cipher transcripts to the
same learning rule, which fails with InconsistentPairs because transitions
there are position-dependent.
"""

import sys

from lsqcipher.cli import main


def run():
    print("== leader cipher: known-plaintext table recovery ==")
    code = main(["attack-demo", "-n", "16", "--messages", "200", "--length", "64"])
    if code:
        return code
    print()
    print("== same learning rule vs the keystream cipher ==")
    return main(["attack-demo", "-n", "16", "--messages", "8", "--length", "64",
                 "--contrast"])


if __name__ == "__main__":
    sys.exit(run())
