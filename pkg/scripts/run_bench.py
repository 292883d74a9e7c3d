#!/usr/bin/env python3
"""Generate a throwaway key and benchmark encryption throughput across block lengths.

The block length m is the number of keystream symbols consumed per plaintext
symbol, so throughput should fall roughly linearly in m; m=1 is the fast
configuration.
"""

import sys
import tempfile
from pathlib import Path

from lsqcipher.cli import main


def run():
    with tempfile.TemporaryDirectory() as tmp:
        key = Path(tmp) / "bench.key"
        code = main(["keygen", "-n", "256", "--out", str(key)])
        if code:
            return code
        return main(["bench", "--key", str(key),
                     "--sizes", str(16 << 20), "--m-list", "1,2,4,8,16"])


if __name__ == "__main__":
    sys.exit(run())
