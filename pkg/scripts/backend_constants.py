#!/usr/bin/env python3
"""Measure the per-backend constants recorded in tests/fixtures_backends.py.

For each shipped compressor backend, prints the empty-input size, the
self-dependency drop fraction on doubled incompressible input, the
directional drop fraction on independent inputs, and the joint-vs-sum
slack.  Rerun after changing backends or their settings, and update the
fixtures if the floor/ceiling constants moved.

Example:
    python scripts/backend_constants.py --size 65536 --trials 5
"""

import argparse
import hashlib

from kextract import kproxy


def stream(seed: bytes, size: int) -> bytes:
    out = bytearray()
    counter = 0
    while len(out) < size:
        out.extend(hashlib.sha256(seed + counter.to_bytes(8, "big")).digest())
        counter += 1
    return bytes(out[:size])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=65536, help="input bytes")
    parser.add_argument("--trials", type=int, default=5)
    args = parser.parse_args()

    for name in sorted(kproxy.BACKENDS):
        comp = kproxy.BACKENDS[name]
        empty = kproxy.k_estimate(b"", comp)
        self_fracs, ind_fracs, slacks, sym = [], [], [], []
        for trial in range(args.trials):
            x = stream(b"x%d" % trial, args.size)
            y = stream(b"y%d" % trial, args.size)
            est_self = kproxy.dependency(x, x, comp, alpha=0)
            est_ind = kproxy.dependency(x, y, comp, alpha=0)
            self_fracs.append(est_self.alpha_x / est_self.kx)
            ind_fracs.append(est_ind.alpha_x / (8 * args.size))
            slacks.append(est_ind.kxy - est_ind.kx - est_ind.ky)
            sym.append(abs(est_ind.alpha_x - est_ind.alpha_y))
        print(f"backend {name}")
        print(f"  empty_bits            {empty}")
        print(f"  self_drop_frac        min {min(self_fracs):.4f}  max {max(self_fracs):.4f}")
        print(f"  ind_drop_frac         min {min(ind_fracs):.5f}  max {max(ind_fracs):.5f}")
        print(f"  subadd_slack_bits     min {min(slacks)}  max {max(slacks)}")
        print(f"  symmetry_abs_diff     max {max(sym)} bits")


if __name__ == "__main__":
    main()
