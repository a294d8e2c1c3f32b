"""Measured per-backend constants, frozen from corpus runs on this tree.

self_drop_min_frac: lower bound on (k(x) - k(x|x)) / k(x) for
incompressible x of >= 64 KiB.  lzma measures ~0.9977 (its dictionary
spans the doubled input); bz2 measures ~0.757 (block sorting keeps a
constant-fraction overhead on doubled data).

ind_drop_max_frac: upper bound on directional drop / (8 |x|) for
independent random x, y (measured <= 0.005 on both backends).

subadd_slack_bits: allowed overshoot in k(xy) <= k(x) + k(y) + slack for
independent blocks (measured negative on both backends).

symmetry_corpus_max_bits: bound on |lhs - rhs| over a seeded corpus of
random same-length pairs (measured <= ~600 bits at 16 KiB).
"""

FIXTURES = {
    "lzma": {
        "empty_bits": 256,
        "self_drop_min_frac": 0.95,
        "ind_drop_max_frac": 0.02,
        "subadd_slack_bits": 4096,
        "symmetry_corpus_max_bits": 2048,
    },
    "bz2": {
        "empty_bits": 112,
        "self_drop_min_frac": 0.70,
        "ind_drop_max_frac": 0.02,
        "subadd_slack_bits": 4096,
        "symmetry_corpus_max_bits": 2048,
    },
}
