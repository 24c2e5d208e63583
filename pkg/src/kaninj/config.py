"""Runtime knobs.

The only global knob is the enumeration cap: a bound on the number of
backtracking nodes any single monotone-map search may visit.  It guards the
|X|^|A| blowup without punishing searches that prune well.  The environment
variable KANINJ_SIZE_CAP overrides the default.
"""

import os

DEFAULT_SIZE_CAP = 10_000_000


def size_cap() -> int:
    raw = os.environ.get("KANINJ_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_SIZE_CAP
    return value if value > 0 else DEFAULT_SIZE_CAP
