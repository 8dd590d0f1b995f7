"""Default enumeration budgets.

Every budget fails loudly via :class:`hibiring.errors.SizeGuard`; nothing is
silently truncated.
"""

MAX_ELEMENTS = 20
MAX_BOX_VOLUME = 10_000_000
MAX_SEQUENCES = 10_000_000
MAX_IDEALS = 2**20
ORACLE_CAP = 9

# Environment override for the box-volume budget (used by the CLI).
ENV_MAX_BOX = "HIBI_MAX_BOX"
# Kernel backend selection: "numba", "numpy" or unset/"auto".
ENV_BACKEND = "HIBI_BACKEND"
