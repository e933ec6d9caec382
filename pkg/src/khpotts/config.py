"""Size caps, overridable through environment variables."""
import os

_DEFAULTS = {
    "max_crossings": 20,
    "max_homology_crossings": 12,
    "max_dr_crossings": 8,
    "max_edges": 24,
    "max_stosic_edges": 12,
    "max_spin_states": 10**7,
    "max_hilbert_dim": 10**7,
}


def cap(name: str) -> int:
    """Current value of cap ``name``; env var ``KHPOTTS_<NAME>`` wins."""
    env = os.environ.get("KHPOTTS_" + name.upper())
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError(f"cap {name} must be positive")
        return value
    return _DEFAULTS[name]


def all_caps() -> dict:
    return {name: cap(name) for name in _DEFAULTS}
