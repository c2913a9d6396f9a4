"""Portable deterministic pseudo-random stream (splitmix64).

The generator is the public-domain splitmix64 mixer (reference C
implementation by Sebastiano Vigna).  It was chosen because it needs
nothing beyond 64-bit integer arithmetic, so any language reproduces the
stream bit for bit -- which is what makes instances regenerable from a
bare seed.  Known vector: seed 0 yields 0xE220A8397B1DCDAF first.
"""

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def next_u64(state):
    """Advance one step; return (output, new_state)."""
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return z ^ (z >> 31), state


def next_unit(state):
    """Uniform float in [0, 1) from the top 53 bits; return (value, new_state)."""
    u, state = next_u64(state)
    return (u >> 11) * 2.0 ** -53, state


class Stream:
    """Mutable convenience wrapper around the pure step functions."""

    __slots__ = ("state",)

    def __init__(self, seed):
        self.state = seed & _MASK64

    def u64(self):
        u, self.state = next_u64(self.state)
        return u

    def unit(self):
        v, self.state = next_unit(self.state)
        return v
