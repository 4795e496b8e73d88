"""Seeded random inputs for tests and the command line.

Everything is driven by random.Random(seed), so a seed pins the output
byte for byte across runs and platforms.  Weights are small random
integers normalized exactly, which keeps denominators and hence exact
arithmetic costs modest.  Families deliberately include empty events,
duplicate events, and zero-weight atoms, since those are the edge cases
the identities must survive.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .space import EventFamily, ZPlusPmf, make_space


def random_family(
    seed: int, max_atoms: int = 14, max_events: int = 10, min_events: int = 0
) -> EventFamily:
    """Seeded family: 1..max_atoms atoms, min_events..max_events events."""
    if max_atoms < 1:
        raise ValueError("max_atoms must be >= 1")
    if not 0 <= min_events <= max_events:
        raise ValueError("need 0 <= min_events <= max_events")
    rng = random.Random(f"family:{seed}")
    natoms = rng.randint(1, max_atoms)
    raw = [rng.randint(0, 8) for _ in range(natoms)]
    if not any(raw):
        raw[rng.randrange(natoms)] = 1
    total = sum(raw)
    weights = [Fraction(x, total) for x in raw]
    n = rng.randint(min_events, max_events)
    events = []
    for _ in range(n):
        density = rng.uniform(0.15, 0.75)
        events.append([a for a in range(natoms) if rng.random() < density])
    return EventFamily.from_indices(make_space(weights), events)


def random_explicit_pmf(seed: int, max_support: int = 12) -> ZPlusPmf:
    """Seeded pmf on {0, ..., support-1} with exact rational weights."""
    if max_support < 1:
        raise ValueError("max_support must be >= 1")
    rng = random.Random(f"pmf:{seed}")
    support = rng.randint(1, max_support)
    raw = [rng.randint(0, 9) for _ in range(support)]
    if not any(raw):
        raw[rng.randrange(support)] = 1
    total = sum(raw)
    return ZPlusPmf.explicit([Fraction(x, total) for x in raw])
