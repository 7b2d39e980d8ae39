"""Small numeric helpers shared across modules.

All reductions here use a fixed evaluation order, so results are bit-identical
no matter how many worker threads feed them.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor

from .errors import SingularParameters


def is_mp(x) -> bool:
    """True when x is an mpmath number (kept at full precision throughout)."""
    return type(x).__module__.startswith("mpmath")


def any_mp(*values) -> bool:
    return any(is_mp(v) for v in values)


def prod(values):
    """Plain left-to-right product; empty product is 1."""
    out = 1
    for v in values:
        out = out * v
    return out


def prod_ratio(numerators, denominators, tol: float = 0.0, what: str = "denominator"):
    """Evaluate prod(numerators) / prod(denominators) without over/underflow.

    Machine numbers are accumulated as log-magnitude plus unit phase and
    re-exponentiated at the end; mpmath inputs are multiplied directly (their
    exponent range makes log-space pointless).  A denominator of magnitude
    <= tol raises SingularParameters.
    """
    numerators = list(numerators)
    denominators = list(denominators)
    for d in denominators:
        if abs(d) <= tol:
            raise SingularParameters(f"{what} vanished: |{d}| <= {tol}")
    if any_mp(*numerators, *denominators):
        return prod(numerators) / prod(denominators)
    logmag = 0.0
    phase = complex(1.0)
    for v in numerators:
        v = complex(v)
        a = abs(v)
        if a == 0.0:
            return 0.0j
        logmag += math.log(a)
        phase *= v / a
    for v in denominators:
        v = complex(v)
        a = abs(v)
        if a == 0.0:
            raise SingularParameters(f"{what} vanished exactly")
        logmag -= math.log(a)
        phase /= v / a
    return phase * cmath.exp(logmag)


def rel_err(a, b, floor: float = 1e-12) -> float:
    """Relative difference |a-b| / max(|a|,|b|); 0 when both are below floor.

    The floor keeps structural zeros (exact 0 vs roundoff-sized oracle value)
    from reporting a spurious 100% error.
    """
    a = complex(a)
    b = complex(b)
    m = max(abs(a), abs(b))
    if m <= floor:
        return 0.0
    return abs(a - b) / m


def tree_sum(values):
    """Sum by a fixed binary tree; deterministic regardless of thread count."""
    vals = list(values)
    if not vals:
        return 0.0j
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def ordered_map(fn, items, threads: int = 1):
    """Map preserving item order; optionally fanned out over a thread pool."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
