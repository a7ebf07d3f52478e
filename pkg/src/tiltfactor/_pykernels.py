"""Pure-Python convolution kernel (reference backend)."""
from __future__ import annotations

from collections import defaultdict


def convolve_dominant(rank, left, right):
    """Dominant part of the pointwise convolution of two weight multisets.

    ``left`` and ``right`` are sequences of ``(coords, mult)`` covering full
    weight supports.  Returns ``{dominant weight: multiplicity}``.
    """
    out = defaultdict(int)
    # bucket right by nothing fancy; prefilter per left weight
    for a, ma in left:
        neg = [-x for x in a]
        for b, mb in right:
            for i in range(rank):
                if b[i] < neg[i]:
                    break
            else:
                out[tuple(x + y for x, y in zip(a, b))] += ma * mb
    return dict(out)
