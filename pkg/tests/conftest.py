import random

import pytest


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def naive_delta(group, blocks):
    """Reference difference multiset: ordered pairs r - c over each block."""
    from collections import Counter
    acc = Counter()
    for b in blocks:
        for r in b:
            for c in b:
                if r != c:
                    acc[group.sub(r, c)] += 1
    return acc


def naive_pair_cover(points, blocks):
    """Reference pair-coverage map for an STS check."""
    from collections import Counter
    acc = Counter()
    for b in blocks:
        bs = sorted(b, key=points.index)
        for i in range(3):
            for j in range(i + 1, 3):
                acc[(bs[i], bs[j])] += 1
    return acc
