"""Small graph builders and hypothesis strategies."""
from hypothesis import strategies as st

from phcakernel.graph import Graph


def cycle(n, start=0):
    return Graph(range(start, start + n), [(start + i, start + (i + 1) % n) for i in range(n)])


def path(n, start=0):
    return Graph(range(start, start + n), [(start + i, start + i + 1) for i in range(n - 1)])


def complete(n, start=0):
    return Graph(range(start, start + n), [(start + i, start + j) for i in range(n) for j in range(i + 1, n)])


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    p = draw(st.sampled_from([0.2, 0.35, 0.5, 0.7]))
    keep = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
    return Graph(range(n), [e for e, r in zip(pairs, keep) if r < p])
