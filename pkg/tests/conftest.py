"""Shared hypothesis strategies for histogram-valued properties."""

from hypothesis import strategies as st

from relubound import Histogram


@st.composite
def histograms(draw, max_index=8, max_count=40):
    counts = draw(
        st.lists(st.integers(0, max_count), min_size=0, max_size=max_index + 1)
    )
    return Histogram(tuple(counts))


@st.composite
def dominated_pairs(draw, max_index=8, max_count=40):
    """(v, w) with v dominated by w.

    Start from w and repeatedly remove mass or shift it toward index 0;
    both moves can only shrink tail sums.
    """
    w = draw(histograms(max_index, max_count))
    counts = list(w.to_list())
    for j in range(len(counts) - 1, -1, -1):
        take = draw(st.integers(0, counts[j]))
        counts[j] -= take
        if j > 0 and take and draw(st.booleans()):
            counts[draw(st.integers(0, j - 1))] += draw(st.integers(0, take))
    return Histogram(tuple(counts)), w
