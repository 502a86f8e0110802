from hypothesis import strategies as st

from matchstream.graph import Matching, WeightedGraph


@st.composite
def weighted_graphs(draw, min_n=2, max_n=8, max_weight=20, min_m=0):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(
        st.lists(
            st.sampled_from(pairs), unique=True, min_size=min(min_m, len(pairs))
        )
    )
    top = min(max_weight, max(n, 2) ** 4)
    weights = draw(
        st.lists(
            st.integers(min_value=1, max_value=top),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    return WeightedGraph(n, [(u, v, w) for (u, v), w in zip(chosen, weights)])


@st.composite
def bipartite_graphs(draw, max_side=6):
    left = draw(st.integers(min_value=1, max_value=max_side))
    right = draw(st.integers(min_value=1, max_value=max_side))
    pairs = [(u, left + v) for u in range(left) for v in range(right)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True))
    return WeightedGraph(left + right, [(u, v, 1) for u, v in chosen])


@st.composite
def graphs_with_matching(draw, **graph_kwargs):
    graph = draw(weighted_graphs(**graph_kwargs))
    order = draw(st.permutations(graph.edges))
    keep = draw(st.lists(st.booleans(), min_size=len(order), max_size=len(order)))
    matching = Matching()
    for edge, flag in zip(order, keep):
        if flag and matching.can_add(edge):
            matching.add(edge)
    return graph, matching
