import io
import itertools
import os
from pathlib import Path

import pytest
from hypothesis import strategies as st

from commimmune import Graph, Partition, load_edge_list

# Two triangles {a,b,c} and {d,e,f} joined by the bridge edge c-d.
TRIANGLES_TEXT = "a b\na c\nb c\nd e\nd f\ne f\nc d\n"

# 21-node, four-community network used as the hand-built ranking anchor:
# C1 = n1..n8 with bridges n2, n4, n5; C2 = n9..n13; C3 = n14..n18;
# C4 = n19..n21. n5 reaches C2, C3 and C4; n10 mirrors n5's 3+3 degree
# split with all externals into C1; n6 and n16 both have four internal
# links in communities of size 8 and 5.
TOY_EDGES_TEXT = "\n".join(
    [
        # C1 internal
        "n6 n1", "n6 n3", "n6 n7", "n6 n8",
        "n5 n1", "n5 n3", "n5 n7",
        "n2 n1", "n2 n3", "n2 n7", "n2 n8",
        "n4 n1", "n4 n3", "n4 n7", "n4 n8",
        # C2 internal
        "n10 n9", "n10 n11", "n10 n13", "n12 n9", "n12 n11", "n11 n13",
        # C3 internal
        "n16 n14", "n16 n15", "n16 n17", "n16 n18", "n14 n17", "n15 n18",
        # C4 internal
        "n19 n20", "n19 n21", "n20 n21",
        # cross-community
        "n10 n2", "n10 n4", "n10 n5",
        "n5 n15", "n5 n19", "n2 n20", "n4 n17", "n12 n14",
    ]
) + "\n"

TOY_COMMUNITY = {f"n{i}": 0 for i in range(1, 9)}
TOY_COMMUNITY.update({f"n{i}": 1 for i in range(9, 14)})
TOY_COMMUNITY.update({f"n{i}": 2 for i in range(14, 19)})
TOY_COMMUNITY.update({f"n{i}": 3 for i in range(19, 22)})


def graph_from_text(text: str) -> Graph:
    g, _ = load_edge_list(io.StringIO(text))
    return g


def clique_pair(k: int = 8, bridged: bool = True) -> Graph:
    """Two k-cliques, optionally joined by one edge between nodes k-1 and k."""
    edges = list(itertools.combinations(range(k), 2))
    edges += [(k + i, k + j) for i, j in itertools.combinations(range(k), 2)]
    if bridged:
        edges.append((k - 1, k))
    return Graph.from_edges(2 * k, edges)


def data_file(name: str) -> Path | None:
    """Locate a user-supplied dataset, or None if it is not present."""
    roots = [Path(os.environ.get("COMMIMMUNE_DATA_DIR", "")), Path(__file__).parent.parent / "data"]
    for root in roots:
        if root and (root / name).is_file():
            return root / name
    return None


@pytest.fixture
def two_triangles():
    g = graph_from_text(TRIANGLES_TEXT)
    return g, Partition.from_assignment([0, 0, 0, 1, 1, 1])


@pytest.fixture
def toy_network():
    g = graph_from_text(TOY_EDGES_TEXT)
    assign = [TOY_COMMUNITY[g.label_of(i)] for i in range(g.node_count)]
    return g, Partition.from_assignment(assign)


@st.composite
def graphs_st(draw, min_n: int = 1, max_n: int = 16):
    n = draw(st.integers(min_n, max_n))
    if n >= 2:
        pairs = list(itertools.combinations(range(n), 2))
        edges = draw(st.lists(st.sampled_from(pairs), max_size=min(len(pairs), 48)))
    else:
        edges = []
    return Graph.from_edges(n, set(edges))


@st.composite
def graph_partition_st(draw, min_n: int = 1, max_n: int = 16, max_communities: int = 6):
    g = draw(graphs_st(min_n=min_n, max_n=max_n))
    k = draw(st.integers(1, max_communities))
    assign = draw(st.lists(st.integers(0, k - 1), min_size=g.node_count, max_size=g.node_count))
    return g, Partition.from_assignment(assign)
