"""
Exploring a social network as a summary graph
=============================================

A 30-user network is too dense to read as raw vertices and edges.  This
walkthrough asks one question -- "how are kristy and bingfish connected?" --
and gets back a four-vertex summary graph whose edges carry aggregate
tables instead of raw adjacency, then zooms into the most interesting edge.
"""

from hubgraph import execute, parse, zoom_edge
from hubgraph.query import Catalog
from hubgraph.datasets import build_social_sample

# register the bundled sample: 30 users, 90 directed labeled edges
catalog = Catalog()
graph = build_social_sample()
catalog.register_dataset("social", graph)
print(f"dataset: {graph.n_vertices} users, {graph.n_edges} relationships")

# the question, written in the query language:
#   - restrict to the 4-hop neighborhood spanned by kristy and bingfish
#   - pick the 2 highest-degree users in it as hubs
#   - group everything else into the induced subgraphs between hub pairs
#   - summarize each subgraph by size, path labels, and tie strength
query = parse(
    "SELECT TopMaxDegreeVertices(G', 2) "
    "FROM Subgraph(social, kristy, bingfish, 4) G' "
    "GROUP BY Betweeness(G'.x, G'.y) "
    "SUMMARIZE BY vertexCount, relationshipType, relationshipStrength"
)

h = execute(query, catalog)

print("\nhubs (the two anchors plus the two selected celebrities):")
for vid, name, provenance in h.hubs:
    print(f"  {name:10s} vid={vid:<3d} ({provenance})")

print("\nsummary edges, strongest first:")
for (x, y), e in sorted(h.edges.items(), key=lambda kv: -kv[1].strength):
    names = dict((vid, name) for vid, name, _ in h.hubs)
    path = " > ".join(e.summaries["relationshipType"]) or "-"
    print(f"  {names[x]:10s} -> {names[y]:10s} "
          f"subgraph={e.summaries['vertexCount']:2d} users  "
          f"strength={e.strength:5.2f}  width={e.width_band:.1f}  via {path}")

# the kristy -> karlfun edge hides a 19-user subgraph; zoom replaces the
# whole scene with a summary of just that subgraph, re-selecting hubs inside
child = zoom_edge(h, 0, 3, catalog)
print(f"\nzoomed into kristy -> karlfun (parent {child.parent_id}):")
for vid, name, provenance in child.hubs:
    print(f"  {name:10s} ({provenance})")
print(f"child has {len(child.edges)} summary edges over "
      f"{child.ctx['view'].n_vertices} vertices")
