/** Canned query templates offered in the UI next to the free-text box.
 * `{dataset}` is substituted with the selected dataset name. */

export interface QueryTemplate {
  name: string;
  description: string;
  text: string;
}

export const TEMPLATES: QueryTemplate[] = [
  {
    name: "Path exploration (social)",
    description:
      "Summarize everything between two people within 4 hops, hubs = top-degree vertices",
    text:
      "SELECT TopMaxDegreeVertices(G', 2) " +
      "FROM Subgraph({dataset}, kristy, bingfish, 4) G' " +
      "GROUP BY Betweeness(G'.x, G'.y) " +
      "SUMMARIZE BY vertexCount, relationshipType, relationshipStrength",
  },
  {
    name: "Whole-graph overview",
    description: "Top-degree hubs over the full dataset with grouped measure sums",
    text:
      "SELECT TopMaxDegreeVertices(G, 8) FROM {dataset} G " +
      "GROUP BY Betweeness(G.x, G.y) " +
      "SUMMARIZE BY vertexCount, SumVMrByVGrpEGrp, SumEMrByVGrpEGrp",
  },
  {
    name: "Central hubs (closeness)",
    description: "Hubs chosen by closeness centrality instead of degree",
    text:
      "SELECT TopCloseness(G, 6) FROM {dataset} G " +
      "GROUP BY Betweeness(G.x, G.y) " +
      "SUMMARIZE BY vertexCount, count, closeness",
  },
  {
    name: "Attribute slice",
    description: "Hubs = every vertex in group 0, bounded to 3-hop neighborhoods",
    text:
      "SELECT AttrEquals(v_grp, 0) FROM {dataset} G " +
      "GROUP BY Betweeness(G.x, G.y, 3) " +
      "SUMMARIZE BY vertexCount, SumVMrByVGrpEGrp",
  },
];

export function instantiate(template: QueryTemplate, dataset: string): string {
  return template.text.replaceAll("{dataset}", dataset);
}
