/**
 * Labeled-graph pattern matching for the reference scorer.
 *
 * Semantics mirror the host's builtin pattern classifier exactly: a pattern
 * is present when an injective map of its atoms into the graph exists that
 * respects elements (the pattern element "*" matches anything), ignores
 * charges, and sends every pattern bond onto some bond of the graph,
 * whatever its order. Disconnected patterns are matched component by
 * component under one shared injectivity constraint.
 */

export interface GraphNode {
  id: number;
  element: string;
  charge?: number;
}

export interface GraphEdge {
  u: number;
  v: number;
  order?: unknown;
}

export interface GraphDoc {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface Pattern {
  elements: string[]; // element per pattern atom, index = atom id
  edges: Array<[number, number]>;
}

/** Parse an element-adjacency spec like "N-C" or "C1-O1,C1-N1". */
export function parsePatternSpec(spec: string): Pattern {
  const atoms = new Map<string, number>();
  const elements: string[] = [];
  const edgeSet = new Set<string>();
  const edges: Array<[number, number]> = [];

  const atomId = (rawToken: string): number => {
    const token = rawToken.trim();
    const element = token.replace(/[0-9]+$/, "");
    const valid =
      element.length > 0 && (element === "*" || /^[A-Z]/.test(element));
    if (!valid) {
      throw new Error(`bad atom token ${JSON.stringify(token)} in pattern spec`);
    }
    let id = atoms.get(token);
    if (id === undefined) {
      id = atoms.size;
      atoms.set(token, id);
      elements.push(element);
    }
    return id;
  };

  for (const rawPart of spec.split(",")) {
    const part = rawPart.trim();
    if (!part) {
      throw new Error(`empty bond in pattern spec ${JSON.stringify(spec)}`);
    }
    const tokens = part.split("-");
    if (tokens.length === 1) {
      atomId(tokens[0]);
      continue;
    }
    for (let i = 0; i + 1 < tokens.length; i++) {
      const u = atomId(tokens[i]);
      const v = atomId(tokens[i + 1]);
      if (u === v) {
        throw new Error(`bond ${JSON.stringify(part)} joins an atom to itself`);
      }
      const key = u < v ? `${u}:${v}` : `${v}:${u}`;
      if (!edgeSet.has(key)) {
        edgeSet.add(key);
        edges.push(u < v ? [u, v] : [v, u]);
      }
    }
  }
  return { elements, edges };
}

interface HostView {
  ids: number[];
  elementOf: Map<number, string>;
  adjacency: Map<number, Set<number>>;
}

function hostView(doc: GraphDoc): HostView {
  const elementOf = new Map<number, string>();
  const adjacency = new Map<number, Set<number>>();
  for (const node of doc.nodes) {
    elementOf.set(node.id, node.element);
    adjacency.set(node.id, new Set());
  }
  for (const edge of doc.edges) {
    adjacency.get(edge.u)?.add(edge.v);
    adjacency.get(edge.v)?.add(edge.u);
  }
  return { ids: doc.nodes.map((n) => n.id), elementOf, adjacency };
}

function patternComponents(pattern: Pattern): number[][] {
  const n = pattern.elements.length;
  const neighbors: number[][] = Array.from({ length: n }, () => []);
  for (const [u, v] of pattern.edges) {
    neighbors[u].push(v);
    neighbors[v].push(u);
  }
  const seen = new Array<boolean>(n).fill(false);
  const components: number[][] = [];
  for (let start = 0; start < n; start++) {
    if (seen[start]) continue;
    // DFS order: every atom after the first follows an already-placed neighbor
    const order = [start];
    seen[start] = true;
    const stack = [start];
    while (stack.length > 0) {
      const u = stack.pop()!;
      for (const v of neighbors[u]) {
        if (!seen[v]) {
          seen[v] = true;
          order.push(v);
          stack.push(v);
        }
      }
    }
    components.push(order);
  }
  // larger components first prunes faster
  components.sort((a, b) => b.length - a.length);
  return components;
}

/** True when the pattern embeds into the graph (monomorphism, charges ignored). */
export function hasEmbedding(pattern: Pattern, doc: GraphDoc): boolean {
  if (pattern.elements.length === 0) return true;
  if (pattern.elements.length > doc.nodes.length) return false;
  const host = hostView(doc);
  const patternNeighbors: number[][] = Array.from(
    { length: pattern.elements.length },
    () => [],
  );
  for (const [u, v] of pattern.edges) {
    patternNeighbors[u].push(v);
    patternNeighbors[v].push(u);
  }
  const order = patternComponents(pattern).flat();
  const assignment = new Map<number, number>();
  const used = new Set<number>();

  const compatible = (p: number, h: number): boolean => {
    const want = pattern.elements[p];
    const have = host.elementOf.get(h);
    return want === "*" || want === have;
  };

  const extend = (depth: number): boolean => {
    if (depth === order.length) return true;
    const p = order[depth];
    const mapped = patternNeighbors[p].filter((q) => assignment.has(q));
    let candidates: Iterable<number>;
    if (mapped.length > 0) {
      candidates = host.adjacency.get(assignment.get(mapped[0])!) ?? [];
    } else {
      candidates = host.ids;
    }
    for (const h of candidates) {
      if (used.has(h) || !compatible(p, h)) continue;
      let ok = true;
      for (const q of mapped) {
        if (!host.adjacency.get(h)?.has(assignment.get(q)!)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assignment.set(p, h);
      used.add(h);
      if (extend(depth + 1)) return true;
      assignment.delete(p);
      used.delete(h);
    }
    return false;
  };

  return extend(0);
}
