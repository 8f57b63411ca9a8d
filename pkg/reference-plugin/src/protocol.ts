/**
 * Line-delimited JSON scoring protocol, version "pi-explain/1".
 *
 * The plugin speaks first with a handshake record, then answers every
 * request line with exactly one id-matched response line, in request order.
 * A line that cannot be parsed or lacks the required fields produces an
 * error record and the loop continues; nothing is accumulated per request,
 * so memory stays flat over arbitrarily long sessions.
 */

import { createInterface } from "node:readline";
import type { Readable, Writable } from "node:stream";
import { GraphDoc, Pattern, hasEmbedding } from "./matcher.js";

export const PROTOCOL_VERSION = "pi-explain/1";

export interface ScorerConfig {
  pattern: Pattern;
  positiveScore: number;
  baseScore: number;
}

export function scoreGraph(config: ScorerConfig, doc: GraphDoc): number {
  return hasEmbedding(config.pattern, doc) ? config.positiveScore : config.baseScore;
}

function isGraphDoc(value: unknown): value is GraphDoc {
  if (typeof value !== "object" || value === null) return false;
  const doc = value as Record<string, unknown>;
  return Array.isArray(doc.nodes) && Array.isArray(doc.edges);
}

export async function serve(
  config: ScorerConfig,
  input: Readable,
  output: Writable,
): Promise<void> {
  const writeLine = (record: unknown) => {
    output.write(JSON.stringify(record) + "\n");
  };
  writeLine({ protocol: PROTOCOL_VERSION });

  const lines = createInterface({ input, crlfDelay: Infinity });
  for await (const line of lines) {
    if (!line.trim()) continue;
    let parsed: unknown;
    try {
      parsed = JSON.parse(line);
    } catch {
      writeLine({ id: null, error: "malformed JSON request line" });
      continue;
    }
    const record = parsed as { id?: unknown; graph?: unknown };
    const id = typeof record.id === "string" ? record.id : null;
    if (id === null || !isGraphDoc(record.graph)) {
      writeLine({ id, error: "request needs a string id and a graph document" });
      continue;
    }
    writeLine({ id, score: scoreGraph(config, record.graph) });
  }
}
