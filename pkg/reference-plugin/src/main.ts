/**
 * Entry point: configure the pattern rule from flags and serve stdin/stdout.
 *
 * Usage: node dist/main.js --pattern N-C [--positive 0.9] [--base 0.1]
 *
 * This is the reference implementation of the scoring protocol; a learned
 * model slots in by replacing `scoreGraph` with real inference while keeping
 * the serve loop untouched.
 */

import { parsePatternSpec } from "./matcher.js";
import { serve, ScorerConfig } from "./protocol.js";

function parseArgs(argv: string[]): ScorerConfig {
  let spec: string | undefined;
  let positive = 0.9;
  let base = 0.1;
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    switch (flag) {
      case "--pattern":
        spec = value;
        i++;
        break;
      case "--positive":
        positive = Number(value);
        i++;
        break;
      case "--base":
        base = Number(value);
        i++;
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (spec === undefined) {
    throw new Error("--pattern is required");
  }
  for (const score of [positive, base]) {
    if (!Number.isFinite(score) || score < 0 || score > 1) {
      throw new Error(`scores must lie in [0, 1], got ${score}`);
    }
  }
  return { pattern: parsePatternSpec(spec), positiveScore: positive, baseScore: base };
}

async function main(): Promise<void> {
  let config: ScorerConfig;
  try {
    config = parseArgs(process.argv.slice(2));
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n`);
    process.exit(2);
  }
  await serve(config, process.stdin, process.stdout);
}

void main();
