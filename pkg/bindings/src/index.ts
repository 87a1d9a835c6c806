/**
 * Node bindings for the morphotok hybrid morphological tokenizer.
 *
 * The bindings hold no tokenization logic: every call delegates to the
 * morphotok command-line interface, so outputs are identical to the core
 * implementation by construction. Only the public file formats (the lexicon
 * document's special-token order) are read directly.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface BoundToken {
  id: number;
  surface: string;
}

export interface MetricsReport {
  tokenizer: string;
  vocab_size: number;
  total: number;
  unique: number;
  turkish: number;
  pure: number;
  tr_pct: number;
  pure_pct: number;
  elapsed_seconds: number;
  tokens_per_second: number | null;
}

export interface LoadOptions {
  /** Python executable used to run the core; defaults to MORPHOTOK_PYTHON or python3. */
  python?: string;
}

interface JsonlRecord {
  ids: number[];
  surfaces: string[];
  kinds: string[];
}

function runCli(python: string, args: string[], input?: string): string {
  const result = spawnSync(python, ["-m", "morphotok.cli", ...args], {
    input,
    encoding: "utf-8",
    maxBuffer: 256 * 1024 * 1024,
  });
  if (result.error) {
    throw new Error(`failed to spawn morphotok core: ${result.error.message}`);
  }
  if (result.status !== 0) {
    // surface the core's own message
    throw new Error(result.stderr.trim() || `morphotok exited with ${result.status}`);
  }
  return result.stdout;
}

/**
 * Tokenizer handle over an immutable loaded (lexicon, BPE model) pair.
 * Safe to share across callers; each call spawns the core synchronously.
 */
export class BoundTokenizer {
  private readonly python: string;
  private readonly modelArgs: string[];
  private readonly newlineId: number;

  constructor(lexiconPath: string, bpePath: string, options: LoadOptions = {}) {
    this.python = options.python ?? process.env.MORPHOTOK_PYTHON ?? "python3";
    this.modelArgs = ["--lexicon", lexiconPath, "--bpe", bpePath];
    // validates the document and fails with the core's message
    runCli(this.python, ["lexicon", "validate", lexiconPath]);
    const doc = JSON.parse(readFileSync(lexiconPath, "utf-8"));
    const newlineId = (doc.specials as string[]).indexOf("newline");
    if (newlineId < 0) {
      throw new Error(`lexicon ${lexiconPath} defines no newline special`);
    }
    this.newlineId = newlineId;
  }

  /** Token (id, surface) pairs; IDs identical to the core's encode. */
  encode(text: string): BoundToken[] {
    // the CLI is line-oriented; embedded newlines become newline specials
    const lines = text.split("\n");
    const stdout = runCli(
      this.python,
      ["encode", "--jsonl", ...this.modelArgs],
      lines.join("\n") + "\n",
    );
    const records = stdout
      .split("\n")
      .filter((line) => line.length > 0)
      .map((line) => JSON.parse(line) as JsonlRecord);
    const tokens: BoundToken[] = [];
    records.forEach((record, index) => {
      if (index > 0) {
        tokens.push({ id: this.newlineId, surface: "<newline>" });
      }
      record.ids.forEach((id, i) => tokens.push({ id, surface: record.surfaces[i] }));
    });
    return tokens;
  }

  /** Surface text for a token ID sequence. */
  decode(ids: number[]): string {
    if (ids.length === 0) {
      return "";
    }
    const stdout = runCli(
      this.python,
      ["decode", "--ids", ...this.modelArgs],
      ids.join(" ") + "\n",
    );
    return stdout.endsWith("\n") ? stdout.slice(0, -1) : stdout;
  }

  /** Token-quality metrics for a token-surface dump. */
  metrics(tokens: string[], name = "bindings"): MetricsReport {
    const dir = mkdtempSync(join(tmpdir(), "morphotok-"));
    const dumpPath = join(dir, "dump.jsonl");
    try {
      writeFileSync(dumpPath, JSON.stringify({ tokenizer: name, tokens }) + "\n");
      const stdout = runCli(this.python, [
        "eval",
        dumpPath,
        "--json",
        "--keep-markers",
        ...this.modelArgs,
      ]);
      return (JSON.parse(stdout) as MetricsReport[])[0];
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }
}

/** Load a tokenizer from a lexicon document and BPE model file. */
export function load(
  lexiconPath: string,
  bpePath: string,
  options: LoadOptions = {},
): BoundTokenizer {
  return new BoundTokenizer(lexiconPath, bpePath, options);
}
