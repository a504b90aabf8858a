#!/usr/bin/env node
// Copyright 2026 The qknit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// SMT-LIB2 front end for the z3 WASM build. Reads commands from stdin and
// prints each query's output as soon as it is available, so the script
// serves one-shot scripts and interactive (incremental) sessions alike.
//
// eval_smtlib2_string keeps scanner state on its context and intermittently
// corrupts it across calls, so instead of feeding increments to one context
// the whole accumulated script is re-evaluated on a fresh context whenever a
// query arrives; z3 is deterministic, so the previous output is a prefix of
// the new output and only the suffix is printed.

'use strict';

const { init } = require('z3-solver');

function splitComplete(buffer) {
  // Longest prefix of balanced top-level forms; handles ; comments and
  // string literals.
  let depth = 0;
  let lastComplete = 0;
  let inString = false;
  let inComment = false;
  for (let i = 0; i < buffer.length; i++) {
    const c = buffer[i];
    if (inComment) {
      if (c === '\n') inComment = false;
      continue;
    }
    if (inString) {
      if (c === '"') inString = false;
      continue;
    }
    if (c === ';') { inComment = true; continue; }
    if (c === '"') { inString = true; continue; }
    if (c === '(') depth++;
    else if (c === ')') {
      depth--;
      if (depth === 0) lastComplete = i + 1;
    }
  }
  return [buffer.slice(0, lastComplete), buffer.slice(lastComplete)];
}

const QUERY = /\((check-sat|get-value|get-model|get-unsat-core)\b/;

async function main() {
  const { Z3 } = await init();
  const trace = process.env.QKNIT_Z3_TRACE
      ? require('fs').createWriteStream(process.env.QKNIT_Z3_TRACE, { flags: 'a' })
      : null;

  let buffer = '';
  let history = '';
  let lastOutput = '';
  let queue = Promise.resolve();
  let sawExit = false;

  const evalChunk = (chunk) => {
    queue = queue.then(async () => {
      if (sawExit) return;
      if (/\(\s*exit\s*\)/.test(chunk)) sawExit = true;
      history += chunk + '\n';
      if (!QUERY.test(chunk)) {
        if (sawExit) process.exit(0);
        return;
      }
      try {
        if (trace) trace.write(`=== EVAL\n${history}\n`);
        let out = '';
        // The WASM string marshalling occasionally garbles a byte, which
        // surfaces as a spurious parser error on well-formed input. Those
        // are transient: retry on a fresh context before reporting.
        for (let attempt = 0; attempt < 4; attempt++) {
          const cfg = Z3.mk_config();
          const ctx = Z3.mk_context(cfg);
          out = await Z3.eval_smtlib2_string(ctx, history);
          if (!/\(error "line \d+ column \d+/.test(out)) break;
          if (trace) trace.write(`=== RETRY(${attempt})\n${out}\n`);
        }
        if (trace) trace.write(`=== RESULT\n${out}\n`);
        if (out.startsWith(lastOutput)) {
          process.stdout.write(out.slice(lastOutput.length));
        } else {
          // Nondeterministic prefix would break response framing.
          process.stdout.write(out);
        }
        lastOutput = out;
      } catch (err) {
        if (trace) trace.write(`=== THROWN\n${String(err)}\n`);
        process.stdout.write(`(error "${String(err).replace(/"/g, "'")}")\n`);
      }
      if (sawExit) process.exit(0);
    });
  };

  process.stdin.setEncoding('utf8');
  process.stdin.on('data', (data) => {
    buffer += data;
    const [complete, rest] = splitComplete(buffer);
    buffer = rest;
    if (complete.length > 0) evalChunk(complete);
  });
  process.stdin.on('end', () => {
    const [complete] = splitComplete(buffer + '\n');
    if (complete.length > 0) evalChunk(complete);
    queue = queue.then(() => process.exit(0));
  });
}

main().catch((err) => {
  process.stderr.write(`qknit-z3: ${String(err)}\n`);
  process.exit(1);
});
