import fs from 'node:fs';
import path from 'node:path';
import { fileURLToPath } from 'node:url';

import { SeededRng } from './rng.js';
import { Sample } from './types.js';

const EDA_OPS = ['synonym', 'insert', 'swap', 'delete'] as const;
export type EdaOp = (typeof EDA_OPS)[number];

/** A transformation either yields a new sample or reports why it could
 * not, so condition builders can account for every input. */
export type BaselineResult = { sample: Sample } | { skip: string };

export function bundledSynonymPath(): string {
    const here = path.dirname(fileURLToPath(import.meta.url));
    return path.join(here, '..', 'assets', 'synonyms.tsv');
}

export function loadSynonyms(tablePath: string): Map<string, string> {
    const table = new Map<string, string>();
    const content = fs.readFileSync(tablePath, 'utf-8');
    let lineno = 0;
    for (const raw of content.split('\n')) {
        lineno += 1;
        const line = raw.trimEnd();
        if (line === '' || line.startsWith('#')) continue;
        const parts = line.split('\t');
        if (parts.length !== 2 || parts[0] === '' || parts[1] === '') {
            throw new Error(`${tablePath} line ${lineno}: expected token<TAB>synonym`);
        }
        if (table.has(parts[0])) {
            throw new Error(`${tablePath} line ${lineno}: duplicate token "${parts[0]}"`);
        }
        table.set(parts[0], parts[1]);
    }
    if (table.size === 0) throw new Error(`${tablePath}: synonym table is empty`);
    return table;
}

/** Whitespace-delimited text splits on runs of whitespace; unspaced text
 * (the usual case for Chinese) splits per character. */
export function tokenize(text: string): { tokens: string[]; joiner: string } {
    if (/\s/.test(text.trim())) {
        return { tokens: text.trim().split(/\s+/), joiner: ' ' };
    }
    return { tokens: Array.from(text), joiner: '' };
}

/** One uniformly chosen EDA operation: synonym replacement, random
 * insertion, swap or deletion. Label carries over unchanged. */
export function baselineEda(
    sample: Sample,
    rng: SeededRng,
    synonyms: Map<string, string>,
): BaselineResult {
    const { tokens, joiner } = tokenize(sample.text);
    if (tokens.length < 2) return { skip: 'too_short' };
    const op = EDA_OPS[rng.int(EDA_OPS.length)];
    const out = [...tokens];
    switch (op) {
        case 'synonym': {
            const eligible = out
                .map((token, i) => (synonyms.has(token) ? i : -1))
                .filter((i) => i >= 0);
            if (eligible.length === 0) return { skip: 'no_replaceable_token' };
            const at = eligible[rng.int(eligible.length)];
            out[at] = synonyms.get(out[at])!;
            break;
        }
        case 'insert': {
            const token = out[rng.int(out.length)];
            out.splice(rng.int(out.length + 1), 0, token);
            break;
        }
        case 'swap': {
            const i = rng.int(out.length);
            let j = rng.int(out.length - 1);
            if (j >= i) j += 1; // draw j from the other positions
            const tmp = out[i];
            out[i] = out[j];
            out[j] = tmp;
            break;
        }
        case 'delete': {
            out.splice(rng.int(out.length), 1);
            break;
        }
    }
    return {
        sample: { id: `${sample.id}#eda-${op}`, text: out.join(joiner), label: sample.label },
    };
}

/** Dictionary baseline: every token with a table entry swaps to its
 * synonym; texts with nothing to replace are skipped. */
export function baselineDict(sample: Sample, synonyms: Map<string, string>): BaselineResult {
    if (synonyms.size === 0) throw new Error('synonym table is empty');
    const { tokens, joiner } = tokenize(sample.text);
    let replaced = 0;
    const out = tokens.map((token) => {
        const synonym = synonyms.get(token);
        if (synonym === undefined) return token;
        replaced += 1;
        return synonym;
    });
    if (replaced === 0) return { skip: 'no_replaceable_token' };
    return {
        sample: { id: `${sample.id}#dict`, text: out.join(joiner), label: sample.label },
    };
}

/** Raw train set plus one baseline variant per eligible sample. */
export function baselineTrainSet(
    rawTrain: Sample[],
    kind: 'eda' | 'dict',
    synonyms: Map<string, string>,
    seed: number,
): Sample[] {
    const out = [...rawTrain];
    for (const sample of rawTrain) {
        const result =
            kind === 'eda'
                ? baselineEda(sample, new SeededRng(`eda:${seed}:${sample.id}`), synonyms)
                : baselineDict(sample, synonyms);
        if ('sample' in result) out.push(result.sample);
    }
    return out;
}
