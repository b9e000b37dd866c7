import fs from 'node:fs';

import { SeededRng } from './rng.js';
import { DataSplit, Sample } from './types.js';

export type DatasetSchema = 'binary-review' | 'aspect-triplet';

const SENTIMENTS = ['positive', 'neutral', 'negative'] as const;

const TRAIN_FRACTION = 0.8;
const VAL_FRACTION = 0.1;

function parseLine(line: string, lineno: number): Record<string, unknown> {
    let record: unknown;
    try {
        record = JSON.parse(line);
    } catch (err) {
        throw new Error(`line ${lineno}: not valid JSON (${(err as Error).message})`);
    }
    if (typeof record !== 'object' || record === null || Array.isArray(record)) {
        throw new Error(`line ${lineno}: expected a JSON object`);
    }
    return record as Record<string, unknown>;
}

function requireString(record: Record<string, unknown>, field: string, lineno: number): string {
    const value = record[field];
    if (typeof value !== 'string' || value.length === 0) {
        throw new Error(`line ${lineno}: field "${field}" must be a non-empty string`);
    }
    return value;
}

/** Read one dataset file into samples.
 *
 * binary-review lines: {"id", "text", "label"} with exactly two distinct
 * labels across the file. aspect-triplet lines: {"id", "text", "aspect",
 * "sentiment"}; the aspect is folded into the classifier input and the
 * sentiment becomes the label.
 */
export function readSamples(path: string, schema: DatasetSchema): Sample[] {
    const content = fs.readFileSync(path, 'utf-8');
    const samples: Sample[] = [];
    const seen = new Set<string>();
    let lineno = 0;
    for (const raw of content.split('\n')) {
        lineno += 1;
        const line = raw.trim();
        if (line === '') continue;
        const record = parseLine(line, lineno);
        const id = requireString(record, 'id', lineno);
        const text = requireString(record, 'text', lineno);
        let label: string;
        let input: string;
        if (schema === 'binary-review') {
            label = requireString(record, 'label', lineno);
            input = text;
        } else {
            const aspect = requireString(record, 'aspect', lineno);
            const sentiment = requireString(record, 'sentiment', lineno);
            if (!(SENTIMENTS as readonly string[]).includes(sentiment)) {
                throw new Error(`line ${lineno}: unknown sentiment value "${sentiment}"`);
            }
            label = sentiment;
            input = `${aspect}：${text}`;
        }
        if (seen.has(id)) throw new Error(`line ${lineno}: duplicate sample id "${id}"`);
        seen.add(id);
        samples.push({ id, text: input, label });
    }
    if (samples.length === 0) throw new Error(`${path}: dataset is empty`);
    if (schema === 'binary-review') {
        const labels = new Set(samples.map((s) => s.label));
        if (labels.size !== 2) {
            throw new Error(`binary-review dataset must carry exactly 2 labels, found ${labels.size}`);
        }
    }
    return samples;
}

/** Seeded selection and split. The cap applies before splitting, so a
 * 3000-sample file at cap 2000 trains/evaluates on the same 2000
 * samples every run with the same seed. */
export function splitSamples(samples: Sample[], seed: number, sampleCap: number): DataSplit {
    const rng = new SeededRng(`split:${seed}`);
    const pool = rng.shuffle([...samples]).slice(0, sampleCap);
    const trainEnd = Math.floor(pool.length * TRAIN_FRACTION);
    const valEnd = trainEnd + Math.floor(pool.length * VAL_FRACTION);
    const split = {
        train: pool.slice(0, trainEnd),
        val: pool.slice(trainEnd, valEnd),
        test: pool.slice(valEnd),
    };
    if (split.train.length === 0 || split.val.length === 0 || split.test.length === 0) {
        throw new Error(`dataset too small to split: ${pool.length} samples`);
    }
    return split;
}

export function loadDataset(
    path: string,
    schema: DatasetSchema,
    seed: number,
    sampleCap: number,
): DataSplit {
    return splitSamples(readSamples(path, schema), seed, sampleCap);
}
