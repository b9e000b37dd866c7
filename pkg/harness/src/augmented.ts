import fs from 'node:fs';

import { AugmentedRecord, Sample } from './types.js';

/** Read the augmentation pipeline's output JSONL verbatim. */
export function readAugmented(path: string): AugmentedRecord[] {
    const content = fs.readFileSync(path, 'utf-8');
    const records: AugmentedRecord[] = [];
    let lineno = 0;
    for (const raw of content.split('\n')) {
        lineno += 1;
        const line = raw.trim();
        if (line === '') continue;
        let record: any;
        try {
            record = JSON.parse(line);
        } catch (err) {
            throw new Error(`line ${lineno}: not valid JSON (${(err as Error).message})`);
        }
        for (const field of ['source_id', 'generator', 'text', 'label']) {
            if (typeof record[field] !== 'string') {
                throw new Error(`line ${lineno}: field "${field}" must be a string`);
            }
        }
        records.push({
            sourceId: record.source_id,
            generator: record.generator,
            text: record.text,
            label: record.label,
            meta: record.meta ?? {},
        });
    }
    return records;
}

export function countByGenerator(records: AugmentedRecord[]): Map<string, number> {
    const counts = new Map<string, number>();
    for (const record of records) {
        counts.set(record.generator, (counts.get(record.generator) ?? 0) + 1);
    }
    return counts;
}

/** Keep only variants of the given source samples. Variants of val/test
 * sources never reach a training set; evaluation splits stay untouched. */
export function variantsOf(records: AugmentedRecord[], sources: Sample[]): AugmentedRecord[] {
    const ids = new Set(sources.map((s) => s.id));
    return records.filter((r) => ids.has(r.sourceId));
}

export function toSamples(records: AugmentedRecord[]): Sample[] {
    return records.map((r) => ({
        id: `${r.sourceId}#${r.generator}`,
        text: r.text,
        label: r.label,
    }));
}

/** Raw train set plus every variant; size is raw + variant count by
 * construction, which the accounting checks rely on. */
export function augmentedTrainSet(rawTrain: Sample[], variants: AugmentedRecord[]): Sample[] {
    return [...rawTrain, ...toSamples(variants)];
}

export function excludeGenerator(records: AugmentedRecord[], generator: string): AugmentedRecord[] {
    return records.filter((r) => r.generator !== generator);
}
