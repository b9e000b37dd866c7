import path from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import { readAugmented, variantsOf } from '../src/augmented.js';
import { baselineTrainSet, bundledSynonymPath, loadSynonyms } from '../src/baselines.js';
import { loadDataset } from '../src/data.js';
import { COMPARISON_CONDITIONS, runComparison } from '../src/experiment.js';
import { makeConfig } from '../src/types.js';

const FIXTURES = path.dirname(fileURLToPath(import.meta.url)) + '/fixtures';
const RAW = path.join(FIXTURES, 'raw.jsonl');
const AUGMENTED = path.join(FIXTURES, 'augmented.jsonl');

const config = makeConfig({ epochs: 1, batchSize: 16, seed: 3 });
const split = loadDataset(RAW, 'binary-review', config.seed, config.sampleCap);
const records = readAugmented(AUGMENTED);
const synonyms = loadSynonyms(bundledSynonymPath());
const table = runComparison(config, split, records, synonyms);

describe('runComparison', () => {
    it('reports the four conditions in their fixed order', () => {
        expect(table.rows.map((r) => r.condition)).toEqual([...COMPARISON_CONDITIONS]);
        expect(table.modelKind).toBe('recurrent');
    });

    it('trains the raw condition on the untouched train split', () => {
        expect(table.rows[0].trainSize).toBe(split.train.length);
    });

    it('sizes the augmented condition as raw plus its train-source variants', () => {
        const variants = variantsOf(records, split.train);
        const scda = table.rows.find((r) => r.condition === 'scda')!;
        expect(variants.length).toBeGreaterThan(0);
        expect(scda.trainSize).toBe(split.train.length + variants.length);
    });

    it('sizes the baseline conditions from their own builders', () => {
        const dict = table.rows.find((r) => r.condition === 'dict')!;
        const eda = table.rows.find((r) => r.condition === 'eda')!;
        expect(dict.trainSize).toBe(baselineTrainSet(split.train, 'dict', synonyms, config.seed).length);
        expect(eda.trainSize).toBe(baselineTrainSet(split.train, 'eda', synonyms, config.seed).length);
        // both add at least a few variants over the raw split on this corpus
        expect(dict.trainSize).toBeGreaterThan(split.train.length);
        expect(eda.trainSize).toBeGreaterThan(split.train.length);
    });

    it('leaves comparison rows without an ablation delta', () => {
        for (const row of table.rows) {
            expect(row.deltaTest).toBeUndefined();
        }
    });
});
