import { augmentedTrainSet, variantsOf } from './augmented.js';
import { baselineTrainSet } from './baselines.js';
import { trainEval } from './train.js';
import { AugmentedRecord, DataSplit, ExperimentConfig, ResultTable } from './types.js';

export const COMPARISON_CONDITIONS = ['raw', 'dict', 'eda', 'scda'] as const;

/** Head-to-head table: raw training data against the two baseline
 * augmentations and the full six-generator set. All four conditions
 * evaluate on the identical val/test splits.
 */
export function runComparison(
    config: ExperimentConfig,
    split: DataSplit,
    records: AugmentedRecord[],
    synonyms: Map<string, string>,
): ResultTable {
    const variants = variantsOf(records, split.train);
    const trainSets = {
        raw: split.train,
        dict: baselineTrainSet(split.train, 'dict', synonyms, config.seed),
        eda: baselineTrainSet(split.train, 'eda', synonyms, config.seed),
        scda: augmentedTrainSet(split.train, variants),
    };
    const rows = COMPARISON_CONDITIONS.map((condition) =>
        trainEval(config, condition, { train: trainSets[condition], val: split.val, test: split.test }),
    );
    return { modelKind: config.modelKind, rows };
}
