import { augmentedTrainSet, excludeGenerator, variantsOf } from './augmented.js';
import { trainEval } from './train.js';
import { AugmentedRecord, DataSplit, ExperimentConfig, GENERATORS, ResultTable } from './types.js';

export const ALL_CONDITION = 'all-generators';

/** Leave-one-generator-out sweep: the all-generators row first, then one
 * row per excluded generator. Every condition shares the raw val/test
 * splits; only the train set changes. Deltas are computed against the
 * all-generators row, never copied from anywhere.
 */
export function runAblation(
    config: ExperimentConfig,
    split: DataSplit,
    records: AugmentedRecord[],
): ResultTable {
    const variants = variantsOf(records, split.train);
    const allRow = trainEval(config, ALL_CONDITION, {
        train: augmentedTrainSet(split.train, variants),
        val: split.val,
        test: split.test,
    });
    allRow.deltaTest = 0;
    const rows = [allRow];
    for (const generator of GENERATORS) {
        const row = trainEval(config, `minus-${generator}`, {
            train: augmentedTrainSet(split.train, excludeGenerator(variants, generator)),
            val: split.val,
            test: split.test,
        });
        row.deltaTest = row.testAccuracy - allRow.testAccuracy;
        rows.push(row);
    }
    return { modelKind: config.modelKind, rows };
}
