export { runAblation, ALL_CONDITION } from './ablation.js';
export {
    augmentedTrainSet,
    countByGenerator,
    excludeGenerator,
    readAugmented,
    toSamples,
    variantsOf,
} from './augmented.js';
export {
    baselineDict,
    baselineEda,
    baselineTrainSet,
    bundledSynonymPath,
    loadSynonyms,
    tokenize,
} from './baselines.js';
export { loadDataset, readSamples, splitSamples } from './data.js';
export { runComparison, COMPARISON_CONDITIONS } from './experiment.js';
export { buildClassifier, tokenIds, MAX_TOKENS, VOCAB_BUCKETS } from './models.js';
export { REFERENCE_ACCURACY, renderAblationTable, renderComparisonTable, tableToJson } from './report.js';
export { SeededRng } from './rng.js';
export { classLabels, evaluate, initModel, overfitCheck, trainEval, trainModel } from './train.js';
export {
    DEFAULT_CONFIG,
    GENERATORS,
    assertAccuracy,
    makeConfig,
} from './types.js';
export type {
    AugmentedRecord,
    DataSplit,
    ExperimentConfig,
    ModelKind,
    ResultRow,
    ResultTable,
    Sample,
} from './types.js';
