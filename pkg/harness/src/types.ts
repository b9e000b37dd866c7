export type ModelKind = 'recurrent' | 'attention';

export interface ExperimentConfig {
    modelKind: ModelKind;
    epochs: number;
    batchSize: number;
    learningRate: number;
    sampleCap: number;
    seed: number;
}

// Training defaults; callers override per experiment, never in place.
export const DEFAULT_CONFIG: ExperimentConfig = {
    modelKind: 'recurrent',
    epochs: 10,
    batchSize: 128,
    learningRate: 5e-4,
    sampleCap: 2000,
    seed: 0,
};

export function makeConfig(overrides: Partial<ExperimentConfig> = {}): ExperimentConfig {
    const config = { ...DEFAULT_CONFIG, ...overrides };
    if (config.epochs < 1) throw new Error(`epochs must be >= 1, got ${config.epochs}`);
    if (config.batchSize < 1) throw new Error(`batch size must be >= 1, got ${config.batchSize}`);
    if (!(config.learningRate > 0)) throw new Error(`learning rate must be > 0, got ${config.learningRate}`);
    if (config.sampleCap < 1) throw new Error(`sample cap must be >= 1, got ${config.sampleCap}`);
    if (!Number.isInteger(config.seed) || config.seed < 0) throw new Error(`seed must be a non-negative integer, got ${config.seed}`);
    return config;
}

export interface Sample {
    id: string;
    text: string;
    label: string;
}

export interface DataSplit {
    train: Sample[];
    val: Sample[];
    test: Sample[];
}

/** One line of the primary pipeline's augmented JSONL, read verbatim. */
export interface AugmentedRecord {
    sourceId: string;
    generator: string;
    text: string;
    label: string;
    meta: Record<string, string>;
}

export const GENERATORS = ['SPEG', 'HMEG', 'EEEG', 'IREG', 'DEG', 'MDEEG'] as const;

export interface ResultRow {
    condition: string;
    trainSize: number;
    valAccuracy: number;
    testAccuracy: number;
    /** Present on ablation rows: this row's test accuracy minus the all-generators row's. */
    deltaTest?: number;
}

export interface ResultTable {
    modelKind: ModelKind;
    rows: ResultRow[];
}

export function assertAccuracy(value: number, what: string): number {
    if (!(value >= 0 && value <= 100)) {
        throw new Error(`${what} out of range: ${value}`);
    }
    return value;
}
