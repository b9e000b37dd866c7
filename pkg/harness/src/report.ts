import { ALL_CONDITION } from './ablation.js';
import { ModelKind, ResultRow, ResultTable } from './types.js';

/** Reference accuracies shown next to the measured numbers for
 * comparison; they are rendered only, never asserted against. */
export const REFERENCE_ACCURACY: Record<ModelKind, Record<string, number>> = {
    recurrent: { raw: 80.07, scda: 81.38 },
    attention: { raw: 80.6, scda: 82.54 },
};

function pad(value: string, width: number): string {
    return value.length >= width ? value : ' '.repeat(width - value.length) + value;
}

function formatAccuracy(value: number): string {
    return value.toFixed(2);
}

/** Condition rows with val/test accuracy and the reference column. */
export function renderComparisonTable(table: ResultTable): string {
    const header =
        'condition'.padEnd(16) + pad('train', 7) + pad('val%', 9) + pad('test%', 9) + pad('ref%', 9);
    const lines = [header, '-'.repeat(header.length)];
    for (const row of table.rows) {
        const reference = REFERENCE_ACCURACY[table.modelKind][row.condition];
        lines.push(
            row.condition.padEnd(16) +
                pad(String(row.trainSize), 7) +
                pad(formatAccuracy(row.valAccuracy), 9) +
                pad(formatAccuracy(row.testAccuracy), 9) +
                pad(reference === undefined ? '-' : formatAccuracy(reference), 9),
        );
    }
    return lines.join('\n');
}

function formatDelta(row: ResultRow): string {
    if (row.deltaTest === undefined) return '-';
    if (row.condition === ALL_CONDITION) return '-';
    const sign = row.deltaTest >= 0 ? '+' : '';
    return sign + row.deltaTest.toFixed(2);
}

/** Ablation rows with the delta against the all-generators row. */
export function renderAblationTable(table: ResultTable): string {
    const header =
        'condition'.padEnd(16) + pad('train', 7) + pad('val%', 9) + pad('test%', 9) + pad('delta', 9);
    const lines = [header, '-'.repeat(header.length)];
    for (const row of table.rows) {
        lines.push(
            row.condition.padEnd(16) +
                pad(String(row.trainSize), 7) +
                pad(formatAccuracy(row.valAccuracy), 9) +
                pad(formatAccuracy(row.testAccuracy), 9) +
                pad(formatDelta(row), 9),
        );
    }
    return lines.join('\n');
}

export function tableToJson(table: ResultTable): string {
    const payload = {
        model_kind: table.modelKind,
        rows: table.rows.map((row) => ({
            condition: row.condition,
            train_size: row.trainSize,
            val_accuracy: row.valAccuracy,
            test_accuracy: row.testAccuracy,
            ...(row.deltaTest === undefined ? {} : { delta_test: row.deltaTest }),
        })),
    };
    return JSON.stringify(payload, null, 2);
}
