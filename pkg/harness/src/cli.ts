#!/usr/bin/env node
import fs from 'node:fs';

import yargs from 'yargs';
import type { Argv } from 'yargs';
import { hideBin } from 'yargs/helpers';

import { runAblation } from './ablation.js';
import { readAugmented } from './augmented.js';
import { bundledSynonymPath, loadSynonyms } from './baselines.js';
import { DatasetSchema, loadDataset } from './data.js';
import { runComparison } from './experiment.js';
import { renderAblationTable, renderComparisonTable, tableToJson } from './report.js';
import { ModelKind, makeConfig } from './types.js';

interface CommonArgs {
    raw: string;
    augmented: string;
    schema: string;
    model: string;
    epochs?: number;
    batch?: number;
    lr?: number;
    cap?: number;
    seed?: number;
    out?: string;
}

function buildConfig(args: CommonArgs) {
    return makeConfig({
        modelKind: args.model as ModelKind,
        ...(args.epochs === undefined ? {} : { epochs: args.epochs }),
        ...(args.batch === undefined ? {} : { batchSize: args.batch }),
        ...(args.lr === undefined ? {} : { learningRate: args.lr }),
        ...(args.cap === undefined ? {} : { sampleCap: args.cap }),
        ...(args.seed === undefined ? {} : { seed: args.seed }),
    });
}

function commonOptions(cmd: Argv): Argv {
    return cmd
        .option('raw', { type: 'string', demandOption: true, describe: 'raw dataset JSONL' })
        .option('augmented', { type: 'string', demandOption: true, describe: 'augmentation pipeline output JSONL' })
        .option('schema', { type: 'string', choices: ['binary-review', 'aspect-triplet'], default: 'binary-review' })
        .option('model', { type: 'string', choices: ['recurrent', 'attention'], default: 'recurrent' })
        .option('epochs', { type: 'number' })
        .option('batch', { type: 'number' })
        .option('lr', { type: 'number' })
        .option('cap', { type: 'number' })
        .option('seed', { type: 'number' })
        .option('out', { type: 'string', describe: 'also write the report as JSON here' });
}

function emit(tableText: string, json: string, out?: string): void {
    console.log(tableText);
    if (out) fs.writeFileSync(out, json + '\n');
}

export async function main(argv: string[]): Promise<number> {
    try {
        await yargs(argv)
            .scriptName('scda-eval')
            .command(
                'compare',
                'train raw vs dict/eda baselines vs the full augmented set',
                (cmd) => commonOptions(cmd).option('synonyms', { type: 'string', describe: 'synonym table TSV' }),
                (args) => {
                    const config = buildConfig(args as unknown as CommonArgs);
                    const split = loadDataset(args.raw as string, args.schema as DatasetSchema, config.seed, config.sampleCap);
                    const records = readAugmented(args.augmented as string);
                    const synonyms = loadSynonyms((args.synonyms as string | undefined) ?? bundledSynonymPath());
                    const table = runComparison(config, split, records, synonyms);
                    emit(renderComparisonTable(table), tableToJson(table), args.out as string | undefined);
                },
            )
            .command(
                'ablation',
                'leave-one-generator-out sweep against the all-generators row',
                (cmd) => commonOptions(cmd),
                (args) => {
                    const config = buildConfig(args as unknown as CommonArgs);
                    const split = loadDataset(args.raw as string, args.schema as DatasetSchema, config.seed, config.sampleCap);
                    const records = readAugmented(args.augmented as string);
                    const table = runAblation(config, split, records);
                    emit(renderAblationTable(table), tableToJson(table), args.out as string | undefined);
                },
            )
            .demandCommand(1)
            .strict()
            .fail((msg, err) => {
                throw err ?? new Error(msg);
            })
            .parseAsync();
        return 0;
    } catch (err) {
        console.error(`error: ${(err as Error).message}`);
        return 2;
    }
}

const invokedDirectly = process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split('/').pop()!);
if (invokedDirectly) {
    main(hideBin(process.argv)).then((code) => {
        process.exitCode = code;
    });
}
