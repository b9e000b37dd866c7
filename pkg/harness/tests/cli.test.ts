import fs from 'node:fs';
import os from 'node:os';
import path from 'node:path';
import { fileURLToPath } from 'node:url';

import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { main } from '../src/cli.js';

const FIXTURES = path.dirname(fileURLToPath(import.meta.url)) + '/fixtures';
const RAW = path.join(FIXTURES, 'raw.jsonl');
const AUGMENTED = path.join(FIXTURES, 'augmented.jsonl');

let dir: string;
let logged: string[];
let errored: string[];

beforeEach(() => {
    dir = fs.mkdtempSync(path.join(os.tmpdir(), 'harness-cli-'));
    logged = [];
    errored = [];
    vi.spyOn(console, 'log').mockImplementation((...args: unknown[]) => {
        logged.push(args.join(' '));
    });
    vi.spyOn(console, 'error').mockImplementation((...args: unknown[]) => {
        errored.push(args.join(' '));
    });
});

afterEach(() => {
    vi.restoreAllMocks();
    fs.rmSync(dir, { recursive: true, force: true });
});

describe('compare command', () => {
    it('prints the table, writes the report and exits zero', async () => {
        const out = path.join(dir, 'report.json');
        const code = await main([
            'compare',
            '--raw', RAW,
            '--augmented', AUGMENTED,
            '--epochs', '1',
            '--batch', '16',
            '--seed', '3',
            '--out', out,
        ]);
        expect(code).toBe(0);
        const text = logged.join('\n');
        expect(text).toContain('condition');
        expect(text).toContain('scda');
        const report = JSON.parse(fs.readFileSync(out, 'utf-8'));
        expect(report.model_kind).toBe('recurrent');
        expect(report.rows.map((r: { condition: string }) => r.condition)).toEqual([
            'raw',
            'dict',
            'eda',
            'scda',
        ]);
    });

    it('accepts an explicit synonym table path', async () => {
        const table = path.join(dir, 'syn.tsv');
        fs.writeFileSync(table, '菜\t肴\n好\t佳\n');
        const code = await main([
            'compare',
            '--raw', RAW,
            '--augmented', AUGMENTED,
            '--epochs', '1',
            '--batch', '16',
            '--synonyms', table,
        ]);
        expect(code).toBe(0);
    });
});

describe('ablation command', () => {
    it('writes all seven rows and exits zero', async () => {
        const out = path.join(dir, 'ablation.json');
        const code = await main([
            'ablation',
            '--raw', RAW,
            '--augmented', AUGMENTED,
            '--epochs', '1',
            '--batch', '16',
            '--seed', '3',
            '--out', out,
        ]);
        expect(code).toBe(0);
        const report = JSON.parse(fs.readFileSync(out, 'utf-8'));
        expect(report.rows.length).toBe(7);
        expect(report.rows[0].condition).toBe('all-generators');
        expect(report.rows[0].delta_test).toBe(0);
        for (const row of report.rows.slice(1)) {
            expect(row.condition).toMatch(/^minus-/);
            expect(typeof row.delta_test).toBe('number');
        }
    });
});

describe('failure paths', () => {
    it('exits two on a missing input file', async () => {
        const code = await main(['compare', '--raw', path.join(dir, 'nope.jsonl'), '--augmented', AUGMENTED]);
        expect(code).toBe(2);
        expect(errored.join('\n')).toMatch(/^error: /);
    });

    it('exits two on an unknown command', async () => {
        expect(await main(['bogus'])).toBe(2);
    });

    it('exits two when no command is given', async () => {
        expect(await main([])).toBe(2);
    });

    it('exits two on an out-of-range training setting', async () => {
        const code = await main(['compare', '--raw', RAW, '--augmented', AUGMENTED, '--epochs', '0']);
        expect(code).toBe(2);
        expect(errored.join('\n')).toContain('epochs');
    });
});
