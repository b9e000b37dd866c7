import { describe, expect, it } from 'vitest';

import {
    Adam,
    Tape,
    Tensor,
    add,
    addConst,
    addRow,
    argmaxRow,
    crossEntropy,
    embedRows,
    matmul,
    matmulNT,
    meanRows,
    relu,
    scale,
    softmaxRows,
    tanh,
} from '../src/nn.js';
import { SeededRng } from '../src/rng.js';

function filled(rows: number, cols: number, rng: SeededRng): Tensor {
    const t = new Tensor(rows, cols);
    for (let i = 0; i < t.data.length; i++) t.data[i] = rng.normal() * 0.5;
    return t;
}

/** Forward pass touching every op once; the repeated embedding id pins
 * down gradient accumulation in the scatter-add. */
function forward(params: Record<string, Tensor>, tape: Tape): Tensor {
    const constants = new Float64Array([0.1, -0.2, 0.3, 0.05, -0.1, 0.2, 0.15, -0.05, 0.1, 0.0, -0.3, 0.25]);
    let x = embedRows(tape, params.table, [0, 2, 2]);
    x = addConst(tape, x, constants);
    const a = matmul(tape, x, params.w1);
    const scores = scale(tape, matmulNT(tape, a, params.w2), 0.5);
    const att = matmul(tape, softmaxRows(tape, scores), params.w3);
    const y = add(tape, x, att);
    const r = relu(tape, addRow(tape, y, params.rowBias));
    const t = tanh(tape, r);
    const pooled = meanRows(tape, t);
    const logits = addRow(tape, matmul(tape, pooled, params.w4), params.headBias);
    return crossEntropy(tape, logits, 1);
}

function makeParams(): Record<string, Tensor> {
    const rng = new SeededRng('gradcheck');
    return {
        table: filled(5, 4, rng),
        w1: filled(4, 4, rng),
        w2: filled(3, 4, rng),
        w3: filled(3, 4, rng),
        rowBias: filled(1, 4, rng),
        w4: filled(4, 2, rng),
        headBias: filled(1, 2, rng),
    };
}

describe('reverse-mode gradients', () => {
    it('agree with central finite differences on every parameter', () => {
        const params = makeParams();
        const tape = new Tape();
        const loss = forward(params, tape);
        tape.backward(loss);

        const h = 1e-5;
        for (const [name, param] of Object.entries(params)) {
            for (let i = 0; i < param.data.length; i++) {
                const saved = param.data[i];
                param.data[i] = saved + h;
                const up = forward(params, new Tape()).data[0];
                param.data[i] = saved - h;
                const down = forward(params, new Tape()).data[0];
                param.data[i] = saved;
                const numeric = (up - down) / (2 * h);
                const analytic = param.grad[i];
                expect(
                    Math.abs(analytic - numeric),
                    `${name}[${i}]: analytic ${analytic} vs numeric ${numeric}`,
                ).toBeLessThanOrEqual(1e-6 + 1e-4 * Math.abs(numeric));
            }
        }
    });

    it('accumulate across backward calls instead of overwriting', () => {
        const params = makeParams();
        const tape1 = new Tape();
        tape1.backward(forward(params, tape1));
        const once = Float64Array.from(params.w1.grad);
        const tape2 = new Tape();
        tape2.backward(forward(params, tape2));
        for (let i = 0; i < once.length; i++) {
            expect(params.w1.grad[i]).toBeCloseTo(2 * once[i], 12);
        }
    });

    it('scale the whole gradient by the backward seed', () => {
        const params = makeParams();
        const tape1 = new Tape();
        tape1.backward(forward(params, tape1));
        const full = Float64Array.from(params.w4.grad);
        for (const p of Object.values(params)) p.zeroGrad();
        const tape2 = new Tape();
        tape2.backward(forward(params, tape2), 0.25);
        for (let i = 0; i < full.length; i++) {
            expect(params.w4.grad[i]).toBeCloseTo(0.25 * full[i], 12);
        }
    });
});

describe('op invariants', () => {
    it('softmax rows sum to one and stay positive', () => {
        const t = new Tensor(2, 3, new Float64Array([5, 1, -2, 1000, 999, 998]));
        const out = softmaxRows(new Tape(), t);
        for (let i = 0; i < 2; i++) {
            let sum = 0;
            for (let j = 0; j < 3; j++) {
                const p = out.data[i * 3 + j];
                expect(p).toBeGreaterThan(0);
                sum += p;
            }
            expect(sum).toBeCloseTo(1, 12);
        }
    });

    it('cross entropy equals the negative log softmax of the label', () => {
        const logits = new Tensor(1, 3, new Float64Array([2, -1, 0.5]));
        const loss = crossEntropy(new Tape(), logits, 2);
        const z = Math.exp(2) + Math.exp(-1) + Math.exp(0.5);
        expect(loss.data[0]).toBeCloseTo(-Math.log(Math.exp(0.5) / z), 12);
    });

    it('cross entropy survives logits far outside exp range', () => {
        const logits = new Tensor(1, 2, new Float64Array([1000, -1000]));
        const loss = crossEntropy(new Tape(), logits, 0);
        expect(loss.data[0]).toBeCloseTo(0, 9);
    });

    it('argmax picks the first largest logit', () => {
        expect(argmaxRow(new Tensor(1, 3, new Float64Array([1, 3, 2])))).toBe(1);
        expect(argmaxRow(new Tensor(1, 3, new Float64Array([7, 7, 2])))).toBe(0);
    });

    it('matmul agrees with a hand-computed product', () => {
        const a = new Tensor(2, 2, new Float64Array([1, 2, 3, 4]));
        const b = new Tensor(2, 2, new Float64Array([5, 6, 7, 8]));
        expect([...matmul(new Tape(), a, b).data]).toEqual([19, 22, 43, 50]);
    });

    it('matmulNT matches matmul against the transpose', () => {
        const rng = new SeededRng('nt');
        const a = filled(3, 4, rng);
        const b = filled(2, 4, rng);
        const bt = new Tensor(4, 2);
        for (let i = 0; i < 2; i++) {
            for (let j = 0; j < 4; j++) bt.data[j * 2 + i] = b.data[i * 4 + j];
        }
        const viaNT = matmulNT(new Tape(), a, b);
        const viaT = matmul(new Tape(), a, bt);
        for (let i = 0; i < viaNT.data.length; i++) {
            expect(viaNT.data[i]).toBeCloseTo(viaT.data[i], 12);
        }
    });
});

describe('shape and range guards', () => {
    it('reject mismatched operands', () => {
        const tape = new Tape();
        expect(() => matmul(tape, new Tensor(1, 2), new Tensor(3, 1))).toThrow(/shape mismatch/);
        expect(() => matmulNT(tape, new Tensor(1, 2), new Tensor(1, 3))).toThrow(/shape mismatch/);
        expect(() => add(tape, new Tensor(1, 2), new Tensor(2, 1))).toThrow(/shape mismatch/);
        expect(() => addRow(tape, new Tensor(2, 3), new Tensor(1, 2))).toThrow(/shape mismatch/);
    });

    it('reject backward from a non-scalar', () => {
        expect(() => new Tape().backward(new Tensor(1, 2))).toThrow(/scalar/);
    });

    it('reject out-of-range embedding ids and labels', () => {
        expect(() => embedRows(new Tape(), new Tensor(3, 2), [3])).toThrow(/out of range/);
        expect(() => crossEntropy(new Tape(), new Tensor(1, 2), 2)).toThrow(/label 2 out of range/);
    });

    it('reject data whose length does not match the shape', () => {
        expect(() => new Tensor(2, 2, new Float64Array(3))).toThrow(/does not match/);
    });
});

describe('Adam', () => {
    it('takes a first step of size learning rate against the gradient sign', () => {
        const param = new Tensor(1, 1, new Float64Array([3]));
        param.grad[0] = 0.7;
        new Adam([param], 0.1).step();
        // bias correction makes m-hat = g and v-hat = g^2 on step one
        expect(param.data[0]).toBeCloseTo(3 - 0.1, 7);
    });

    it('zeroGrads clears every owned gradient', () => {
        const a = new Tensor(1, 2);
        const b = new Tensor(2, 1);
        a.grad.fill(5);
        b.grad.fill(-2);
        new Adam([a, b], 0.1).zeroGrads();
        expect([...a.grad]).toEqual([0, 0]);
        expect([...b.grad]).toEqual([0, 0]);
    });

    it('drives a cross-entropy objective toward zero', () => {
        const logits = new Tensor(1, 2);
        const optimizer = new Adam([logits], 0.1);
        let first = Number.NaN;
        let last = Number.NaN;
        for (let step = 0; step < 200; step++) {
            optimizer.zeroGrads();
            const tape = new Tape();
            const loss = crossEntropy(tape, logits, 0);
            tape.backward(loss);
            optimizer.step();
            if (step === 0) first = loss.data[0];
            last = loss.data[0];
        }
        expect(first).toBeCloseTo(Math.log(2), 9);
        expect(last).toBeLessThan(0.01);
    });
});
