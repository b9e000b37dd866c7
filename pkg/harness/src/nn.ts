/** Minimal reverse-mode autograd over row-major float64 matrices. Ops
 * record their backward step on a per-forward tape; training replays the
 * tape once per sample, which keeps graphs tiny and memory flat.
 */

export class Tensor {
    readonly rows: number;
    readonly cols: number;
    readonly data: Float64Array;
    readonly grad: Float64Array;

    constructor(rows: number, cols: number, data?: Float64Array) {
        this.rows = rows;
        this.cols = cols;
        this.data = data ?? new Float64Array(rows * cols);
        this.grad = new Float64Array(rows * cols);
        if (this.data.length !== rows * cols) {
            throw new Error(`data length ${this.data.length} does not match ${rows}x${cols}`);
        }
    }

    zeroGrad(): void {
        this.grad.fill(0);
    }
}

export class Tape {
    private steps: Array<() => void> = [];

    record(back: () => void): void {
        this.steps.push(back);
    }

    /** Seed the scalar output's gradient and run every recorded step in
     * reverse creation order. */
    backward(loss: Tensor, seed = 1.0): void {
        if (loss.rows !== 1 || loss.cols !== 1) {
            throw new Error('backward starts from a scalar');
        }
        loss.grad[0] += seed;
        for (let i = this.steps.length - 1; i >= 0; i--) {
            this.steps[i]();
        }
    }
}

export function matmul(tape: Tape, a: Tensor, b: Tensor): Tensor {
    if (a.cols !== b.rows) throw new Error(`matmul shape mismatch: ${a.cols} vs ${b.rows}`);
    const out = new Tensor(a.rows, b.cols);
    for (let i = 0; i < a.rows; i++) {
        for (let k = 0; k < a.cols; k++) {
            const av = a.data[i * a.cols + k];
            if (av === 0) continue;
            for (let j = 0; j < b.cols; j++) {
                out.data[i * b.cols + j] += av * b.data[k * b.cols + j];
            }
        }
    }
    tape.record(() => {
        for (let i = 0; i < a.rows; i++) {
            for (let j = 0; j < b.cols; j++) {
                const g = out.grad[i * b.cols + j];
                if (g === 0) continue;
                for (let k = 0; k < a.cols; k++) {
                    a.grad[i * a.cols + k] += g * b.data[k * b.cols + j];
                    b.grad[k * b.cols + j] += g * a.data[i * a.cols + k];
                }
            }
        }
    });
    return out;
}

/** a @ transpose(b) without materializing the transpose. */
export function matmulNT(tape: Tape, a: Tensor, b: Tensor): Tensor {
    if (a.cols !== b.cols) throw new Error(`matmulNT shape mismatch: ${a.cols} vs ${b.cols}`);
    const out = new Tensor(a.rows, b.rows);
    for (let i = 0; i < a.rows; i++) {
        for (let j = 0; j < b.rows; j++) {
            let acc = 0;
            for (let k = 0; k < a.cols; k++) {
                acc += a.data[i * a.cols + k] * b.data[j * b.cols + k];
            }
            out.data[i * b.rows + j] = acc;
        }
    }
    tape.record(() => {
        for (let i = 0; i < a.rows; i++) {
            for (let j = 0; j < b.rows; j++) {
                const g = out.grad[i * b.rows + j];
                if (g === 0) continue;
                for (let k = 0; k < a.cols; k++) {
                    a.grad[i * a.cols + k] += g * b.data[j * b.cols + k];
                    b.grad[j * b.cols + k] += g * a.data[i * a.cols + k];
                }
            }
        }
    });
    return out;
}

export function add(tape: Tape, a: Tensor, b: Tensor): Tensor {
    if (a.rows !== b.rows || a.cols !== b.cols) throw new Error('add shape mismatch');
    const out = new Tensor(a.rows, a.cols);
    for (let i = 0; i < out.data.length; i++) out.data[i] = a.data[i] + b.data[i];
    tape.record(() => {
        for (let i = 0; i < out.data.length; i++) {
            a.grad[i] += out.grad[i];
            b.grad[i] += out.grad[i];
        }
    });
    return out;
}

/** Broadcast a [1 x n] row over every row of a. */
export function addRow(tape: Tape, a: Tensor, row: Tensor): Tensor {
    if (row.rows !== 1 || row.cols !== a.cols) throw new Error('addRow shape mismatch');
    const out = new Tensor(a.rows, a.cols);
    for (let i = 0; i < a.rows; i++) {
        for (let j = 0; j < a.cols; j++) {
            out.data[i * a.cols + j] = a.data[i * a.cols + j] + row.data[j];
        }
    }
    tape.record(() => {
        for (let i = 0; i < a.rows; i++) {
            for (let j = 0; j < a.cols; j++) {
                const g = out.grad[i * a.cols + j];
                a.grad[i * a.cols + j] += g;
                row.grad[j] += g;
            }
        }
    });
    return out;
}

/** Add a constant matrix (no gradient flows into it). */
export function addConst(tape: Tape, a: Tensor, values: Float64Array): Tensor {
    const out = new Tensor(a.rows, a.cols);
    for (let i = 0; i < out.data.length; i++) out.data[i] = a.data[i] + values[i];
    tape.record(() => {
        for (let i = 0; i < out.data.length; i++) a.grad[i] += out.grad[i];
    });
    return out;
}

export function scale(tape: Tape, a: Tensor, factor: number): Tensor {
    const out = new Tensor(a.rows, a.cols);
    for (let i = 0; i < out.data.length; i++) out.data[i] = a.data[i] * factor;
    tape.record(() => {
        for (let i = 0; i < out.data.length; i++) a.grad[i] += out.grad[i] * factor;
    });
    return out;
}

export function tanh(tape: Tape, a: Tensor): Tensor {
    const out = new Tensor(a.rows, a.cols);
    for (let i = 0; i < out.data.length; i++) out.data[i] = Math.tanh(a.data[i]);
    tape.record(() => {
        for (let i = 0; i < out.data.length; i++) {
            a.grad[i] += out.grad[i] * (1 - out.data[i] * out.data[i]);
        }
    });
    return out;
}

export function relu(tape: Tape, a: Tensor): Tensor {
    const out = new Tensor(a.rows, a.cols);
    for (let i = 0; i < out.data.length; i++) out.data[i] = a.data[i] > 0 ? a.data[i] : 0;
    tape.record(() => {
        for (let i = 0; i < out.data.length; i++) {
            if (a.data[i] > 0) a.grad[i] += out.grad[i];
        }
    });
    return out;
}

/** Gather rows of an embedding table; backward scatter-adds into it. */
export function embedRows(tape: Tape, table: Tensor, ids: number[]): Tensor {
    const out = new Tensor(ids.length, table.cols);
    for (let i = 0; i < ids.length; i++) {
        const id = ids[i];
        if (id < 0 || id >= table.rows) throw new Error(`embedding id ${id} out of range`);
        out.data.set(table.data.subarray(id * table.cols, (id + 1) * table.cols), i * table.cols);
    }
    tape.record(() => {
        for (let i = 0; i < ids.length; i++) {
            for (let j = 0; j < table.cols; j++) {
                table.grad[ids[i] * table.cols + j] += out.grad[i * table.cols + j];
            }
        }
    });
    return out;
}

export function meanRows(tape: Tape, a: Tensor): Tensor {
    const out = new Tensor(1, a.cols);
    for (let i = 0; i < a.rows; i++) {
        for (let j = 0; j < a.cols; j++) out.data[j] += a.data[i * a.cols + j];
    }
    for (let j = 0; j < a.cols; j++) out.data[j] /= a.rows;
    tape.record(() => {
        for (let i = 0; i < a.rows; i++) {
            for (let j = 0; j < a.cols; j++) a.grad[i * a.cols + j] += out.grad[j] / a.rows;
        }
    });
    return out;
}

export function softmaxRows(tape: Tape, a: Tensor): Tensor {
    const out = new Tensor(a.rows, a.cols);
    for (let i = 0; i < a.rows; i++) {
        let max = -Infinity;
        for (let j = 0; j < a.cols; j++) max = Math.max(max, a.data[i * a.cols + j]);
        let sum = 0;
        for (let j = 0; j < a.cols; j++) {
            const e = Math.exp(a.data[i * a.cols + j] - max);
            out.data[i * a.cols + j] = e;
            sum += e;
        }
        for (let j = 0; j < a.cols; j++) out.data[i * a.cols + j] /= sum;
    }
    tape.record(() => {
        for (let i = 0; i < a.rows; i++) {
            let dot = 0;
            for (let j = 0; j < a.cols; j++) {
                dot += out.grad[i * a.cols + j] * out.data[i * a.cols + j];
            }
            for (let j = 0; j < a.cols; j++) {
                const s = out.data[i * a.cols + j];
                a.grad[i * a.cols + j] += s * (out.grad[i * a.cols + j] - dot);
            }
        }
    });
    return out;
}

/** Numerically stable negative log-likelihood of one label against a
 * [1 x classes] logit row. */
export function crossEntropy(tape: Tape, logits: Tensor, label: number): Tensor {
    if (logits.rows !== 1) throw new Error('crossEntropy expects a single logit row');
    if (label < 0 || label >= logits.cols) throw new Error(`label ${label} out of range`);
    let max = -Infinity;
    for (let j = 0; j < logits.cols; j++) max = Math.max(max, logits.data[j]);
    let sum = 0;
    for (let j = 0; j < logits.cols; j++) sum += Math.exp(logits.data[j] - max);
    const lse = max + Math.log(sum);
    const out = new Tensor(1, 1);
    out.data[0] = lse - logits.data[label];
    tape.record(() => {
        const g = out.grad[0];
        for (let j = 0; j < logits.cols; j++) {
            const p = Math.exp(logits.data[j] - lse);
            logits.grad[j] += g * (p - (j === label ? 1 : 0));
        }
    });
    return out;
}

export function argmaxRow(logits: Tensor): number {
    let best = 0;
    for (let j = 1; j < logits.cols; j++) {
        if (logits.data[j] > logits.data[best]) best = j;
    }
    return best;
}

/** Adam with the usual bias correction; one optimizer owns one
 * parameter list for its whole life. */
export class Adam {
    private readonly params: Tensor[];
    private readonly m: Float64Array[];
    private readonly v: Float64Array[];
    private readonly lr: number;
    private readonly beta1 = 0.9;
    private readonly beta2 = 0.999;
    private readonly eps = 1e-8;
    private t = 0;

    constructor(params: Tensor[], learningRate: number) {
        this.params = params;
        this.lr = learningRate;
        this.m = params.map((p) => new Float64Array(p.data.length));
        this.v = params.map((p) => new Float64Array(p.data.length));
    }

    step(): void {
        this.t += 1;
        const bc1 = 1 - Math.pow(this.beta1, this.t);
        const bc2 = 1 - Math.pow(this.beta2, this.t);
        for (let p = 0; p < this.params.length; p++) {
            const param = this.params[p];
            const m = this.m[p];
            const v = this.v[p];
            for (let i = 0; i < param.data.length; i++) {
                const g = param.grad[i];
                m[i] = this.beta1 * m[i] + (1 - this.beta1) * g;
                v[i] = this.beta2 * v[i] + (1 - this.beta2) * g * g;
                param.data[i] -= (this.lr * (m[i] / bc1)) / (Math.sqrt(v[i] / bc2) + this.eps);
            }
        }
    }

    zeroGrads(): void {
        for (const param of this.params) param.zeroGrad();
    }
}
