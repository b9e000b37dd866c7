import {
    Adam,
    Tape,
    Tensor,
    add,
    addConst,
    addRow,
    embedRows,
    matmul,
    matmulNT,
    meanRows,
    relu,
    scale,
    softmaxRows,
    tanh,
} from './nn.js';
import { SeededRng } from './rng.js';
import { tokenize } from './baselines.js';
import { ModelKind } from './types.js';

export const VOCAB_BUCKETS = 512;
export const MAX_TOKENS = 32;
const EMBED_DIM = 24;
const HIDDEN_DIM = 32;
const FFN_DIM = 48;
const ATTENTION_LAYERS = 2;

function fnv1a(token: string): number {
    let hash = 0x811c9dc5;
    for (let i = 0; i < token.length; i++) {
        hash ^= token.charCodeAt(i);
        hash = Math.imul(hash, 0x01000193) >>> 0;
    }
    return hash;
}

/** Feature-hashed token ids, truncated to the model's window. */
export function tokenIds(text: string): number[] {
    const { tokens } = tokenize(text);
    return tokens.slice(0, MAX_TOKENS).map((t) => fnv1a(t) % VOCAB_BUCKETS);
}

export interface Classifier {
    readonly kind: ModelKind;
    readonly params: Tensor[];
    logits(tape: Tape, ids: number[]): Tensor;
}

function initTensor(rows: number, cols: number, rng: SeededRng, std: number): Tensor {
    const t = new Tensor(rows, cols);
    for (let i = 0; i < t.data.length; i++) t.data[i] = rng.normal() * std;
    return t;
}

class RecurrentClassifier implements Classifier {
    readonly kind: ModelKind = 'recurrent';
    readonly params: Tensor[];
    private readonly embedding: Tensor;
    private readonly inputWeights: Tensor;
    private readonly hiddenWeights: Tensor;
    private readonly hiddenBias: Tensor;
    private readonly headWeights: Tensor;
    private readonly headBias: Tensor;

    constructor(numClasses: number, rng: SeededRng) {
        this.embedding = initTensor(VOCAB_BUCKETS, EMBED_DIM, rng, 0.1);
        this.inputWeights = initTensor(EMBED_DIM, HIDDEN_DIM, rng, 0.2);
        this.hiddenWeights = initTensor(HIDDEN_DIM, HIDDEN_DIM, rng, 0.1);
        this.hiddenBias = new Tensor(1, HIDDEN_DIM);
        this.headWeights = initTensor(HIDDEN_DIM, numClasses, rng, 0.2);
        this.headBias = new Tensor(1, numClasses);
        this.params = [
            this.embedding,
            this.inputWeights,
            this.hiddenWeights,
            this.hiddenBias,
            this.headWeights,
            this.headBias,
        ];
    }

    logits(tape: Tape, ids: number[]): Tensor {
        let hidden = new Tensor(1, HIDDEN_DIM); // zero initial state
        for (const id of ids) {
            const x = embedRows(tape, this.embedding, [id]);
            const pre = add(tape, matmul(tape, x, this.inputWeights), matmul(tape, hidden, this.hiddenWeights));
            hidden = tanh(tape, add(tape, pre, this.hiddenBias));
        }
        return add(tape, matmul(tape, hidden, this.headWeights), this.headBias);
    }
}

/** Fixed sinusoidal position signal shared by all attention models. */
const POSITION_SIGNAL = (() => {
    const table = new Float64Array(MAX_TOKENS * EMBED_DIM);
    for (let pos = 0; pos < MAX_TOKENS; pos++) {
        for (let j = 0; j < EMBED_DIM; j++) {
            const rate = Math.pow(10000, -Math.floor(j / 2) / (EMBED_DIM / 2));
            table[pos * EMBED_DIM + j] = j % 2 === 0 ? Math.sin(pos * rate) : Math.cos(pos * rate);
        }
    }
    return table;
})();

interface AttentionLayer {
    query: Tensor;
    key: Tensor;
    value: Tensor;
    ffnIn: Tensor;
    ffnInBias: Tensor;
    ffnOut: Tensor;
    ffnOutBias: Tensor;
}

class AttentionClassifier implements Classifier {
    readonly kind: ModelKind = 'attention';
    readonly params: Tensor[];
    private readonly embedding: Tensor;
    private readonly layers: AttentionLayer[];
    private readonly headWeights: Tensor;
    private readonly headBias: Tensor;

    constructor(numClasses: number, rng: SeededRng) {
        this.embedding = initTensor(VOCAB_BUCKETS, EMBED_DIM, rng, 0.1);
        this.layers = [];
        for (let i = 0; i < ATTENTION_LAYERS; i++) {
            this.layers.push({
                query: initTensor(EMBED_DIM, EMBED_DIM, rng, 0.15),
                key: initTensor(EMBED_DIM, EMBED_DIM, rng, 0.15),
                value: initTensor(EMBED_DIM, EMBED_DIM, rng, 0.15),
                ffnIn: initTensor(EMBED_DIM, FFN_DIM, rng, 0.15),
                ffnInBias: new Tensor(1, FFN_DIM),
                ffnOut: initTensor(FFN_DIM, EMBED_DIM, rng, 0.15),
                ffnOutBias: new Tensor(1, EMBED_DIM),
            });
        }
        this.headWeights = initTensor(EMBED_DIM, numClasses, rng, 0.2);
        this.headBias = new Tensor(1, numClasses);
        this.params = [this.embedding];
        for (const layer of this.layers) {
            this.params.push(
                layer.query,
                layer.key,
                layer.value,
                layer.ffnIn,
                layer.ffnInBias,
                layer.ffnOut,
                layer.ffnOutBias,
            );
        }
        this.params.push(this.headWeights, this.headBias);
    }

    logits(tape: Tape, ids: number[]): Tensor {
        let x = embedRows(tape, this.embedding, ids);
        x = addConst(tape, x, POSITION_SIGNAL.subarray(0, ids.length * EMBED_DIM));
        for (const layer of this.layers) {
            const q = matmul(tape, x, layer.query);
            const k = matmul(tape, x, layer.key);
            const v = matmul(tape, x, layer.value);
            const scores = scale(tape, matmulNT(tape, q, k), 1 / Math.sqrt(EMBED_DIM));
            const attended = matmul(tape, softmaxRows(tape, scores), v);
            x = add(tape, x, attended);
            const inner = relu(tape, addRow(tape, matmul(tape, x, layer.ffnIn), layer.ffnInBias));
            x = add(tape, x, addRow(tape, matmul(tape, inner, layer.ffnOut), layer.ffnOutBias));
        }
        const pooled = meanRows(tape, x);
        return add(tape, matmul(tape, pooled, this.headWeights), this.headBias);
    }
}

export function buildClassifier(kind: ModelKind, numClasses: number, seed: number): Classifier {
    const rng = new SeededRng(`init:${kind}:${seed}`);
    if (kind === 'recurrent') return new RecurrentClassifier(numClasses, rng);
    return new AttentionClassifier(numClasses, rng);
}

export function buildOptimizer(classifier: Classifier, learningRate: number): Adam {
    return new Adam(classifier.params, learningRate);
}
