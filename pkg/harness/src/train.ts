import { Tape, argmaxRow, crossEntropy } from './nn.js';
import { Classifier, buildClassifier, buildOptimizer, tokenIds } from './models.js';
import { SeededRng } from './rng.js';
import { DataSplit, ExperimentConfig, ResultRow, Sample, assertAccuracy } from './types.js';

export interface TrainedModel {
    classifier: Classifier;
    classes: string[];
}

export function classLabels(samples: Sample[]): string[] {
    return [...new Set(samples.map((s) => s.label))].sort();
}

function labelIndex(classes: string[], label: string): number {
    const index = classes.indexOf(label);
    if (index < 0) throw new Error(`label "${label}" not present in the training classes`);
    return index;
}

/** Untrained model over the label set of the given samples; the chance-
 * level sanity check evaluates this directly. */
export function initModel(config: ExperimentConfig, samples: Sample[]): TrainedModel {
    const classes = classLabels(samples);
    return { classifier: buildClassifier(config.modelKind, classes.length, config.seed), classes };
}

export function trainModel(config: ExperimentConfig, train: Sample[]): TrainedModel {
    if (train.length === 0) throw new Error('training set is empty');
    const model = initModel(config, train);
    const optimizer = buildOptimizer(model.classifier, config.learningRate);
    const order = train.map((_, i) => i);
    for (let epoch = 0; epoch < config.epochs; epoch++) {
        new SeededRng(`order:${config.seed}:${epoch}`).shuffle(order);
        for (let start = 0; start < order.length; start += config.batchSize) {
            const batch = order.slice(start, start + config.batchSize);
            optimizer.zeroGrads();
            let batchLoss = 0;
            for (const index of batch) {
                const sample = train[index];
                const tape = new Tape();
                const logits = model.classifier.logits(tape, tokenIds(sample.text));
                const loss = crossEntropy(tape, logits, labelIndex(model.classes, sample.label));
                batchLoss += loss.data[0];
                tape.backward(loss, 1 / batch.length);
            }
            if (!Number.isFinite(batchLoss)) {
                throw new Error(`training diverged: non-finite loss at epoch ${epoch}`);
            }
            optimizer.step();
        }
    }
    return model;
}

/** Accuracy in percent over a sample list. */
export function evaluate(model: TrainedModel, samples: Sample[]): number {
    if (samples.length === 0) throw new Error('cannot evaluate on an empty split');
    let correct = 0;
    for (const sample of samples) {
        const logits = model.classifier.logits(new Tape(), tokenIds(sample.text));
        if (model.classes[argmaxRow(logits)] === sample.label) correct += 1;
    }
    return assertAccuracy((100 * correct) / samples.length, 'accuracy');
}

/** Train on the given train set, report val and test accuracy. The val
 * and test splits come in from outside and are never modified here. */
export function trainEval(config: ExperimentConfig, condition: string, split: DataSplit): ResultRow {
    const model = trainModel(config, split.train);
    return {
        condition,
        trainSize: split.train.length,
        valAccuracy: evaluate(model, split.val),
        testAccuracy: evaluate(model, split.test),
    };
}

/** Overfit sanity: crank epochs on a small set and report train-set
 * accuracy; small batches keep the step count meaningful. */
export function overfitCheck(config: ExperimentConfig, samples: Sample[]): number {
    const model = trainModel({ ...config, epochs: 50, batchSize: 4 }, samples);
    return evaluate(model, samples);
}
