/**
 * Training loop: Adam on time-domain mean squared error against the clean
 * target, early stopping on validation MSE, per-epoch curve as CSV.
 * Checkpoints are a JSON file (model topology + configs) plus a raw
 * weights .bin, so no filesystem IO handler is needed.
 */
import * as tf from '@tensorflow/tfjs';
import * as fs from 'fs';
import * as path from 'path';

import {Dataset} from './dataset';
import {buildModel, ModelConfig} from './model';

export interface TrainConfig {
  learningRate: number;
  maxEpochs: number;
  patience: number;
  batchSize: number;
  trainPath: string;
  valPath: string;
  seed: number;
}

export function defaultTrainConfig(partial: Partial<TrainConfig> &
                                   Pick<TrainConfig, 'trainPath' | 'valPath'>):
    TrainConfig {
  return {
    learningRate: 1e-4,
    maxEpochs: 200,
    patience: 20,
    batchSize: 16,
    seed: 0,
    ...partial,
  };
}

export interface EpochStat {
  epoch: number;
  trainMse: number;
  valMse: number;
  valMseDb: number;
}

export function mseDb(mse: number): number {
  return mse === 0 ? -Infinity : 10 * Math.log10(mse);
}

/** Small deterministic PRNG for shuffling (mulberry32). */
export function makeRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function shuffled(n: number, rng: () => number): number[] {
  const idx = Array.from({length: n}, (_, i) => i);
  for (let i = n - 1; i > 0; i--) {
    const j = Math.floor(rng() * (i + 1));
    [idx[i], idx[j]] = [idx[j], idx[i]];
  }
  return idx;
}

export function toTensors(flat: {y: Float64Array; s: Float64Array}, n: number):
    {x: tf.Tensor3D; t: tf.Tensor3D} {
  const rows = flat.y.length / n;
  return {
    x: tf.tensor3d(Float32Array.from(flat.y), [rows, n, 1]),
    t: tf.tensor3d(Float32Array.from(flat.s), [rows, n, 1]),
  };
}

export interface TrainResult {
  model: tf.LayersModel;
  curve: EpochStat[];
  bestValMseDb: number;
}

export async function train(modelCfg: ModelConfig, tcfg: TrainConfig,
                            log: (line: string) => void = () => {}):
    Promise<TrainResult> {
  const trainSet = new Dataset(tcfg.trainPath);
  const valSet = new Dataset(tcfg.valPath);
  if (trainSet.manifest.case_id !== valSet.manifest.case_id ||
      trainSet.manifest.dtype !== valSet.manifest.dtype) {
    throw new Error('train/val manifests disagree on case or dtype');
  }
  if (trainSet.n !== modelCfg.inputLength) {
    throw new Error(
        `model expects length ${modelCfg.inputLength}, dataset has ${trainSet.n}`);
  }

  const model = buildModel({...modelCfg, seed: tcfg.seed});
  const optimizer = tf.train.adam(tcfg.learningRate);
  model.compile({optimizer, loss: 'meanSquaredError'});

  const n = trainSet.n;
  const train = toTensors(trainSet.batch(), n);
  const val = toTensors(valSet.batch(), n);
  const rng = makeRng(tcfg.seed + 1);

  const curve: EpochStat[] = [];
  let bestVal = Infinity;
  let bestWeights: tf.Tensor[] | null = null;
  let sinceBest = 0;
  try {
    for (let epoch = 0; epoch < tcfg.maxEpochs; epoch++) {
      const order = shuffled(trainSet.count, rng);
      const xs = tf.tidy(() => tf.gather(train.x, order));
      const ts = tf.tidy(() => tf.gather(train.t, order));
      const hist = await model.fit(xs, ts, {
        batchSize: tcfg.batchSize,
        epochs: 1,
        shuffle: false,
        verbose: 0,
      });
      xs.dispose();
      ts.dispose();
      const trainMse = hist.history['loss'][0] as number;
      const valMse = tf.tidy(
          () => (model.evaluate(val.x, val.t,
                                {batchSize: tcfg.batchSize, verbose: 0}) as
                 tf.Scalar).dataSync()[0]);
      curve.push({epoch, trainMse, valMse, valMseDb: mseDb(valMse)});
      log(`epoch ${epoch}: train ${mseDb(trainMse).toFixed(2)} dB, ` +
          `val ${mseDb(valMse).toFixed(2)} dB`);
      if (valMse < bestVal) {
        bestVal = valMse;
        sinceBest = 0;
        if (bestWeights) bestWeights.forEach(w => w.dispose());
        bestWeights = model.getWeights().map(w => w.clone());
      } else if (++sinceBest >= tcfg.patience) {
        log(`early stop at epoch ${epoch} (no improvement for ${tcfg.patience})`);
        break;
      }
    }
  } finally {
    train.x.dispose();
    train.t.dispose();
    val.x.dispose();
    val.t.dispose();
  }
  if (bestWeights) {
    model.setWeights(bestWeights);
    bestWeights.forEach(w => w.dispose());
  }
  return {model, curve, bestValMseDb: mseDb(bestVal)};
}

export function writeCurve(file: string, curve: EpochStat[]): void {
  const lines = ['epoch,train_mse,val_mse,val_mse_db'];
  for (const e of curve) {
    lines.push(`${e.epoch},${e.trainMse},${e.valMse},${e.valMseDb}`);
  }
  fs.writeFileSync(file, lines.join('\n') + '\n');
}

export async function saveCheckpoint(dir: string, model: tf.LayersModel,
                                     modelCfg: ModelConfig,
                                     tcfg?: TrainConfig): Promise<void> {
  fs.mkdirSync(dir, {recursive: true});
  await model.save(tf.io.withSaveHandler(async artifacts => {
    const weightData = artifacts.weightData as ArrayBuffer;
    fs.writeFileSync(path.join(dir, 'weights.bin'), Buffer.from(weightData));
    fs.writeFileSync(path.join(dir, 'checkpoint.json'), JSON.stringify({
      modelTopology: artifacts.modelTopology,
      weightSpecs: artifacts.weightSpecs,
      modelConfig: modelCfg,
      trainConfig: tcfg ?? null,
    }, null, 2));
    return {modelArtifactsInfo: {dateSaved: new Date(), modelTopologyType: 'JSON'}};
  }));
}

export async function loadCheckpoint(dir: string):
    Promise<{model: tf.LayersModel; modelConfig: ModelConfig}> {
  const meta = JSON.parse(
      fs.readFileSync(path.join(dir, 'checkpoint.json'), 'utf8'));
  const weightData = fs.readFileSync(path.join(dir, 'weights.bin'));
  const model = await tf.loadLayersModel(tf.io.fromMemory({
    modelTopology: meta.modelTopology,
    weightSpecs: meta.weightSpecs,
    weightData: weightData.buffer.slice(
        weightData.byteOffset, weightData.byteOffset + weightData.byteLength),
  }));
  return {model, modelConfig: meta.modelConfig as ModelConfig};
}
