/**
 * Evaluation: run a separator over a dataset, write its outputs as an
 * estimates file in the shared binary layout, and report the aggregate
 * MSE in dB. The number is computed from the values as written (after any
 * f32 quantization), so an independent scorer reading the file back gets
 * the same answer.
 */
import * as tf from '@tensorflow/tfjs';

import {Dataset, writeEstimates} from './dataset';
import {mseDb} from './train';

export interface EvalReport {
  count: number;
  mseLinear: number;
  mseDbValue: number;
}

export function predictDataset(model: tf.LayersModel, data: Dataset,
                               batchSize = 16): Float64Array[] {
  const out: Float64Array[] = [];
  const n = data.n;
  for (let start = 0; start < data.count; start += batchSize) {
    const idx = [];
    for (let i = start; i < Math.min(start + batchSize, data.count); i++) {
      idx.push(i);
    }
    const flat = data.batch(idx);
    const pred = tf.tidy(() => {
      const x = tf.tensor3d(Float32Array.from(flat.y), [idx.length, n, 1]);
      return model.predict(x, {batchSize: idx.length}) as tf.Tensor3D;
    });
    const values = pred.dataSync();
    pred.dispose();
    for (let r = 0; r < idx.length; r++) {
      out.push(Float64Array.from(values.subarray(r * n, (r + 1) * n)));
    }
  }
  return out;
}

/** Quantize a series to what the file dtype can represent. */
function asStored(row: Float64Array, dtype: 'f32' | 'f64'): Float64Array {
  return dtype === 'f32' ? Float64Array.from(row, Math.fround) : row;
}

export function scoreEstimates(estimates: Float64Array[], data: Dataset,
                               dtype: 'f32' | 'f64'): EvalReport {
  if (estimates.length !== data.count) {
    throw new Error(
        `estimate count ${estimates.length} != dataset count ${data.count}`);
  }
  let aggregate = 0;
  for (let i = 0; i < data.count; i++) {
    const est = asStored(estimates[i], dtype);
    const {s} = data.record(i);
    let acc = 0;
    for (let j = 0; j < s.length; j++) {
      const d = est[j] - s[j];
      acc += d * d;
    }
    aggregate += acc / s.length;
  }
  const mseLinear = aggregate / data.count;
  return {count: data.count, mseLinear, mseDbValue: mseDb(mseLinear)};
}

export function evaluate(model: tf.LayersModel, data: Dataset,
                         estimatesFile?: string): EvalReport {
  const estimates = predictDataset(model, data);
  const dtype = data.manifest.dtype;
  if (estimatesFile) writeEstimates(estimatesFile, estimates, dtype);
  return scoreEstimates(estimates, data, dtype);
}
