import * as tf from '@tensorflow/tfjs';
import {describe, expect, it} from 'vitest';

import {buildModel, defaultConfig, firstKernelSize, validateConfig}
    from '../src/model';

describe('config validation', () => {
  it('rejects even or non-positive kernels', () => {
    expect(() => validateConfig(defaultConfig({firstKernel: 14}))).toThrow(/odd/);
    expect(() => validateConfig(defaultConfig({firstKernel: 0}))).toThrow(/odd/);
    expect(() => validateConfig(defaultConfig({firstKernel: 15.5}))).toThrow(/odd/);
  });

  it('rejects lengths not divisible by the downsampling factor', () => {
    expect(() => validateConfig(defaultConfig({inputLength: 4100})))
        .toThrow(/divisible/);
  });

  it('rejects fractional multipliers', () => {
    expect(() => validateConfig(defaultConfig({filterMultiplier: 0}))).toThrow();
  });
});

describe('buildModel', () => {
  it('first-layer kernel length equals configured W', () => {
    const wide = buildModel(defaultConfig(
        {firstKernel: 101, filterMultiplier: 20, inputLength: 256,
         depth: 2, baseChannels: 4}));
    expect(firstKernelSize(wide)).toBe(101);
    const narrow = buildModel(defaultConfig(
        {firstKernel: 15, inputLength: 256, depth: 2, baseChannels: 4}));
    expect(firstKernelSize(narrow)).toBe(15);
  });

  it('parameter count grows with W and multiplier', () => {
    const base = {inputLength: 256, depth: 2, baseChannels: 4};
    const small = buildModel(defaultConfig({...base, firstKernel: 15}));
    const wideK = buildModel(defaultConfig({...base, firstKernel: 101}));
    const wideF = buildModel(defaultConfig(
        {...base, firstKernel: 15, filterMultiplier: 20}));
    expect(wideK.countParams()).toBeGreaterThan(small.countParams());
    expect(wideF.countParams()).toBeGreaterThan(small.countParams());
  });

  it('zero input gives finite output of the input length', () => {
    const model = buildModel(defaultConfig(
        {inputLength: 512, depth: 3, baseChannels: 4}));
    const out = model.predict(tf.zeros([2, 512, 1])) as tf.Tensor3D;
    expect(out.shape).toEqual([2, 512, 1]);
    for (const v of out.dataSync()) expect(Number.isFinite(v)).toBe(true);
    out.dispose();
  });

  it('supports the full record length', () => {
    const model = buildModel(defaultConfig({baseChannels: 2}));
    const out = model.predict(tf.zeros([1, 4096, 1])) as tf.Tensor3D;
    expect(out.shape).toEqual([1, 4096, 1]);
    out.dispose();
  });
});

describe('gradient sanity', () => {
  // Central finite difference on one probe weight of a tiny model. tfjs is
  // single-precision throughout, so the comparison tolerance is set by f32
  // rounding, not by the 1e-3 a float64 check would allow.
  it('loss gradient matches finite differences', async () => {
    const model = buildModel(defaultConfig(
        {firstKernel: 3, inputLength: 16, depth: 1, baseChannels: 2, seed: 7}));
    const x = tf.randomNormal([1, 16, 1], 0, 1, 'float32', 11);
    const t = tf.randomNormal([1, 16, 1], 0, 1, 'float32', 12);
    const layer = model.getLayer('output_conv');
    const loss = () =>
        tf.losses.meanSquaredError(t, model.apply(x) as tf.Tensor) as tf.Scalar;

    const {grads} = tf.variableGrads(loss);
    const key = Object.keys(grads).find(
        k => k.includes('output_conv') && k.includes('kernel'))!;
    const gradVal = grads[key].dataSync()[0];

    const eps = 1e-2;
    const [kernel, bias] = layer.getWeights();
    const bump = (delta: number) => {
      const values = kernel.dataSync().slice();
      values[0] += delta;
      layer.setWeights([tf.tensor(values, kernel.shape), bias]);
      return loss().dataSync()[0];
    };
    const plus = bump(eps);
    const minus = bump(-eps);
    layer.setWeights([kernel, bias]);
    const fd = (plus - minus) / (2 * eps);
    expect(Math.abs(gradVal - fd))
        .toBeLessThan(5e-2 * Math.max(1, Math.abs(fd)));
  });
});
