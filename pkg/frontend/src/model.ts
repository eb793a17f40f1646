/**
 * Wave-U-Net-style 1D separator: strided-conv encoder, bottleneck, and a
 * nearest-neighbour-upsampling decoder with skip connections. The first
 * convolution is the experimental knob: its kernel size W and a filter
 * multiplier are configurable; the rest of the backbone is a fixed,
 * deliberately small free choice recorded in every checkpoint.
 */
import * as tf from '@tensorflow/tfjs';

export interface ModelConfig {
  /** First-layer kernel size, in samples. Odd, so padding is symmetric. */
  firstKernel: number;
  /** Multiplier on the first layer's channel count. */
  filterMultiplier: number;
  /** Number of stride-2 down/up-sampling levels. */
  depth: number;
  /** Channel count of the innermost backbone convolutions. */
  baseChannels: number;
  /** Input/output length; must be divisible by 2**depth. */
  inputLength: number;
  seed?: number;
}

export function defaultConfig(partial: Partial<ModelConfig> = {}): ModelConfig {
  return {
    firstKernel: 15,
    filterMultiplier: 1,
    depth: 4,
    baseChannels: 16,
    inputLength: 4096,
    ...partial,
  };
}

export function validateConfig(cfg: ModelConfig): void {
  if (!Number.isInteger(cfg.firstKernel) || cfg.firstKernel < 1 ||
      cfg.firstKernel % 2 === 0) {
    throw new Error(`firstKernel must be an odd positive integer, got ${cfg.firstKernel}`);
  }
  if (!Number.isInteger(cfg.filterMultiplier) || cfg.filterMultiplier < 1) {
    throw new Error(`filterMultiplier must be a positive integer, got ${cfg.filterMultiplier}`);
  }
  if (cfg.depth < 1) throw new Error('depth must be >= 1');
  if (cfg.inputLength % (1 << cfg.depth) !== 0) {
    throw new Error(
        `inputLength ${cfg.inputLength} not divisible by 2^${cfg.depth}`);
  }
}

/** Upsample the time axis 2x via a reshape / upSampling2d / reshape trip
 * (tfjs layers has no native 1D upsampling). */
function upsample1d(x: tf.SymbolicTensor): tf.SymbolicTensor {
  const [len, ch] = x.shape.slice(1) as [number, number];
  let h = tf.layers.reshape({targetShape: [len, 1, ch]}).apply(x) as tf.SymbolicTensor;
  h = tf.layers.upSampling2d({size: [2, 1]}).apply(h) as tf.SymbolicTensor;
  return tf.layers.reshape({targetShape: [2 * len, ch]}).apply(h) as tf.SymbolicTensor;
}

export function buildModel(cfg: ModelConfig): tf.LayersModel {
  validateConfig(cfg);
  const seed = cfg.seed;
  const conv = (x: tf.SymbolicTensor, filters: number, kernelSize: number,
                strides = 1, name?: string) => {
    const out = tf.layers.conv1d({
      filters, kernelSize, strides,
      padding: 'same',
      kernelInitializer: tf.initializers.glorotUniform({seed}),
      name,
    }).apply(x) as tf.SymbolicTensor;
    return tf.layers.leakyReLU({alpha: 0.2}).apply(out) as tf.SymbolicTensor;
  };

  const input = tf.input({shape: [cfg.inputLength, 1]});
  let x = conv(input, cfg.baseChannels * cfg.filterMultiplier, cfg.firstKernel,
               1, 'first_conv');

  const skips: tf.SymbolicTensor[] = [];
  for (let d = 0; d < cfg.depth; d++) {
    x = conv(x, cfg.baseChannels, 15);
    skips.push(x);
    x = conv(x, cfg.baseChannels, 5, 2);  // stride-2 downsample
  }
  x = conv(x, cfg.baseChannels, 15);
  for (let d = cfg.depth - 1; d >= 0; d--) {
    x = upsample1d(x);
    x = tf.layers.concatenate().apply([x, skips[d]]) as tf.SymbolicTensor;
    x = conv(x, cfg.baseChannels, 5);
  }
  // Zero-initialized head: the untrained separator predicts silence, so its
  // starting MSE is the target power rather than an amplified copy of the
  // 16x-stronger interferer.
  const out = tf.layers.conv1d({
    filters: 1, kernelSize: 1, padding: 'same',
    kernelInitializer: 'zeros',
    name: 'output_conv',
  }).apply(x) as tf.SymbolicTensor;
  return tf.model({inputs: input, outputs: out});
}

/** Kernel length of the first convolution, read back from the built model. */
export function firstKernelSize(model: tf.LayersModel): number {
  const layer = model.getLayer('first_conv');
  return (layer.getConfig() as {kernelSize: number[]}).kernelSize[0];
}
