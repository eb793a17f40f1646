/**
 * Reader/writer for the fixed-stride binary mixture container.
 *
 * Layout: 8-byte magic "OFDMSCSS", 4-byte little-endian version, then
 * `count` contiguous records. A dataset record holds the mixture y, the
 * clean target s, and optionally the interference b, each of length N.
 * An estimates file uses the same header with one series per record.
 * The JSON manifest next to the .bin describes the generator settings.
 */
import * as fs from 'fs';
import * as path from 'path';
import {z} from 'zod';

export const MAGIC = Buffer.from('OFDMSCSS', 'ascii');
export const FORMAT_VERSION = 1;
export const HEADER_SIZE = 12;

const manifestSchema = z.object({
  format_version: z.number().int(),
  case_id: z.number().int(),
  N: z.number().int().positive(),
  K: z.number().int().positive(),
  Ksc: z.number().int().positive(),
  count: z.number().int().nonnegative(),
  master_seed: z.number().int(),
  dtype: z.enum(['f32', 'f64']),
  includes_interference: z.boolean(),
  scale: z.number(),
}).passthrough();

export type Manifest = z.infer<typeof manifestSchema>;

export interface DatasetRecord {
  y: Float64Array;
  s: Float64Array;
  b?: Float64Array;
}

function itemSize(dtype: 'f32' | 'f64'): number {
  return dtype === 'f32' ? 4 : 8;
}

/** Resolve a base path (with or without suffix) to its .bin/.json pair. */
export function datasetPaths(base: string): {bin: string; json: string} {
  const ext = path.extname(base);
  const stem = ext === '.bin' || ext === '.json'
    ? base.slice(0, -ext.length) : base;
  return {bin: stem + '.bin', json: stem + '.json'};
}

/** Copy `n` little-endian floats out of a buffer into an aligned array. */
function readFloats(buf: Buffer, byteOffset: number, n: number,
                    dtype: 'f32' | 'f64'): Float64Array {
  const out = new Float64Array(n);
  const view = new DataView(buf.buffer, buf.byteOffset + byteOffset);
  if (dtype === 'f32') {
    for (let i = 0; i < n; i++) out[i] = view.getFloat32(i * 4, true);
  } else {
    for (let i = 0; i < n; i++) out[i] = view.getFloat64(i * 8, true);
  }
  return out;
}

export function checkHeader(buf: Buffer, label: string): void {
  if (buf.length < HEADER_SIZE || !buf.subarray(0, 8).equals(MAGIC)) {
    throw new Error(`bad magic in ${label}`);
  }
  const version = buf.readUInt32LE(8);
  if (version !== FORMAT_VERSION) {
    throw new Error(`unsupported format version ${version} in ${label}`);
  }
}

export class Dataset {
  readonly manifest: Manifest;
  private readonly data: Buffer;
  private readonly seriesPerRecord: number;

  constructor(base: string) {
    const {bin, json} = datasetPaths(base);
    this.manifest = manifestSchema.parse(
        JSON.parse(fs.readFileSync(json, 'utf8')));
    this.data = fs.readFileSync(bin);
    checkHeader(this.data, bin);
    this.seriesPerRecord = this.manifest.includes_interference ? 3 : 2;
    const expected = HEADER_SIZE + this.manifest.count * this.recordBytes();
    if (this.data.length !== expected) {
      throw new Error(
          `${bin}: expected ${expected} bytes, got ${this.data.length}`);
    }
  }

  get count(): number { return this.manifest.count; }
  get n(): number { return this.manifest.N; }

  private recordBytes(): number {
    return this.seriesPerRecord * this.manifest.N * itemSize(this.manifest.dtype);
  }

  record(i: number): DatasetRecord {
    if (i < 0 || i >= this.count) throw new Error(`record ${i} out of range`);
    const {N, dtype} = this.manifest;
    const stride = N * itemSize(dtype);
    const base = HEADER_SIZE + i * this.recordBytes();
    const rec: DatasetRecord = {
      y: readFloats(this.data, base, N, dtype),
      s: readFloats(this.data, base + stride, N, dtype),
    };
    if (this.seriesPerRecord === 3) {
      rec.b = readFloats(this.data, base + 2 * stride, N, dtype);
    }
    return rec;
  }

  /** All mixtures / targets as flat arrays of shape [count, N]. */
  batch(indices?: number[]): {y: Float64Array; s: Float64Array} {
    const idx = indices ?? Array.from({length: this.count}, (_, i) => i);
    const n = this.n;
    const y = new Float64Array(idx.length * n);
    const s = new Float64Array(idx.length * n);
    idx.forEach((recIdx, row) => {
      const rec = this.record(recIdx);
      y.set(rec.y, row * n);
      s.set(rec.s, row * n);
    });
    return {y, s};
  }
}

/** Write an estimates file: header plus one series per record. */
export function writeEstimates(file: string, series: Float64Array[],
                               dtype: 'f32' | 'f64'): void {
  const n = series.length ? series[0].length : 0;
  const body = Buffer.alloc(series.length * n * itemSize(dtype));
  const view = new DataView(body.buffer, body.byteOffset);
  series.forEach((row, r) => {
    if (row.length !== n) throw new Error('ragged estimates');
    const base = r * n * itemSize(dtype);
    for (let i = 0; i < n; i++) {
      if (dtype === 'f32') view.setFloat32(base + i * 4, row[i], true);
      else view.setFloat64(base + i * 8, row[i], true);
    }
  });
  const header = Buffer.alloc(HEADER_SIZE);
  MAGIC.copy(header, 0);
  header.writeUInt32LE(FORMAT_VERSION, 8);
  fs.writeFileSync(file, Buffer.concat([header, body]));
}

export function readEstimates(file: string, n: number, count: number,
                              dtype: 'f32' | 'f64'): Float64Array[] {
  const buf = fs.readFileSync(file);
  checkHeader(buf, file);
  const expected = HEADER_SIZE + count * n * itemSize(dtype);
  if (buf.length !== expected) {
    throw new Error(`${file}: expected ${expected} bytes, got ${buf.length}`);
  }
  const out: Float64Array[] = [];
  for (let i = 0; i < count; i++) {
    out.push(readFloats(buf, HEADER_SIZE + i * n * itemSize(dtype), n, dtype));
  }
  return out;
}
