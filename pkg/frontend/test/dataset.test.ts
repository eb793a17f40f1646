import {execFileSync} from 'child_process';
import * as fs from 'fs';
import * as os from 'os';
import * as path from 'path';
import {beforeAll, describe, expect, it} from 'vitest';

import {Dataset, datasetPaths, HEADER_SIZE, MAGIC, readEstimates,
        writeEstimates} from '../src/dataset';

let tmp: string;

function gen(args: string[]): void {
  execFileSync('ofdm-scss', ['gen', ...args], {stdio: 'pipe'});
}

beforeAll(() => {
  tmp = fs.mkdtempSync(path.join(os.tmpdir(), 'nn-ds-'));
  gen(['--case', '4', '--count', '8', '--seed', '3', '--out',
       path.join(tmp, 'case4')]);
  gen(['--case', '2', '--count', '4', '--seed', '3', '--include-b', '--out',
       path.join(tmp, 'case2b')]);
});

describe('datasetPaths', () => {
  it('strips known suffixes', () => {
    expect(datasetPaths('/x/d.bin')).toEqual({bin: '/x/d.bin', json: '/x/d.json'});
    expect(datasetPaths('/x/d')).toEqual({bin: '/x/d.bin', json: '/x/d.json'});
  });
});

describe('Dataset', () => {
  it('reads the manifest and record geometry', () => {
    const d = new Dataset(path.join(tmp, 'case4'));
    expect(d.count).toBe(8);
    expect(d.n).toBe(4096);
    expect(d.manifest.case_id).toBe(4);
    expect(d.manifest.K).toBe(64);
  });

  it('mixture is signal plus interference when b is stored', () => {
    const d = new Dataset(path.join(tmp, 'case2b'));
    const rec = d.record(0);
    expect(rec.b).toBeDefined();
    for (let i = 0; i < d.n; i++) {
      expect(rec.y[i]).toBeCloseTo(rec.s[i] + rec.b![i], 12);
    }
  });

  it('target power is near unity, mixture near 17', () => {
    const d = new Dataset(path.join(tmp, 'case4'));
    let ps = 0, py = 0;
    for (let i = 0; i < d.count; i++) {
      const rec = d.record(i);
      for (const v of rec.s) ps += v * v;
      for (const v of rec.y) py += v * v;
    }
    ps /= d.count * d.n;
    py /= d.count * d.n;
    expect(ps).toBeGreaterThan(0.7);
    expect(ps).toBeLessThan(1.3);
    expect(py / ps).toBeGreaterThan(10);
  });

  it('rejects out-of-range records and truncated files', () => {
    const d = new Dataset(path.join(tmp, 'case4'));
    expect(() => d.record(8)).toThrow(/out of range/);
    const clipped = path.join(tmp, 'clipped');
    const {bin, json} = datasetPaths(path.join(tmp, 'case4'));
    fs.writeFileSync(clipped + '.bin',
                     fs.readFileSync(bin).subarray(0, HEADER_SIZE + 100));
    fs.copyFileSync(json, clipped + '.json');
    expect(() => new Dataset(clipped)).toThrow(/expected/);
  });
});

describe('estimates files', () => {
  it('round-trips with the documented header', () => {
    const file = path.join(tmp, 'est.bin');
    const series = [Float64Array.from([1, -2, 0.5]),
                    Float64Array.from([0, 3.25, -1])];
    writeEstimates(file, series, 'f64');
    const raw = fs.readFileSync(file);
    expect(raw.subarray(0, 8).equals(MAGIC)).toBe(true);
    expect(raw.readUInt32LE(8)).toBe(1);
    expect(raw.length).toBe(HEADER_SIZE + 2 * 3 * 8);
    const back = readEstimates(file, 3, 2, 'f64');
    expect(Array.from(back[0])).toEqual([1, -2, 0.5]);
    expect(Array.from(back[1])).toEqual([0, 3.25, -1]);
  });

  it('f32 round-trip quantizes to single precision', () => {
    const file = path.join(tmp, 'est32.bin');
    writeEstimates(file, [Float64Array.from([Math.PI])], 'f32');
    const back = readEstimates(file, 1, 1, 'f32');
    expect(back[0][0]).toBe(Math.fround(Math.PI));
  });
});
