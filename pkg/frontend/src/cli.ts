/**
 * nn-baseline CLI.
 *
 *   train     — fit a separator on a dataset pair, save checkpoint + curve
 *   evaluate  — run a checkpoint over a dataset, emit estimates + MSE-dB
 *   trend     — kernel-size comparison run (W = 15, 51, 101 at equal budget)
 *
 * Datasets come from the companion toolkit's `gen` command; estimates files
 * can be independently verified with its `score` command.
 */
import * as path from 'path';
import yargs from 'yargs';
import {hideBin} from 'yargs/helpers';

import {Dataset} from './dataset';
import {defaultConfig} from './model';
import {evaluate} from './evaluate';
import {defaultTrainConfig, loadCheckpoint, saveCheckpoint, train,
        writeCurve} from './train';

async function cmdTrain(argv: {
  train: string; val: string; out: string; kernel: number; multiplier: number;
  depth: number; channels: number; lr: number; epochs: number;
  patience: number; batch: number; seed: number;
}): Promise<void> {
  const probe = new Dataset(argv.train);
  const modelCfg = defaultConfig({
    firstKernel: argv.kernel,
    filterMultiplier: argv.multiplier,
    depth: argv.depth,
    baseChannels: argv.channels,
    inputLength: probe.n,
  });
  const tcfg = defaultTrainConfig({
    trainPath: argv.train,
    valPath: argv.val,
    learningRate: argv.lr,
    maxEpochs: argv.epochs,
    patience: argv.patience,
    batchSize: argv.batch,
    seed: argv.seed,
  });
  const result = await train(modelCfg, tcfg, line => console.error(line));
  await saveCheckpoint(argv.out, result.model, modelCfg, tcfg);
  writeCurve(path.join(argv.out, 'curve.csv'), result.curve);
  console.log(JSON.stringify({
    checkpoint: argv.out,
    epochs_run: result.curve.length,
    best_val_mse_db: result.bestValMseDb,
  }, null, 2));
}

async function cmdEvaluate(argv: {checkpoint: string; data: string;
                                  estimates?: string}): Promise<void> {
  const {model} = await loadCheckpoint(argv.checkpoint);
  const report = evaluate(model, new Dataset(argv.data), argv.estimates);
  console.log(JSON.stringify({
    count: report.count,
    mse_linear: report.mseLinear,
    mse_db: report.mseDbValue === -Infinity ? '-inf' : report.mseDbValue,
    estimates: argv.estimates ?? null,
  }, null, 2));
}

async function cmdTrend(argv: {train: string; val: string; out: string;
                               epochs: number; seed: number}): Promise<void> {
  const results: Record<string, number> = {};
  for (const w of [15, 51, 101]) {
    console.error(`--- first kernel W=${w} ---`);
    const dir = path.join(argv.out, `w${w}`);
    const probe = new Dataset(argv.train);
    const modelCfg = defaultConfig(
        {firstKernel: w, filterMultiplier: w === 15 ? 1 : 20,
         inputLength: probe.n});
    const tcfg = defaultTrainConfig({
      trainPath: argv.train,
      valPath: argv.val,
      maxEpochs: argv.epochs,
      seed: argv.seed,
    });
    const result = await train(modelCfg, tcfg, line => console.error(line));
    await saveCheckpoint(dir, result.model, modelCfg, tcfg);
    writeCurve(path.join(dir, 'curve.csv'), result.curve);
    results[`W=${w}`] = result.bestValMseDb;
  }
  console.log(JSON.stringify(results, null, 2));
}

export async function main(args: string[]): Promise<void> {
  await yargs(args)
      .command(
          'train', 'train a separator',
          y => y.option('train', {type: 'string', demandOption: true})
                .option('val', {type: 'string', demandOption: true})
                .option('out', {type: 'string', demandOption: true})
                .option('kernel', {type: 'number', default: 15})
                .option('multiplier', {type: 'number', default: 1})
                .option('depth', {type: 'number', default: 4})
                .option('channels', {type: 'number', default: 16})
                .option('lr', {type: 'number', default: 1e-4})
                .option('epochs', {type: 'number', default: 200})
                .option('patience', {type: 'number', default: 20})
                .option('batch', {type: 'number', default: 16})
                .option('seed', {type: 'number', default: 0}),
          argv => cmdTrain(argv))
      .command(
          'evaluate', 'evaluate a checkpoint on a dataset',
          y => y.option('checkpoint', {type: 'string', demandOption: true})
                .option('data', {type: 'string', demandOption: true})
                .option('estimates', {type: 'string'}),
          argv => cmdEvaluate(argv))
      .command(
          'trend', 'first-layer kernel size comparison (W=15/51/101)',
          y => y.option('train', {type: 'string', demandOption: true})
                .option('val', {type: 'string', demandOption: true})
                .option('out', {type: 'string', demandOption: true})
                .option('epochs', {type: 'number', default: 200})
                .option('seed', {type: 'number', default: 0}),
          argv => cmdTrend(argv))
      .demandCommand(1)
      .strict()
      .parseAsync();
}

if (require.main === module) {
  main(hideBin(process.argv)).catch(err => {
    console.error(err.message ?? err);
    process.exitCode = 1;
  });
}
