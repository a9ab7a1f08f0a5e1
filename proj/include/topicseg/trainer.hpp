// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Training loop, fine-tuning from checkpoints, and the
// pretrain -> finetune -> test experiment matrix.

#ifndef TOPICSEG_TRAINER_HPP_
#define TOPICSEG_TRAINER_HPP_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "topicseg/chunker.hpp"
#include "topicseg/losses.hpp"
#include "topicseg/models.hpp"

namespace topicseg {

enum class OptimizerKind { adaptive_moment, plain_gradient };

std::string to_string(OptimizerKind kind);
OptimizerKind optimizer_kind_from_string(std::string_view s);

struct TrainConfig {
  int epochs = 10;
  int batch_size = 8;  // documents per optimizer step
  double learning_rate = 1e-3;
  OptimizerKind optimizer = OptimizerKind::adaptive_moment;
  LossConfig loss;
  uint64_t seed = 0;

  void validate() const;  // throws InvalidConfig
  nlohmann::ordered_json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

struct TrainResult {
  std::vector<double> epoch_losses;  // mean training loss per epoch
};

// Runs cfg.epochs passes over docs with a seed-derived shuffle per epoch.
// Gradients flow from the analytic per-position loss gradient w.r.t. the
// logit. Throws EmptyTrainingSet / DivergedLoss.
TrainResult train(SegmenterModel& model, std::span<const LabeledDocument> docs,
                  const TrainConfig& cfg);

struct TrainedModel {
  std::unique_ptr<SegmenterModel> model;
  Provenance provenance;
  TrainResult result;
};

TrainedModel train_from_scratch(const ModelConfig& model_cfg, uint64_t model_seed,
                                std::span<const LabeledDocument> docs, const TrainConfig& cfg,
                                const std::string& dataset_name);

// Continues training from checkpoint parameters; the provenance chain gains a
// finetune stage. Throws CheckpointMismatch / EmptyTrainingSet / InvalidConfig.
TrainedModel finetune(const std::string& checkpoint_dir,
                      std::span<const LabeledDocument> docs, const TrainConfig& cfg,
                      const std::string& dataset_name);

// --- experiment matrix ---------------------------------------------------------

struct ExperimentSpec {
  std::string task_id;
  std::string pretrain_dataset;  // the train / from-scratch source (required)
  std::string finetune_dataset;  // empty = no finetune stage
  std::string test_dataset;
  ModelKind model_kind = ModelKind::cross_segment;
  TrainConfig train_config;
  TrainConfig finetune_config;

  void validate() const;
};

struct ResultRow {
  std::string task_id;
  std::string pretrain;
  std::string finetune;  // "-" when none
  std::string test;
  std::string model;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double wall_clock_seconds = 0.0;
};

struct ResultsTable {
  std::vector<ResultRow> rows;
};

struct MatrixOptions {
  ModelConfig model;  // kind is overridden per spec
  double threshold = 0.5;
  uint64_t model_seed = 0;
  int jobs = 1;
};

// Executes each cell (train / finetune per spec, evaluate on the test split),
// reusing checkpoints cached under cache_dir keyed by a content digest.
// Pretraining consumes the named dataset's train subset, fine-tuning its
// finetune subset, evaluation its test subset.
ResultsTable run_matrix(const std::map<std::string, DatasetSplit>& datasets,
                        std::span<const ExperimentSpec> strategies,
                        const std::string& cache_dir, const MatrixOptions& opts);

// The 7-strategy template of the training-strategy table, instantiated over an
// ordered (structured, unstructured, semi-structured) dataset triple: task
// blocks A (test semi-structured), B (test unstructured), C (test structured),
// each with strategies (S,-), (S,U), (S,C), (U,-), (U,C), (C,-), (C,U) where
// S/U/C are the pretrain datasets and the second element is the finetune set.
std::vector<ExperimentSpec> paper_strategy_template(const std::string& structured,
                                                    const std::string& unstructured,
                                                    const std::string& semistructured,
                                                    ModelKind kind,
                                                    const TrainConfig& train_cfg,
                                                    const TrainConfig& finetune_cfg);

}  // namespace topicseg

#endif  // TOPICSEG_TRAINER_HPP_
