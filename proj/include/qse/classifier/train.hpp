#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qse/classifier/dataset.hpp"
#include "qse/classifier/mlp.hpp"

namespace qse {

struct AdamParams {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TrainConfig {
  /// Full passes over the training split, or mini-batch steps when
  /// `epochs_are_steps` is set.
  long epochs = 5000;
  bool epochs_are_steps = false;
  AdamParams adam;
  std::uint64_t seed = 1;
  int batch_size = 256;
  double dropout = 0.0;
  double l2 = 0.0;

  /// Throws ConfigError.
  void validate() const;
};

struct TrainResult {
  MlpModel model;
  /// Mini-batch loss at every step.
  std::vector<double> loss_curve;
  long steps = 0;
};

/// Called after every completed pass with (pass index, mean loss over the pass).
using EpochCallback = std::function<void(long, double)>;

/// Adam on the mean softmax cross-entropy. Deterministic given cfg.seed.
/// Throws TrainingDivergedError when the loss becomes non-finite.
TrainResult train(MlpModel model, const LabeledDataset& data, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

/// Adam state for a model's parameters.
class AdamOptimizer {
 public:
  AdamOptimizer(const MlpModel& model, AdamParams params);
  void step(MlpModel& model, const Gradients& grads);
  long steps() const { return t_; }

 private:
  AdamParams p_;
  long t_ = 0;
  std::vector<DenseLayer> m_;
  std::vector<DenseLayer> v_;
};

}  // namespace qse
