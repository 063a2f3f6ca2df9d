#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qse/fock/state.hpp"
#include "qse/targets/targets.hpp"

namespace qse {

inline constexpr int kNumCategories = 6;
inline constexpr int kDefaultInputDim = 61;
inline constexpr int kModelFormatVersion = 1;

/// Classifier output classes; the first five share TargetKind's order.
enum class StateCategory { Cat = 0, SqueezedCat, Zombie, ON, CubicPhase, Other };

std::string to_string(StateCategory c);
std::optional<StateCategory> parse_category(const std::string& name);
StateCategory category_of(TargetKind kind);

enum class Activation { Relu, Tanh };
std::string to_string(Activation a);

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;
};

struct ModelMetadata {
  std::uint64_t seed = 0;
  long epochs = 0;
  double test_accuracy = -1.0;
  double train_accuracy = -1.0;
};

/// Fully connected classifier: hidden layers apply the activation, the
/// output layer a softmax over the six categories.
class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(std::vector<int> layer_dims, Activation hidden);

  /// [input_dim, 25, 25, 10, 6]
  static std::vector<int> default_dims(int input_dim = kDefaultInputDim);

  /// Symmetric uniform initialization with limit sqrt(6 / fan_in).
  static MlpModel initialized(std::vector<int> layer_dims, Activation hidden, std::mt19937_64& rng);
  /// All weights and biases zero (uniform output).
  static MlpModel zeros(std::vector<int> layer_dims, Activation hidden = Activation::Relu);

  int input_dim() const { return dims_.front(); }
  int output_dim() const { return dims_.back(); }
  const std::vector<int>& layer_dims() const { return dims_; }
  Activation hidden_activation() const { return hidden_; }
  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  ModelMetadata& metadata() { return metadata_; }
  const ModelMetadata& metadata() const { return metadata_; }
  std::size_t parameter_count() const;

  /// Logits for a batch; columns are samples.
  Eigen::MatrixXd logits(const Eigen::MatrixXd& inputs) const;

  /// Pads with zeros or drops trailing entries to match input_dim.
  Eigen::VectorXd fit_input(const Eigen::VectorXd& x) const;

  void save(const std::filesystem::path& path) const;
  static MlpModel load(const std::filesystem::path& path);
  std::string to_json() const;
  static MlpModel from_json(const std::string& text);

  friend bool operator==(const MlpModel& a, const MlpModel& b);

 private:
  std::vector<int> dims_;
  Activation hidden_ = Activation::Relu;
  std::vector<DenseLayer> layers_;
  ModelMetadata metadata_;
};

/// Column-wise softmax, shifted by the column max.
Eigen::MatrixXd softmax(const Eigen::MatrixXd& logits);

/// Category probabilities for one input vector.
Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& x);

/// Probability that `state` belongs to `category`, from its number distribution.
double surrogate_score(const MlpModel& model, const SingleModeState& state, StateCategory category);

/// Gradients with the same shapes as the model's layers.
struct Gradients {
  std::vector<DenseLayer> layers;
};

struct LossGradient {
  double loss = 0.0;
  Gradients grads;
};

/// Mean softmax cross-entropy over the batch (columns of `inputs`).
double batch_loss(const MlpModel& model, const Eigen::MatrixXd& inputs,
                  const std::vector<int>& labels);

/// Loss and its gradient by backpropagation. `dropout_masks`, when
/// non-empty, holds one pre-scaled mask per hidden layer.
LossGradient loss_and_gradients(const MlpModel& model, const Eigen::MatrixXd& inputs,
                                const std::vector<int>& labels,
                                const std::vector<Eigen::MatrixXd>& dropout_masks = {});

}  // namespace qse
