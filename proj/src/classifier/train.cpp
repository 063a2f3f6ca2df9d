#include "qse/classifier/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qse {
namespace {

std::vector<DenseLayer> zeros_like(const MlpModel& model) {
  std::vector<DenseLayer> out;
  for (const auto& l : model.layers()) {
    out.push_back({Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()), Eigen::VectorXd::Zero(l.bias.size())});
  }
  return out;
}

std::vector<Eigen::MatrixXd> dropout_masks(const MlpModel& model, Eigen::Index batch, double rate,
                                           std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXd> masks;
  if (rate <= 0.0) return masks;
  std::bernoulli_distribution keep(1.0 - rate);
  const auto& dims = model.layer_dims();
  for (std::size_t l = 1; l + 1 < dims.size(); ++l) {
    Eigen::MatrixXd m(dims[l], batch);
    for (Eigen::Index j = 0; j < m.size(); ++j) m.data()[j] = keep(rng) ? 1.0 / (1.0 - rate) : 0.0;
    masks.push_back(std::move(m));
  }
  return masks;
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (!(adam.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (adam.beta1 < 0.0 || adam.beta1 >= 1.0 || adam.beta2 < 0.0 || adam.beta2 >= 1.0)
    throw ConfigError("moment decay rates must be in [0, 1)");
  if (!(adam.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (batch_size < 1) throw ConfigError("batch size must be at least 1");
  if (dropout < 0.0 || dropout >= 1.0) throw ConfigError("dropout must be in [0, 1)");
  if (l2 < 0.0) throw ConfigError("l2 must be non-negative");
}

AdamOptimizer::AdamOptimizer(const MlpModel& model, AdamParams params)
    : p_(params), m_(zeros_like(model)), v_(zeros_like(model)) {}

void AdamOptimizer::step(MlpModel& model, const Gradients& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(p_.beta1, double(t_));
  const double c2 = 1.0 - std::pow(p_.beta2, double(t_));
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = p_.beta1 * m + (1.0 - p_.beta1) * g;
    v = p_.beta2 * v + (1.0 - p_.beta2) * g.cwiseAbs2();
    param.array() -= p_.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + p_.epsilon);
  };
  auto& layers = model.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    update(layers[l].weights, m_[l].weights, v_[l].weights, grads.layers[l].weights);
    update(layers[l].bias, m_[l].bias, v_[l].bias, grads.layers[l].bias);
  }
}

TrainResult train(MlpModel model, const LabeledDataset& data, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  if (data.size() == 0) throw ShapeError("training split is empty");
  if (data.inputs.rows() != model.input_dim()) throw ShapeError("dataset rows must equal the model input size");

  std::mt19937_64 rng(cfg.seed);
  AdamOptimizer adam(model, cfg.adam);
  const std::size_t n = data.size();
  const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(cfg.batch_size), n);
  const long batches_per_pass = static_cast<long>((n + batch - 1) / batch);
  const long total_steps = cfg.epochs_are_steps ? cfg.epochs : cfg.epochs * batches_per_pass;

  TrainResult result;
  result.loss_curve.reserve(static_cast<std::size_t>(total_steps));
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::vector<int> labels;

  long step = 0;
  for (long pass = 0; step < total_steps; ++pass) {
    std::shuffle(order.begin(), order.end(), rng);
    double pass_loss = 0.0;
    long pass_steps = 0;
    for (std::size_t start = 0; start < n && step < total_steps; start += batch) {
      const std::size_t stop = std::min(n, start + batch);
      const std::vector<Eigen::Index> idx(order.begin() + static_cast<std::ptrdiff_t>(start),
                                          order.begin() + static_cast<std::ptrdiff_t>(stop));
      labels.clear();
      for (Eigen::Index i : idx) labels.push_back(data.labels[static_cast<std::size_t>(i)]);
      const Eigen::MatrixXd x = data.inputs(Eigen::all, idx);

      LossGradient lg = loss_and_gradients(model, x, labels,
                                           dropout_masks(model, x.cols(), cfg.dropout, rng));
      if (cfg.l2 > 0.0) {
        for (std::size_t l = 0; l < lg.grads.layers.size(); ++l) {
          lg.loss += 0.5 * cfg.l2 * model.layers()[l].weights.squaredNorm();
          lg.grads.layers[l].weights += cfg.l2 * model.layers()[l].weights;
        }
      }
      if (!std::isfinite(lg.loss)) throw TrainingDivergedError("training loss is not finite", step);
      adam.step(model, lg.grads);
      result.loss_curve.push_back(lg.loss);
      pass_loss += lg.loss;
      ++pass_steps;
      ++step;
    }
    if (on_epoch && pass_steps > 0) on_epoch(pass, pass_loss / double(pass_steps));
  }

  result.steps = step;
  model.metadata().seed = cfg.seed;
  model.metadata().epochs = cfg.epochs;
  result.model = std::move(model);
  return result;
}

}  // namespace qse
