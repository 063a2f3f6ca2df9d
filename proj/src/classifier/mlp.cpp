#include "qse/classifier/mlp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qse/fock/measure.hpp"

namespace qse {
namespace {

using nlohmann::json;

Eigen::MatrixXd activate(Activation a, const Eigen::MatrixXd& z) {
  switch (a) {
    case Activation::Relu: return z.cwiseMax(0.0);
    case Activation::Tanh: return z.array().tanh().matrix();
  }
  return z;
}

// Derivative expressed through the pre-activation.
Eigen::MatrixXd activate_grad(Activation a, const Eigen::MatrixXd& z) {
  switch (a) {
    case Activation::Relu: return (z.array() > 0.0).cast<double>().matrix();
    case Activation::Tanh: return (1.0 - z.array().tanh().square()).matrix();
  }
  return Eigen::MatrixXd::Ones(z.rows(), z.cols());
}

void check_labels(const Eigen::MatrixXd& inputs, const std::vector<int>& labels, int classes) {
  if (static_cast<std::size_t>(inputs.cols()) != labels.size())
    throw ShapeError("one label per input column required");
  for (int l : labels) {
    if (l < 0 || l >= classes) throw DomainError("label out of range");
  }
}

// Column-wise log-sum-exp.
Eigen::RowVectorXd log_sum_exp(const Eigen::MatrixXd& logits) {
  const Eigen::RowVectorXd m = logits.colwise().maxCoeff();
  return m.array() +
         (logits.rowwise() - m).array().exp().colwise().sum().log();
}

}  // namespace

std::string to_string(StateCategory c) {
  switch (c) {
    case StateCategory::Cat: return "cat";
    case StateCategory::SqueezedCat: return "squeezed_cat";
    case StateCategory::Zombie: return "zombie";
    case StateCategory::ON: return "on";
    case StateCategory::CubicPhase: return "cubic_phase";
    case StateCategory::Other: return "other";
  }
  return "?";
}

std::optional<StateCategory> parse_category(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "other") return StateCategory::Other;
  if (auto k = parse_target_kind(s)) return category_of(*k);
  return std::nullopt;
}

StateCategory category_of(TargetKind kind) { return static_cast<StateCategory>(static_cast<int>(kind)); }

std::string to_string(Activation a) { return a == Activation::Relu ? "relu" : "tanh"; }

MlpModel::MlpModel(std::vector<int> layer_dims, Activation hidden)
    : dims_(std::move(layer_dims)), hidden_(hidden) {
  if (dims_.size() < 2) throw ShapeError("an MLP needs at least input and output sizes");
  for (int d : dims_) {
    if (d < 1) throw ShapeError("layer sizes must be positive");
  }
  for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
    layers_.push_back({Eigen::MatrixXd::Zero(dims_[i + 1], dims_[i]), Eigen::VectorXd::Zero(dims_[i + 1])});
  }
}

std::vector<int> MlpModel::default_dims(int input_dim) { return {input_dim, 25, 25, 10, kNumCategories}; }

MlpModel MlpModel::initialized(std::vector<int> layer_dims, Activation hidden, std::mt19937_64& rng) {
  MlpModel model(std::move(layer_dims), hidden);
  for (auto& layer : model.layers_) {
    const double limit = std::sqrt(6.0 / double(layer.weights.cols()));
    std::uniform_real_distribution<double> u(-limit, limit);
    for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
      for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) layer.weights(i, j) = u(rng);
  }
  return model;
}

MlpModel MlpModel::zeros(std::vector<int> layer_dims, Activation hidden) {
  return MlpModel(std::move(layer_dims), hidden);
}

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
  return n;
}

Eigen::MatrixXd MlpModel::logits(const Eigen::MatrixXd& inputs) const {
  if (inputs.rows() != input_dim()) throw ShapeError("input rows must equal the model input size");
  Eigen::MatrixXd a = inputs;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weights * a;
    z.colwise() += layers_[l].bias;
    a = (l + 1 < layers_.size()) ? activate(hidden_, z) : std::move(z);
  }
  return a;
}

Eigen::VectorXd MlpModel::fit_input(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(input_dim());
  const Eigen::Index n = std::min<Eigen::Index>(x.size(), input_dim());
  v.head(n) = x.head(n);
  return v;
}

Eigen::MatrixXd softmax(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd e = (logits.rowwise() - logits.colwise().maxCoeff()).array().exp().matrix();
  const Eigen::RowVectorXd sums = e.colwise().sum();
  return e.array().rowwise() / sums.array();
}

Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& x) {
  return softmax(model.logits(model.fit_input(x))).col(0);
}

double surrogate_score(const MlpModel& model, const SingleModeState& state, StateCategory category) {
  return forward(model, number_distribution(state))(static_cast<int>(category));
}

double batch_loss(const MlpModel& model, const Eigen::MatrixXd& inputs, const std::vector<int>& labels) {
  check_labels(inputs, labels, model.output_dim());
  const Eigen::MatrixXd z = model.logits(inputs);
  const Eigen::RowVectorXd lse = log_sum_exp(z);
  double total = 0.0;
  for (Eigen::Index j = 0; j < z.cols(); ++j) total += lse(j) - z(labels[static_cast<std::size_t>(j)], j);
  return total / double(z.cols());
}

LossGradient loss_and_gradients(const MlpModel& model, const Eigen::MatrixXd& inputs,
                                const std::vector<int>& labels,
                                const std::vector<Eigen::MatrixXd>& dropout_masks) {
  check_labels(inputs, labels, model.output_dim());
  const auto& layers = model.layers();
  const std::size_t depth = layers.size();
  const bool use_masks = !dropout_masks.empty();
  if (use_masks && dropout_masks.size() + 1 != depth) throw ShapeError("one dropout mask per hidden layer");

  std::vector<Eigen::MatrixXd> pre(depth);
  std::vector<Eigen::MatrixXd> post(depth + 1);
  post[0] = inputs;
  for (std::size_t l = 0; l < depth; ++l) {
    pre[l] = layers[l].weights * post[l];
    pre[l].colwise() += layers[l].bias;
    if (l + 1 < depth) {
      post[l + 1] = activate(model.hidden_activation(), pre[l]);
      if (use_masks) post[l + 1] = post[l + 1].cwiseProduct(dropout_masks[l]);
    } else {
      post[l + 1] = pre[l];
    }
  }

  const Eigen::MatrixXd& z = pre.back();
  const double batch = double(z.cols());
  const Eigen::RowVectorXd lse = log_sum_exp(z);
  LossGradient out;
  for (Eigen::Index j = 0; j < z.cols(); ++j) out.loss += lse(j) - z(labels[static_cast<std::size_t>(j)], j);
  out.loss /= batch;

  Eigen::MatrixXd delta = softmax(z);
  for (Eigen::Index j = 0; j < z.cols(); ++j) delta(labels[static_cast<std::size_t>(j)], j) -= 1.0;
  delta /= batch;

  out.grads.layers.resize(depth);
  for (std::size_t l = depth; l-- > 0;) {
    out.grads.layers[l].weights = delta * post[l].transpose();
    out.grads.layers[l].bias = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd back = layers[l].weights.transpose() * delta;
    if (use_masks) back = back.cwiseProduct(dropout_masks[l - 1]);
    delta = back.cwiseProduct(activate_grad(model.hidden_activation(), pre[l - 1]));
  }
  return out;
}

std::string MlpModel::to_json() const {
  json j;
  j["format"] = "qse-mlp";
  j["version"] = kModelFormatVersion;
  j["layer_dims"] = dims_;
  j["activation"] = to_string(hidden_);
  j["layers"] = json::array();
  for (const auto& l : layers_) {
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(l.weights.size()));
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) w.push_back(l.weights(r, c));
    j["layers"].push_back({{"weights", w}, {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
  }
  j["metadata"] = {{"seed", metadata_.seed},
                   {"epochs", metadata_.epochs},
                   {"test_accuracy", metadata_.test_accuracy},
                   {"train_accuracy", metadata_.train_accuracy}};
  return j.dump();
}

MlpModel MlpModel::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file: ") + e.what(), 0, e.byte);
  }
  try {
    if (j.at("format") != "qse-mlp") throw ParseError("not a qse-mlp model file", 0, 0);
    if (j.at("version").get<int>() != kModelFormatVersion)
      throw ParseError("unsupported model version", 0, 0);
    const auto act = j.at("activation").get<std::string>();
    MlpModel m(j.at("layer_dims").get<std::vector<int>>(), act == "tanh" ? Activation::Tanh : Activation::Relu);
    const auto& layers = j.at("layers");
    if (layers.size() != m.layers_.size()) throw ParseError("layer count mismatch", 0, 0);
    for (std::size_t i = 0; i < m.layers_.size(); ++i) {
      auto w = layers[i].at("weights").get<std::vector<double>>();
      auto b = layers[i].at("bias").get<std::vector<double>>();
      auto& l = m.layers_[i];
      if (w.size() != static_cast<std::size_t>(l.weights.size()) ||
          b.size() != static_cast<std::size_t>(l.bias.size()))
        throw ParseError("layer shape mismatch", 0, 0);
      std::size_t k = 0;
      for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
        for (Eigen::Index c = 0; c < l.weights.cols(); ++c) l.weights(r, c) = w[k++];
      l.bias = Eigen::Map<Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    }
    const auto& meta = j.at("metadata");
    m.metadata_.seed = meta.at("seed").get<std::uint64_t>();
    m.metadata_.epochs = meta.at("epochs").get<long>();
    m.metadata_.test_accuracy = meta.at("test_accuracy").get<double>();
    m.metadata_.train_accuracy = meta.at("train_accuracy").get<double>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what(), 0, 0);
  }
}

void MlpModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file " + path.string());
  out << to_json() << "\n";
}

MlpModel MlpModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

bool operator==(const MlpModel& a, const MlpModel& b) {
  if (a.dims_ != b.dims_ || a.hidden_ != b.hidden_) return false;
  for (std::size_t i = 0; i < a.layers_.size(); ++i) {
    if (a.layers_[i].weights != b.layers_[i].weights || a.layers_[i].bias != b.layers_[i].bias) return false;
  }
  return true;
}

}  // namespace qse
