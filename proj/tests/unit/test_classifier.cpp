#include <doctest.h>

#include <filesystem>
#include <limits>
#include <numeric>

#include "qse/classifier/confusion.hpp"
#include "qse/classifier/train.hpp"

using namespace qse;

namespace {

Eigen::MatrixXd random_inputs(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = g(rng);
  return m;
}

// Central-difference derivative of the batch loss for one parameter.
double numeric_derivative(MlpModel model, const Eigen::MatrixXd& x, const std::vector<int>& y,
                          std::size_t layer, bool bias, Eigen::Index i, Eigen::Index j) {
  const double h = 1e-6;
  auto& l = model.layers()[layer];
  double& p = bias ? l.bias(i) : l.weights(i, j);
  const double saved = p;
  p = saved + h;
  const double up = batch_loss(model, x, y);
  p = saved - h;
  const double down = batch_loss(model, x, y);
  p = saved;
  return (up - down) / (2 * h);
}

}  // namespace

TEST_CASE("backpropagation matches finite differences") {
  for (Activation act : {Activation::Tanh, Activation::Relu}) {
    std::mt19937_64 rng(5);
    const auto model = MlpModel::initialized({7, 6, 5, 4}, act, rng);
    const auto x = random_inputs(7, 9, rng);
    const std::vector<int> y = {0, 1, 2, 3, 0, 1, 2, 3, 1};
    const auto lg = loss_and_gradients(model, x, y);
    CHECK(lg.loss == doctest::Approx(batch_loss(model, x, y)).epsilon(1e-14));
    double worst = 0.0;
    for (std::size_t l = 0; l < model.layers().size(); ++l) {
      const auto& g = lg.grads.layers[l];
      for (Eigen::Index i = 0; i < g.weights.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.weights.cols(); ++j) {
          const double fd = numeric_derivative(model, x, y, l, false, i, j);
          worst = std::max(worst, std::abs(fd - g.weights(i, j)) / std::max(1.0, std::abs(fd)));
        }
        const double fd = numeric_derivative(model, x, y, l, true, i, 0);
        worst = std::max(worst, std::abs(fd - g.bias(i)) / std::max(1.0, std::abs(fd)));
      }
    }
    CAPTURE(to_string(act));
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("softmax is shift invariant and normalized") {
  std::mt19937_64 rng(6);
  const auto z = random_inputs(6, 4, rng);
  const auto p = softmax(z);
  CHECK((p.colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-15);
  Eigen::MatrixXd shifted = z;
  shifted.rowwise() += Eigen::RowVectorXd::Constant(4, 1234.5);
  CHECK((softmax(shifted) - p).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::MatrixXd huge = z * 1e4;
  CHECK(softmax(huge).allFinite());
}

TEST_CASE("a zero model predicts the uniform distribution") {
  const auto model = MlpModel::zeros(MlpModel::default_dims());
  const Eigen::VectorXd p = forward(model, Eigen::VectorXd::Ones(61));
  for (int c = 0; c < kNumCategories; ++c) CHECK(p(c) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(model.parameter_count() == 61 * 25 + 25 + 25 * 25 + 25 + 25 * 10 + 10 + 10 * 6 + 6);
  // Shorter inputs are zero-padded, longer ones truncated.
  CHECK(model.fit_input(Eigen::VectorXd::Ones(10)).sum() == 10.0);
  CHECK(model.fit_input(Eigen::VectorXd::Ones(80)).size() == 61);
}

TEST_CASE("model serialization is bit-exact") {
  std::mt19937_64 rng(7);
  auto model = MlpModel::initialized(MlpModel::default_dims(), Activation::Relu, rng);
  model.metadata().seed = 42;
  model.metadata().epochs = 17;
  model.metadata().test_accuracy = 0.123456789012345;
  const auto back = MlpModel::from_json(model.to_json());
  CHECK(back == model);
  CHECK(back.metadata().seed == 42);
  CHECK(back.metadata().test_accuracy == model.metadata().test_accuracy);
  const auto path = std::filesystem::temp_directory_path() / "qse_model_test.json";
  model.save(path);
  CHECK(MlpModel::load(path) == model);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(MlpModel::from_json("{\"format\": \"qse-mlp\""), ParseError);
  CHECK_THROWS_AS(MlpModel::from_json("{\"format\": \"other\"}"), ParseError);
  CHECK_THROWS_AS(MlpModel::from_json("[1, 2]"), ParseError);
}

TEST_CASE("datasets are balanced, normalized and deterministic") {
  const auto a = synthesize_split(601, Split::Train, 30, 9);
  const auto counts = a.category_counts();
  CHECK(counts[0] == 101);
  for (int c = 1; c < kNumCategories; ++c) CHECK(counts[c] == 100);
  CHECK(a.inputs.rows() == 31);
  CHECK((a.inputs.colwise().norm().array() - 1.0).abs().maxCoeff() < 1e-10);
  CHECK((a.inputs.array() >= 0.0).all());
  CHECK(synthesize_split(601, Split::Train, 30, 9) == a);
  CHECK_FALSE(synthesize_split(601, Split::Train, 30, 10) == a);
  const auto both = synthesize_dataset({120, 60}, 30, 9);
  CHECK(both.train.size() == 120);
  CHECK(both.test.size() == 60);
  CHECK(both.test.split == Split::Test);
  CHECK_FALSE(both.train.inputs.leftCols(60) == both.test.inputs);

  const auto path = std::filesystem::temp_directory_path() / "qse_dataset_test.bin";
  a.save(path);
  CHECK(LabeledDataset::load(path) == a);
  std::filesystem::remove(path);
}

TEST_CASE("target parameters are drawn uniformly over the family") {
  std::mt19937_64 rng(11);
  const auto cat = TargetFamily::search(TargetKind::Cat);
  const auto on = TargetFamily::search(TargetKind::ON);
  double mean_r2 = 0.0;
  double mean_delta = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const auto p = sample_target_params(cat, rng);
    CHECK_NOTHROW(cat.check(p));
    mean_r2 += std::norm(p.alpha);
    const auto q = sample_target_params(on, rng);
    mean_delta += q.delta;
  }
  // Uniform on a disk of radius 2: E|alpha|^2 = 2.
  CHECK(mean_r2 / draws == doctest::Approx(2.0).epsilon(0.02));
  CHECK(mean_delta / draws == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("Adam's first step moves each parameter by the learning rate") {
  std::mt19937_64 rng(12);
  auto model = MlpModel::initialized({4, 3, 2}, Activation::Tanh, rng);
  const auto before = model;
  const auto x = random_inputs(4, 5, rng);
  const std::vector<int> y = {0, 1, 1, 0, 1};
  const auto lg = loss_and_gradients(model, x, y);
  AdamParams p;
  p.learning_rate = 0.01;
  AdamOptimizer opt(model, p);
  opt.step(model, lg.grads);
  CHECK(opt.steps() == 1);
  for (std::size_t l = 0; l < model.layers().size(); ++l) {
    const Eigen::MatrixXd& g = lg.grads.layers[l].weights;
    const Eigen::MatrixXd delta = model.layers()[l].weights - before.layers()[l].weights;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const double expected = -0.01 * g(i) / (std::abs(g(i)) + 1e-8);
      CHECK(delta(i) == doctest::Approx(expected).epsilon(1e-6));
    }
  }
}

TEST_CASE("training memorizes a single example") {
  LabeledDataset one;
  std::mt19937_64 rng(13);
  one.inputs = random_inputs(11, 1, rng).cwiseAbs();
  one.labels = {4};
  TrainConfig cfg;
  cfg.epochs = 2000;
  cfg.adam.learning_rate = 1e-2;
  cfg.batch_size = 1;
  std::mt19937_64 init(1);
  auto result = train(MlpModel::initialized(MlpModel::default_dims(11), Activation::Relu, init), one, cfg);
  CHECK(batch_loss(result.model, one.inputs, one.labels) < 1e-3);
  CHECK(result.steps == 2000);
  CHECK(result.loss_curve.size() == 2000);
}

TEST_CASE("training is deterministic in its seed") {
  const auto data = synthesize_split(300, Split::Train, 20, 3);
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.batch_size = 32;
  cfg.seed = 4;
  std::mt19937_64 r1(2), r2(2);
  const auto m0 = MlpModel::initialized(MlpModel::default_dims(21), Activation::Relu, r1);
  const auto a = train(m0, data, cfg);
  const auto b = train(MlpModel::initialized(MlpModel::default_dims(21), Activation::Relu, r2), data, cfg);
  CHECK(a.model == b.model);
  CHECK(a.loss_curve == b.loss_curve);
  CHECK(a.model.metadata().epochs == 5);
  cfg.seed = 5;
  CHECK_FALSE(train(m0, data, cfg).model == a.model);
  long passes = 0;
  cfg.dropout = 0.2;
  train(m0, data, cfg, [&](long, double loss) {
    ++passes;
    CHECK(std::isfinite(loss));
  });
  CHECK(passes == 5);
}

TEST_CASE("training rejects bad configurations and non-finite losses") {
  TrainConfig cfg;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.adam.learning_rate = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.dropout = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  LabeledDataset bad;
  bad.inputs = Eigen::MatrixXd::Constant(5, 2, std::numeric_limits<double>::quiet_NaN());
  bad.labels = {0, 1};
  cfg = TrainConfig{};
  cfg.epochs = 3;
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(train(MlpModel::initialized({5, 3, 6}, Activation::Relu, rng), bad, cfg), TrainingDivergedError);
}

TEST_CASE("confusion matrix bookkeeping") {
  std::vector<int> actual, predicted;
  for (int c = 0; c < kNumCategories; ++c)
    for (int k = 0; k < 10; ++k) {
      actual.push_back(c);
      predicted.push_back(c);
    }
  const auto perfect = confusion_matrix(actual, predicted);
  CHECK(perfect.accuracy() == 1.0);
  CHECK(perfect.total() == 60);
  CHECK(perfect.misclassified_as_other() == 0);
  for (int c = 0; c < kNumCategories; ++c) CHECK(perfect.off_diagonal(StateCategory(c)) == 0);

  predicted[0] = 5;   // cat -> other
  predicted[1] = 5;   // cat -> other
  predicted[25] = 1;  // zombie -> squeezed cat
  predicted[55] = 0;  // other -> cat
  const auto cm = confusion_matrix(actual, predicted);
  CHECK(cm.accuracy() == doctest::Approx(56.0 / 60.0));
  CHECK(cm.misclassified_as_other() == 2);
  CHECK(cm.worst_row() == StateCategory::Cat);
  CHECK(cm.row_total(StateCategory::Zombie) == 10);
  CHECK(cm.format().find("squeezed_cat") != std::string::npos);
  CHECK_THROWS(confusion_matrix({0, 1}, {0}));
}

TEST_CASE("evaluation agrees with prediction") {
  const auto data = synthesize_split(120, Split::Test, 20, 8);
  std::mt19937_64 rng(3);
  const auto model = MlpModel::initialized(MlpModel::default_dims(21), Activation::Relu, rng);
  const auto ev = evaluate(model, data);
  const auto pred = predict(model, data.inputs);
  long hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == data.labels[i];
  CHECK(ev.accuracy == doctest::Approx(double(hits) / 120.0));
  CHECK(ev.cm.total() == 120);
}
