#include "qse/classifier/confusion.hpp"

#include <iomanip>
#include <sstream>

namespace qse {

double ConfusionMatrix::accuracy() const {
  const long t = total();
  return t == 0 ? 0.0 : double(counts.trace()) / double(t);
}

long ConfusionMatrix::row_total(StateCategory actual) const {
  return counts.row(static_cast<int>(actual)).sum();
}

long ConfusionMatrix::off_diagonal(StateCategory actual) const {
  const int r = static_cast<int>(actual);
  return counts.row(r).sum() - counts(r, r);
}

StateCategory ConfusionMatrix::worst_row() const {
  int worst = 0;
  for (int r = 1; r < kNumCategories; ++r) {
    if (off_diagonal(static_cast<StateCategory>(r)) > off_diagonal(static_cast<StateCategory>(worst))) worst = r;
  }
  return static_cast<StateCategory>(worst);
}

long ConfusionMatrix::misclassified_as_other() const {
  const int other = static_cast<int>(StateCategory::Other);
  return counts.col(other).sum() - counts(other, other);
}

std::string ConfusionMatrix::format() const {
  std::ostringstream os;
  os << std::setw(14) << "actual\\pred";
  for (int c = 0; c < kNumCategories; ++c) os << std::setw(14) << to_string(static_cast<StateCategory>(c));
  os << "\n";
  for (int r = 0; r < kNumCategories; ++r) {
    os << std::setw(14) << to_string(static_cast<StateCategory>(r));
    for (int c = 0; c < kNumCategories; ++c) os << std::setw(14) << counts(r, c);
    os << "\n";
  }
  return os.str();
}

std::vector<int> predict(const MlpModel& model, const Eigen::MatrixXd& inputs) {
  const Eigen::MatrixXd z = model.logits(inputs);
  std::vector<int> out(static_cast<std::size_t>(z.cols()));
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    Eigen::Index best = 0;
    z.col(j).maxCoeff(&best);
    out[static_cast<std::size_t>(j)] = static_cast<int>(best);
  }
  return out;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& actual, const std::vector<int>& predicted) {
  if (actual.size() != predicted.size()) throw ShapeError("label vectors differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] < 0 || actual[i] >= kNumCategories || predicted[i] < 0 || predicted[i] >= kNumCategories)
      throw DomainError("category index out of range");
    ++cm.counts(actual[i], predicted[i]);
  }
  return cm;
}

Evaluation evaluate(const MlpModel& model, const LabeledDataset& data) {
  if (data.size() == 0) throw ShapeError("test split is empty");
  Evaluation e;
  e.cm = confusion_matrix(data.labels, predict(model, data.inputs));
  e.accuracy = e.cm.accuracy();
  return e;
}

}  // namespace qse
