#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "qse/classifier/dataset.hpp"
#include "qse/classifier/mlp.hpp"

namespace qse {

/// Rows are actual categories, columns predicted.
struct ConfusionMatrix {
  Eigen::Matrix<long, kNumCategories, kNumCategories> counts =
      Eigen::Matrix<long, kNumCategories, kNumCategories>::Zero();

  long total() const { return counts.sum(); }
  double accuracy() const;
  long row_total(StateCategory actual) const;
  long off_diagonal(StateCategory actual) const;
  /// Row with the largest off-diagonal count.
  StateCategory worst_row() const;
  /// Samples of the five state families predicted as Other.
  long misclassified_as_other() const;

  std::string format() const;
};

struct Evaluation {
  double accuracy = 0.0;
  ConfusionMatrix cm;
};

/// Argmax category for every column of `inputs`.
std::vector<int> predict(const MlpModel& model, const Eigen::MatrixXd& inputs);

ConfusionMatrix confusion_matrix(const std::vector<int>& actual, const std::vector<int>& predicted);

Evaluation evaluate(const MlpModel& model, const LabeledDataset& data);

}  // namespace qse
