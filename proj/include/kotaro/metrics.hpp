#pragma once

#include <cstddef>
#include <span>

namespace kotaro {

/// Positive class is +1 (minority).
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;

  std::size_t positives() const { return tp + fn; }
  std::size_t negatives() const { return tn + fp; }
  std::size_t total() const { return tp + fn + tn + fp; }

  /// Roles of the two classes swapped.
  ConfusionCounts flipped() const { return {tn, fp, tp, fn}; }

  bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts confusion(std::span<const int> true_labels, std::span<const int> predicted_labels);

double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);
inline double sensitivity(const ConfusionCounts& c) { return recall(c); }
double specificity(const ConfusionCounts& c);
double accuracy(const ConfusionCounts& c);
double gmean(const ConfusionCounts& c);
/// Zero when tp == 0, otherwise the harmonic mean of precision and recall.
double f1(const ConfusionCounts& c);

}  // namespace kotaro
