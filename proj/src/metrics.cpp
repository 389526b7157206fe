#include "kotaro/metrics.hpp"

#include <cmath>
#include <string>

#include "kotaro/dataset.hpp"
#include "kotaro/error.hpp"

namespace kotaro {

namespace {

double ratio(std::size_t num, std::size_t den, const char* name) {
  if (den == 0) {
    throw Error(ErrorCode::UndefinedMetric, std::string(name) + " has a zero denominator");
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confusion(std::span<const int> true_labels, std::span<const int> predicted_labels) {
  if (true_labels.size() != predicted_labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "label vectors differ in length");
  }
  ConfusionCounts c;
  for (std::size_t q = 0; q < true_labels.size(); ++q) {
    const int t = true_labels[q];
    const int p = predicted_labels[q];
    if ((t != kPositive && t != kNegative) || (p != kPositive && p != kNegative)) {
      throw Error(ErrorCode::InvalidLabel, "labels must be -1 or +1 (index " + std::to_string(q) + ")");
    }
    if (t == kPositive) {
      (p == kPositive ? c.tp : c.fn)++;
    } else {
      (p == kNegative ? c.tn : c.fp)++;
    }
  }
  return c;
}

double precision(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fp, "precision"); }
double recall(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn, "recall"); }
double specificity(const ConfusionCounts& c) { return ratio(c.tn, c.tn + c.fp, "specificity"); }
double accuracy(const ConfusionCounts& c) { return ratio(c.tp + c.tn, c.total(), "accuracy"); }

double gmean(const ConfusionCounts& c) {
  if (c.positives() == 0 || c.negatives() == 0) {
    throw Error(ErrorCode::ClassAbsent, "G-mean needs both classes in the ground truth");
  }
  return std::sqrt(static_cast<double>(c.tp * c.tn) / static_cast<double>(c.positives() * c.negatives()));
}

double f1(const ConfusionCounts& c) {
  if (c.tp == 0) return 0.0;
  // 2PR/(P+R) written over counts: exact for integers.
  return static_cast<double>(2 * c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
}

}  // namespace kotaro
