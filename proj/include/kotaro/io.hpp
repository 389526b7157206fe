#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kotaro/core.hpp"
#include "kotaro/eval.hpp"
#include "kotaro/normalize.hpp"
#include "kotaro/synth.hpp"

namespace kotaro {

inline constexpr int kModelFormatVersion = 1;
inline constexpr int kSceneFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

struct ColumnSpec {
  std::string label_column = "label";
  /// Raw label text mapped to +1; the single other value present maps to -1.
  std::string positive_label_value = "1";
  /// Empty means every column except the label column, in file order.
  std::vector<std::string> feature_columns;
  Normalization normalize = Normalization::None;
};

struct LoadedDataset {
  Dataset dataset;
  NormalizationParams normalization;  // identity when normalize == None
};

/// Comma-separated, header row required, '.' decimal point. Errors name the
/// 1-based line and the column.
LoadedDataset load_csv(const std::filesystem::path& path, const ColumnSpec& spec);
LoadedDataset load_csv(std::istream& in, const ColumnSpec& spec, const std::string& source = "<stream>");

/// Numeric columns of a CSV with `skip_column` dropped when present (used for
/// prediction inputs that may or may not carry a label column).
Matrix load_feature_csv(const std::filesystem::path& path, const std::string& skip_column,
                        std::vector<std::string>* names = nullptr);

/// Writes feature columns (named x0.. when the dataset has no names) and a
/// trailing `label` column with values -1 / 1. Floats use shortest
/// round-trip text, so load_csv reads back identical values.
void save_csv(const Dataset& dataset, const std::filesystem::path& path);
void write_csv(const Dataset& dataset, std::ostream& out);

void save_model(const AdaptiveKernelModel& model, const std::filesystem::path& path);
void write_model(const AdaptiveKernelModel& model, std::ostream& out);
/// Throws FormatVersionMismatch for another format_version and ParseError for
/// anything malformed or truncated; never returns a partial model.
AdaptiveKernelModel load_model(const std::filesystem::path& path);
AdaptiveKernelModel read_model(std::istream& in);

void save_scene(const HypersphereScene& scene, const std::filesystem::path& path);
void write_scene(const HypersphereScene& scene, std::ostream& out);
HypersphereScene load_scene(const std::filesystem::path& path);
HypersphereScene read_scene(std::istream& in);

/// Long format: trial,classifier,ratio_or_fold,metric,value,std_error,count.
/// Per-trial rows leave std_error and count empty; aggregate rows use
/// trial=AGG with value = mean. The first line is a `#` version comment.
void save_report(const ExperimentReport& report, const std::filesystem::path& path);
void write_report(const ExperimentReport& report, std::ostream& out);

}  // namespace kotaro
