#include "kotaro/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "kotaro/error.hpp"
#include "kotaro/format.hpp"

namespace kotaro {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

std::string unquote(std::string_view field) {
  field = trim(field);
  if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
    field = field.substr(1, field.size() - 2);
  }
  return std::string(field);
}

std::vector<std::string> csv_fields(const std::string& line) {
  auto raw = split(line, ',');
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (auto& f : raw) out.push_back(unquote(f));
  return out;
}

bool skip_line(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

// Header plus numeric-or-text rows, with 1-based source line numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

CsvTable read_table(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto fields = csv_fields(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line_no) + ": expected " +
                                             std::to_string(table.header.size()) + " fields, found " +
                                             std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw Error(ErrorCode::ParseError, source + ": missing header row");
  return table;
}

std::size_t column_index(const CsvTable& table, const std::string& name, const std::string& source) {
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) {
    throw Error(ErrorCode::ParseError, source + ": column '" + name + "' not found in header");
  }
  return static_cast<std::size_t>(it - table.header.begin());
}

Matrix numeric_block(const CsvTable& table, const std::vector<std::size_t>& columns, const std::string& source) {
  Matrix out(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& text = table.rows[r][columns[c]];
      const auto value = parse_double(text);
      if (!value || !std::isfinite(*value)) {
        throw Error(ErrorCode::NonNumericFeature, source + ":" + std::to_string(table.line_numbers[r]) +
                                                      ": column '" + table.header[columns[c]] +
                                                      "' has non-numeric value '" + text + "'");
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *value;
    }
  }
  return out;
}

// ---- line-oriented reader for the key: value formats ----------------------

class KeyValueReader {
 public:
  KeyValueReader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

  std::string next_line() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!trim(line).empty()) return std::string(trim(line));
    }
    fail("unexpected end of file");
  }

  // "key: value" -> value
  std::string expect(const std::string& key) {
    const std::string line = next_line();
    const std::string prefix = key + ":";
    if (line.rfind(prefix, 0) != 0) fail("expected '" + key + ":', found '" + line + "'");
    return std::string(trim(std::string_view(line).substr(prefix.size())));
  }

  double expect_double(const std::string& key) { return to_double(expect(key), key); }

  long long expect_int(const std::string& key) {
    const auto v = to_double(expect(key), key);
    if (v != std::floor(v)) fail(key + " must be an integer");
    return static_cast<long long>(v);
  }

  std::vector<double> doubles(const std::string& text, std::size_t expected, const std::string& key) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string token;
    while (ss >> token) out.push_back(to_double(token, key));
    if (out.size() != expected) {
      fail(key + ": expected " + std::to_string(expected) + " values, found " + std::to_string(out.size()));
    }
    return out;
  }

  double to_double(const std::string& text, const std::string& key) {
    const auto v = parse_double(text);
    if (!v) fail(key + ": bad number '" + text + "'");
    return *v;
  }

  void check_version(int expected) {
    const std::string line = next_line();
    const std::string prefix = "format_version:";
    if (line.rfind(prefix, 0) != 0) fail("missing format_version header");
    const auto v = parse_double(std::string_view(line).substr(prefix.size()));
    if (!v) fail("bad format_version");
    if (*v != expected) {
      throw Error(ErrorCode::FormatVersionMismatch, what_ + ": format_version " + format_double(*v) +
                                                        ", this build reads " + std::to_string(expected));
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::ParseError, what_ + ":" + std::to_string(line_no_) + ": " + message);
  }

 private:
  std::istream& in_;
  std::string what_;
  std::size_t line_no_ = 0;
};

std::string join(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v(i));
  }
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

LoadedDataset load_csv(std::istream& in, const ColumnSpec& spec, const std::string& source) {
  const CsvTable table = read_table(in, source);
  const std::size_t label_col = column_index(table, spec.label_column, source);

  std::vector<std::size_t> feature_cols;
  if (spec.feature_columns.empty()) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c != label_col) feature_cols.push_back(c);
    }
  } else {
    for (const auto& name : spec.feature_columns) feature_cols.push_back(column_index(table, name, source));
  }
  if (feature_cols.empty()) throw Error(ErrorCode::ParseError, source + ": no feature columns");

  std::set<std::string> negatives;
  bool positive_seen = false;
  Labels labels;
  labels.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const auto& raw = row[label_col];
    if (raw == spec.positive_label_value) {
      positive_seen = true;
      labels.push_back(kPositive);
    } else {
      negatives.insert(raw);
      labels.push_back(kNegative);
    }
  }
  if (negatives.size() > 1) {
    std::string values;
    for (const auto& v : negatives) values += (values.empty() ? "" : ", ") + v;
    throw Error(ErrorCode::MultipleNegativeValues, source + ": label column '" + spec.label_column +
                                                       "' has more than two distinct values (non-positive: " +
                                                       values + ")");
  }
  if (!positive_seen) {
    throw Error(ErrorCode::InvalidArgument, source + ": positive label value '" + spec.positive_label_value +
                                                "' does not occur in column '" + spec.label_column + "'");
  }

  LoadedDataset out;
  out.dataset.features = numeric_block(table, feature_cols, source);
  out.dataset.labels = std::move(labels);
  for (auto c : feature_cols) out.dataset.feature_names.push_back(table.header[c]);
  out.dataset.validate();

  if (spec.normalize == Normalization::ZScore) {
    out.normalization = NormalizationParams::fit(out.dataset.features);
    out.normalization.apply(out.dataset.features);
  } else {
    out.normalization = NormalizationParams::identity(out.dataset.dim());
  }
  return out;
}

LoadedDataset load_csv(const std::filesystem::path& path, const ColumnSpec& spec) {
  auto in = open_in(path);
  return load_csv(in, spec, path.string());
}

Matrix load_feature_csv(const std::filesystem::path& path, const std::string& skip_column,
                        std::vector<std::string>* names) {
  auto in = open_in(path);
  const CsvTable table = read_table(in, path.string());
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c] != skip_column) cols.push_back(c);
  }
  if (names) {
    names->clear();
    for (auto c : cols) names->push_back(table.header[c]);
  }
  return numeric_block(table, cols, path.string());
}

void write_csv(const Dataset& dataset, std::ostream& out) {
  const auto dim = dataset.dim();
  for (std::size_t c = 0; c < dim; ++c) {
    out << (dataset.feature_names.empty() ? "x" + std::to_string(c) : dataset.feature_names[c]) << ',';
  }
  out << "label\n";
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      out << format_double(dataset.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) << ',';
    }
    out << dataset.labels[r] << '\n';
  }
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_csv(dataset, out);
  finish(out, path);
}

void write_model(const AdaptiveKernelModel& model, std::ostream& out) {
  out << "format_version: " << kModelFormatVersion << '\n';
  out << "model: kotaro\n";
  out << "dim: " << model.dim() << '\n';
  out << "n_samples: " << model.size() << '\n';
  out << "n_neighbors: " << model.scales.n_neighbors << '\n';
  out << "solve_strategy: " << to_string(model.solve_strategy) << '\n';
  out << "floor_relative_epsilon: " << format_double(model.floor.relative_epsilon) << '\n';
  out << "fit_residual: " << format_double(model.fit_residual) << '\n';
  out << "condition_estimate: "
      << (model.condition_estimate ? format_double(*model.condition_estimate) : std::string("unavailable")) << '\n';
  out << "features:\n";
  for (Eigen::Index r = 0; r < model.train_features.rows(); ++r) {
    out << join(model.train_features.row(r).transpose()) << '\n';
  }
  out << "labels:";
  for (int y : model.train_labels) out << ' ' << y;
  out << '\n';
  out << "d: " << join(model.scales.d) << '\n';
  out << "gamma: " << join(model.scales.gamma) << '\n';
  out << "floor_applied:";
  for (bool b : model.scales.floor_applied) out << ' ' << (b ? 1 : 0);
  out << '\n';
  out << "weights: " << join(model.weights) << '\n';
  out << "end\n";
}

void save_model(const AdaptiveKernelModel& model, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_model(model, out);
  finish(out, path);
}

AdaptiveKernelModel read_model(std::istream& in) {
  KeyValueReader reader(in, "model");
  reader.check_version(kModelFormatVersion);
  if (reader.expect("model") != "kotaro") reader.fail("unsupported model kind");
  const auto dim = reader.expect_int("dim");
  const auto n = reader.expect_int("n_samples");
  if (dim < 1 || n < 2) reader.fail("dim must be >= 1 and n_samples >= 2");
  const auto udim = static_cast<std::size_t>(dim);
  const auto un = static_cast<std::size_t>(n);

  AdaptiveKernelModel model;
  model.scales.n_neighbors = static_cast<int>(reader.expect_int("n_neighbors"));
  try {
    model.solve_strategy = parse_solve_strategy(reader.expect("solve_strategy"));
  } catch (const Error& e) {
    reader.fail(e.what());
  }
  model.floor.relative_epsilon = reader.expect_double("floor_relative_epsilon");
  model.fit_residual = reader.expect_double("fit_residual");
  const std::string cond = reader.expect("condition_estimate");
  if (cond != "unavailable") model.condition_estimate = reader.to_double(cond, "condition_estimate");

  if (!reader.expect("features").empty()) reader.fail("features header takes no inline values");
  model.train_features.resize(n, dim);
  for (std::size_t r = 0; r < un; ++r) {
    const auto row = reader.doubles(reader.next_line(), udim, "features row " + std::to_string(r));
    for (std::size_t c = 0; c < udim; ++c) {
      model.train_features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
    }
  }
  for (double y : reader.doubles(reader.expect("labels"), un, "labels")) {
    if (y != kPositive && y != kNegative) reader.fail("labels must be -1 or 1");
    model.train_labels.push_back(static_cast<int>(y));
  }
  model.scales.d = to_vector(reader.doubles(reader.expect("d"), un, "d"));
  model.scales.gamma = to_vector(reader.doubles(reader.expect("gamma"), un, "gamma"));
  for (double b : reader.doubles(reader.expect("floor_applied"), un, "floor_applied")) {
    if (b != 0.0 && b != 1.0) reader.fail("floor_applied entries must be 0 or 1");
    model.scales.floor_applied.push_back(b == 1.0);
  }
  model.weights = to_vector(reader.doubles(reader.expect("weights"), un, "weights"));
  if (reader.next_line() != "end") reader.fail("missing end marker");

  if (!model.train_features.allFinite() || !model.weights.allFinite() || !model.scales.gamma.allFinite() ||
      (model.scales.gamma.array() <= 0.0).any()) {
    reader.fail("model contains non-finite values or non-positive rates");
  }
  return model;
}

AdaptiveKernelModel load_model(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_model(in);
}

void write_scene(const HypersphereScene& scene, std::ostream& out) {
  out << "format_version: " << kSceneFormatVersion << '\n';
  out << "dim: " << scene.dim << '\n';
  out << "box_side: " << format_double(scene.box_side) << '\n';
  out << "seed: " << scene.seed << '\n';
  for (const auto& s : scene.spheres) {
    out << "sphere: " << join(s.center) << ' ' << format_double(s.radius) << '\n';
  }
}

void save_scene(const HypersphereScene& scene, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_scene(scene, out);
  finish(out, path);
}

HypersphereScene read_scene(std::istream& in) {
  KeyValueReader reader(in, "scene");
  reader.check_version(kSceneFormatVersion);
  HypersphereScene scene;
  scene.dim = static_cast<int>(reader.expect_int("dim"));
  if (scene.dim < 1) reader.fail("dim must be positive");
  scene.box_side = reader.expect_double("box_side");
  const std::string seed_text = reader.expect("seed");
  try {
    std::size_t used = 0;
    scene.seed = std::stoull(seed_text, &used);
    if (used != seed_text.size()) reader.fail("bad seed");
  } catch (const std::logic_error&) {
    reader.fail("bad seed '" + seed_text + "'");
  }
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::string prefix = "sphere:";
    if (line.rfind(prefix, 0) != 0) reader.fail("expected 'sphere:' line");
    const auto values = reader.doubles(line.substr(prefix.size()), static_cast<std::size_t>(scene.dim) + 1, "sphere");
    Sphere s;
    s.center = to_vector(std::vector<double>(values.begin(), values.end() - 1));
    s.radius = values.back();
    scene.spheres.push_back(std::move(s));
  }
  try {
    scene.validate();
  } catch (const Error& e) {
    reader.fail(e.what());
  }
  return scene;
}

HypersphereScene load_scene(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_scene(in);
}

void write_report(const ExperimentReport& report, std::ostream& out) {
  out << "# kotaro results format_version: " << kReportFormatVersion << '\n';
  out << "trial,classifier,ratio_or_fold,metric,value,std_error,count\n";
  for (const auto& t : report.trials) {
    for (const auto& [metric, value] : t.metrics) {
      out << t.trial << ',' << t.classifier << ',' << t.ratio_or_fold << ',' << metric << ','
          << format_double(value) << ",,\n";
    }
  }
  for (const auto& a : report.aggregates) {
    out << "AGG," << a.classifier << ',' << a.group << ',' << a.metric << ',' << format_double(a.summary.mean)
        << ',' << format_double(a.summary.standard_error) << ',' << a.summary.count << '\n';
  }
}

void save_report(const ExperimentReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_report(report, out);
  finish(out, path);
}

}  // namespace kotaro
