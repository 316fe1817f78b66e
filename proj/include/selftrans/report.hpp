#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "selftrans/metrics.hpp"

namespace selftrans {

struct ReportSpec {
  std::vector<std::string> input_globs;
  bool markdown = true;
  bool csv = false;
  int rounding = 1;
};

// One method row of the method-comparison table. Values are kept unrounded;
// rounding happens at render time.
struct ComparisonRow {
  std::string model;
  std::string size;
  Method method = Method::direct;
  std::map<std::string, double> per_task;
  double avg = 0.0;
  // task -> (method value - direct value), computed unrounded; "avg" included.
  std::map<std::string, double> delta_vs_direct;
  bool has_delta = false;
  std::set<std::string> bold;  // task names and "avg" that are column maxima
  std::vector<std::string> sources;
};

std::vector<ComparisonRow> build_comparison(const std::vector<MetricCell>& cells);
std::string render_comparison_markdown(const std::vector<ComparisonRow>& rows,
                                       int rounding = 1);
std::string render_comparison_csv(const std::vector<ComparisonRow>& rows,
                                  int rounding = 1);

struct LanguageTableRow {
  std::string model;
  std::string size;
  Method method = Method::direct;
  std::map<std::string, double> values;  // language -> value
  double avg = 0.0;                      // excluding English
  std::vector<std::string> sources;
};

struct LanguageTable {
  std::string task;
  std::vector<std::string> columns;  // language codes in canonical order
  std::vector<LanguageTableRow> rows;
};

LanguageTable build_language_table(const std::vector<MetricCell>& cells,
                                   const std::string& task);
std::string render_language_table_markdown(const LanguageTable& table, int rounding = 1);
std::string render_language_table_csv(const LanguageTable& table, int rounding = 1);

// (size, method, resource group) -> value series for external plotting.
struct ScalePoint {
  std::string model;
  std::string size_label;
  double size_billions = 0.0;
  Method method = Method::direct;
  std::string group;  // "high" or "low"
  double value = 0.0;
};

struct ScaleCurve {
  std::vector<ScalePoint> points;
  std::vector<std::string> notes;  // e.g. omitted groups
};

ScaleCurve build_scale_curve(const std::vector<MetricCell>& cells,
                             const LanguageRegistry& languages);
std::string render_scale_curve_csv(const ScaleCurve& curve);

// "XGLM-7.5B" -> {"XGLM", "7.5B"}; no separator means an empty size.
std::pair<std::string, std::string> split_model_label(const std::string& model);
// "7.5B" -> 7.5, "564M" -> 0.564; throws on labels it cannot parse.
double parse_size_billions(const std::string& size_label);

}  // namespace selftrans
