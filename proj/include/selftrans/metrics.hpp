#pragma once

#include <string>
#include <vector>

#include "selftrans/inference.hpp"
#include "selftrans/language.hpp"

namespace selftrans {

struct AccuracyCell {
  std::string task;
  std::string language;
  std::string method;
  std::string model;
  long correct_count = 0;
  long total_count = 0;
  double accuracy = 0.0;  // exact ratio, rounding is a report concern
};

// Exact accuracy over a non-empty, homogeneous record set.
AccuracyCell accuracy(const std::vector<ResultRecord>& records);

// A single table value. Accuracy cells convert to this for aggregation, and
// replayed published values or translation-metric scores feed in directly.
struct MetricCell {
  std::string task;
  std::string language;
  std::string method;
  std::string model;
  double value = 0.0;
  std::string source;  // originating result file, for report traceability
};

MetricCell to_metric_cell(const AccuracyCell& cell);

enum class Grouping { by_task_avg, by_language_avg_excl_en, resource_class };

Grouping grouping_from_string(const std::string& s);

struct AggregateRow {
  std::string group;  // task name, language code, resource class, or "avg"
  double value = 0.0;
  int cell_count = 0;
};

// by_task_avg: per-task means (over whatever languages are present) plus an
// unweighted "avg" row over tasks.
// by_language_avg_excl_en: per-language means plus an "avg" row that skips
// English.
// resource_class: means per {high, low} over the XStoryCloze/XCOPA/XNLI
// subset; needs the language registry.
std::vector<AggregateRow> aggregate(const std::vector<MetricCell>& cells,
                                    Grouping grouping,
                                    const LanguageRegistry* languages = nullptr);

}  // namespace selftrans
