#include "selftrans/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "selftrans/util.hpp"

namespace selftrans {

AccuracyCell accuracy(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw DataError("accuracy over an empty record set");
  AccuracyCell cell;
  cell.task = records.front().task;
  cell.language = records.front().language;
  cell.method = to_string(records.front().method);
  cell.model = records.front().model;
  for (const auto& r : records) {
    if (r.task != cell.task || r.language != cell.language ||
        to_string(r.method) != cell.method)
      throw DataError("accuracy needs records homogeneous in (task, language, method)");
    ++cell.total_count;
    if (r.correct) ++cell.correct_count;
  }
  cell.accuracy = static_cast<double>(cell.correct_count) /
                  static_cast<double>(cell.total_count);
  return cell;
}

MetricCell to_metric_cell(const AccuracyCell& cell) {
  return {cell.task, cell.language, cell.method, cell.model, cell.accuracy, ""};
}

Grouping grouping_from_string(const std::string& s) {
  if (s == "by_task_avg" || s == "task") return Grouping::by_task_avg;
  if (s == "by_language_avg_excl_en" || s == "language")
    return Grouping::by_language_avg_excl_en;
  if (s == "resource_class" || s == "resource") return Grouping::resource_class;
  throw ConfigError("unknown grouping \"" + s + "\"");
}

namespace {

double mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// Mean per key, keys in first-seen order.
std::vector<AggregateRow> grouped_means(
    const std::vector<MetricCell>& cells,
    const std::function<std::string(const MetricCell&)>& key_of) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> buckets;
  for (const auto& c : cells) {
    std::string key = key_of(c);
    if (!buckets.count(key)) order.push_back(key);
    buckets[key].push_back(c.value);
  }
  std::vector<AggregateRow> rows;
  for (const auto& key : order)
    rows.push_back({key, mean(buckets[key]), static_cast<int>(buckets[key].size())});
  return rows;
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<MetricCell>& cells,
                                    Grouping grouping,
                                    const LanguageRegistry* languages) {
  if (cells.empty()) throw DataError("aggregate over an empty cell set");

  if (grouping == Grouping::by_task_avg) {
    auto rows = grouped_means(cells, [](const MetricCell& c) { return c.task; });
    std::vector<double> task_means;
    for (const auto& r : rows) task_means.push_back(r.value);
    rows.push_back({"avg", mean(task_means), static_cast<int>(task_means.size())});
    return rows;
  }

  if (grouping == Grouping::by_language_avg_excl_en) {
    auto rows = grouped_means(cells, [](const MetricCell& c) { return c.language; });
    std::vector<double> non_en;
    for (const auto& r : rows)
      if (r.group != "en") non_en.push_back(r.value);
    if (non_en.empty())
      throw DataError("aggregate: no non-English languages in group");
    rows.push_back({"avg", mean(non_en), static_cast<int>(non_en.size())});
    return rows;
  }

  // resource_class over the subset with the most language variety.
  if (!languages)
    throw ConfigError("resource_class grouping needs a language registry");
  static const std::set<std::string> subset = {"xstorycloze", "xcopa", "xnli"};
  // Per-language mean over the subset first, then mean per class.
  std::vector<std::string> lang_order;
  std::map<std::string, std::vector<double>> per_lang;
  for (const auto& c : cells) {
    if (!subset.count(c.task)) continue;
    if (!per_lang.count(c.language)) lang_order.push_back(c.language);
    per_lang[c.language].push_back(c.value);
  }
  std::map<std::string, std::vector<double>> by_class;
  for (const auto& lang : lang_order) {
    std::string cls = to_string(languages->resource_class_of(lang));
    by_class[cls].push_back(mean(per_lang[lang]));
  }
  std::vector<AggregateRow> rows;
  for (const auto& cls : {std::string("high"), std::string("low")}) {
    auto it = by_class.find(cls);
    if (it == by_class.end()) continue;
    rows.push_back({cls, mean(it->second), static_cast<int>(it->second.size())});
  }
  if (rows.empty())
    throw DataError("aggregate: no cells from the resource-class task subset");
  return rows;
}

}  // namespace selftrans
