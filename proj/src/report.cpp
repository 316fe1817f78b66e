#include "selftrans/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "selftrans/util.hpp"

namespace selftrans {

namespace {

struct RowKey {
  std::string model;
  std::string size;
  Method method;
};

int method_rank(Method m) {
  switch (m) {
    case Method::direct: return 0;
    case Method::self_translate: return 1;
    case Method::external_mt: return 2;
  }
  return 3;
}

std::string signed_rounded(double value, int decimals) {
  std::string s = format_rounded(value, decimals);
  if (!s.empty() && s[0] != '-') s = "+" + s;
  return s;
}

// Per-task value for a comparison cell: the language average, English
// excluded unless it is the only language present.
double task_value(const std::vector<double>& non_en, const std::vector<double>& en_only) {
  const std::vector<double>& vals = non_en.empty() ? en_only : non_en;
  double sum = 0.0;
  for (double v : vals) sum += v;
  return sum / static_cast<double>(vals.size());
}

}  // namespace

std::pair<std::string, std::string> split_model_label(const std::string& model) {
  auto pos = model.rfind('-');
  if (pos == std::string::npos || pos + 1 == model.size()) return {model, ""};
  return {model.substr(0, pos), model.substr(pos + 1)};
}

double parse_size_billions(const std::string& size_label) {
  if (size_label.empty())
    throw DataError("unknown model size label: \"" + size_label + "\"");
  char suffix = size_label.back();
  double scale;
  if (suffix == 'B' || suffix == 'b')
    scale = 1.0;
  else if (suffix == 'M' || suffix == 'm')
    scale = 1e-3;
  else
    throw DataError("unknown model size label: \"" + size_label + "\"");
  std::string digits = size_label.substr(0, size_label.size() - 1);
  try {
    std::size_t used = 0;
    double value = std::stod(digits, &used);
    if (used != digits.size() || value <= 0) throw std::invalid_argument("");
    return value * scale;
  } catch (const std::exception&) {
    throw DataError("unknown model size label: \"" + size_label + "\"");
  }
}

std::vector<ComparisonRow> build_comparison(const std::vector<MetricCell>& cells) {
  if (cells.empty()) throw DataError("build_comparison: no cells");

  // (model, method) -> task -> language values.
  struct Bucket {
    std::map<std::string, std::vector<double>> non_en;
    std::map<std::string, std::vector<double>> en_only;
    std::set<std::string> sources;
  };
  std::vector<std::pair<std::string, Method>> order;
  std::map<std::string, std::map<Method, Bucket>> buckets;
  std::set<std::string> tasks;
  for (const auto& c : cells) {
    Method m = method_from_string(c.method);
    if (!buckets.count(c.model) || !buckets[c.model].count(m))
      order.emplace_back(c.model, m);
    auto& b = buckets[c.model][m];
    if (c.language == "en")
      b.en_only[c.task].push_back(c.value);
    else
      b.non_en[c.task].push_back(c.value);
    if (!c.source.empty()) b.sources.insert(c.source);
    tasks.insert(c.task);
  }

  std::set<Method> methods_seen;
  for (const auto& [model, per_method] : buckets)
    for (const auto& [m, b] : per_method) methods_seen.insert(m);
  if (methods_seen.size() < 2)
    throw DataError("build_comparison needs at least two methods, found only " +
                    to_string(*methods_seen.begin()));

  // Missing direct counterparts are listed all at once.
  std::string missing;
  for (const auto& [model, per_method] : buckets) {
    if (per_method.count(Method::direct)) continue;
    for (const auto& [m, b] : per_method) {
      for (const auto& [task, vals] : b.non_en) missing += " (" + model + ", " + task + ")";
      for (const auto& [task, vals] : b.en_only) missing += " (" + model + ", " + task + ")";
    }
  }
  if (!missing.empty())
    throw DataError("build_comparison: no direct counterpart for cells:" + missing);

  std::vector<ComparisonRow> rows;
  for (const auto& [model, method] : order) {
    const Bucket& b = buckets[model][method];
    ComparisonRow row;
    auto [family, size] = split_model_label(model);
    row.model = family;
    row.size = size;
    row.method = method;
    row.sources.assign(b.sources.begin(), b.sources.end());
    double sum = 0.0;
    int n = 0;
    for (const auto& task : tasks) {
      auto ne = b.non_en.find(task);
      auto eo = b.en_only.find(task);
      if (ne == b.non_en.end() && eo == b.en_only.end()) continue;
      double v = task_value(ne != b.non_en.end() ? ne->second : std::vector<double>{},
                            eo != b.en_only.end() ? eo->second : std::vector<double>{});
      row.per_task[task] = v;
      sum += v;
      ++n;
    }
    if (n == 0) continue;
    row.avg = sum / n;
    rows.push_back(std::move(row));
  }

  // Deltas against the direct row of the same (model, size).
  for (auto& row : rows) {
    if (row.method == Method::direct) continue;
    const ComparisonRow* direct = nullptr;
    for (const auto& other : rows)
      if (other.method == Method::direct && other.model == row.model &&
          other.size == row.size)
        direct = &other;
    if (!direct) continue;  // caught above for fully missing models
    std::string missing_tasks;
    for (const auto& [task, v] : row.per_task) {
      auto it = direct->per_task.find(task);
      if (it == direct->per_task.end()) {
        missing_tasks += " (" + row.model + "-" + row.size + ", " + task + ")";
        continue;
      }
      row.delta_vs_direct[task] = v - it->second;
    }
    if (!missing_tasks.empty())
      throw DataError("build_comparison: direct method missing for cells:" + missing_tasks);
    row.delta_vs_direct["avg"] = row.avg - direct->avg;
    row.has_delta = true;
  }

  // Bold the best value per (model, size) and column.
  std::map<std::pair<std::string, std::string>, std::vector<ComparisonRow*>> by_model;
  for (auto& row : rows) by_model[{row.model, row.size}].push_back(&row);
  for (auto& [key, group] : by_model) {
    std::set<std::string> columns;
    for (auto* row : group)
      for (const auto& [task, v] : row->per_task) columns.insert(task);
    columns.insert("avg");
    for (const auto& col : columns) {
      double best = -1e300;
      for (auto* row : group) {
        double v = col == "avg" ? row->avg
                                : (row->per_task.count(col) ? row->per_task.at(col) : -1e300);
        best = std::max(best, v);
      }
      for (auto* row : group) {
        double v = col == "avg" ? row->avg
                                : (row->per_task.count(col) ? row->per_task.at(col) : -1e300);
        if (v == best) row->bold.insert(col);
      }
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.model != b.model) return false;  // keep first-seen model order
    double sa = a.size.empty() ? 0.0 : parse_size_billions(a.size);
    double sb = b.size.empty() ? 0.0 : parse_size_billions(b.size);
    if (sa != sb) return sa < sb;
    return method_rank(a.method) < method_rank(b.method);
  });
  return rows;
}

namespace {

std::vector<std::string> comparison_columns(const std::vector<ComparisonRow>& rows) {
  // Canonical task order first, then anything else, then Avg.
  static const std::vector<std::string> canonical = {"xstorycloze", "xcopa", "xnli",
                                                     "pawsx", "mgsm"};
  std::set<std::string> present;
  for (const auto& row : rows)
    for (const auto& [task, v] : row.per_task) present.insert(task);
  std::vector<std::string> cols;
  for (const auto& t : canonical)
    if (present.count(t)) {
      cols.push_back(t);
      present.erase(t);
    }
  for (const auto& t : present) cols.push_back(t);
  return cols;
}

std::string comparison_cell(const ComparisonRow& row, const std::string& col,
                            int rounding, bool markdown) {
  double v = col == "avg" ? row.avg : row.per_task.at(col);
  std::string text = format_rounded(v, rounding);
  if (row.has_delta && row.delta_vs_direct.count(col))
    text += " (" + signed_rounded(row.delta_vs_direct.at(col), rounding) + ")";
  if (markdown && row.bold.count(col)) text = "**" + text + "**";
  return text;
}

}  // namespace

std::string render_comparison_markdown(const std::vector<ComparisonRow>& rows,
                                       int rounding) {
  auto cols = comparison_columns(rows);
  std::ostringstream out;
  out << "| Model | Size | Method |";
  for (const auto& c : cols) out << " " << c << " |";
  out << " Avg |\n";
  out << "|---|---|---|";
  for (std::size_t i = 0; i < cols.size() + 1; ++i) out << "---|";
  out << "\n";
  for (const auto& row : rows) {
    out << "| " << row.model << " | " << row.size << " | "
        << method_file_token(row.method) << " |";
    for (const auto& c : cols) {
      out << " " << (row.per_task.count(c) ? comparison_cell(row, c, rounding, true) : "")
          << " |";
    }
    out << " " << comparison_cell(row, "avg", rounding, true) << " |\n";
  }
  return out.str();
}

std::string render_comparison_csv(const std::vector<ComparisonRow>& rows, int rounding) {
  std::ostringstream out;
  out << "model,size,method,column,value,delta,bold,sources\n";
  auto cols = comparison_columns(rows);
  cols.push_back("avg");
  for (const auto& row : rows) {
    for (const auto& c : cols) {
      if (c != "avg" && !row.per_task.count(c)) continue;
      double v = c == "avg" ? row.avg : row.per_task.at(c);
      out << row.model << "," << row.size << "," << method_file_token(row.method) << ","
          << c << "," << format_rounded(v, rounding) << ",";
      if (row.has_delta && row.delta_vs_direct.count(c))
        out << signed_rounded(row.delta_vs_direct.at(c), rounding);
      out << "," << (row.bold.count(c) ? "1" : "0") << ",";
      for (std::size_t i = 0; i < row.sources.size(); ++i) {
        if (i) out << ";";
        out << row.sources[i];
      }
      out << "\n";
    }
  }
  return out.str();
}

LanguageTable build_language_table(const std::vector<MetricCell>& cells,
                                   const std::string& task) {
  LanguageTable table;
  table.task = task;
  const TaskSchema& schema = task_schema(task);

  std::vector<std::pair<std::string, Method>> order;
  struct Bucket {
    std::map<std::string, double> values;
    std::set<std::string> sources;
  };
  std::map<std::string, std::map<Method, Bucket>> buckets;
  std::set<std::string> langs_present;
  for (const auto& c : cells) {
    if (c.task != task) continue;
    Method m = method_from_string(c.method);
    if (!buckets.count(c.model) || !buckets[c.model].count(m))
      order.emplace_back(c.model, m);
    buckets[c.model][m].values[c.language] = c.value;
    if (!c.source.empty()) buckets[c.model][m].sources.insert(c.source);
    langs_present.insert(c.language);
  }
  if (order.empty()) throw DataError("build_language_table: no cells for task " + task);

  for (const auto& code : schema.language_order)
    if (langs_present.count(code)) {
      table.columns.push_back(code);
      langs_present.erase(code);
    }
  for (const auto& code : langs_present) table.columns.push_back(code);

  for (const auto& [model, method] : order) {
    const Bucket& b = buckets[model][method];
    LanguageTableRow row;
    auto [family, size] = split_model_label(model);
    row.model = family;
    row.size = size;
    row.method = method;
    row.values = b.values;
    row.sources.assign(b.sources.begin(), b.sources.end());
    double sum = 0.0;
    int n = 0;
    for (const auto& code : table.columns) {
      auto it = b.values.find(code);
      if (it == b.values.end()) {
        // Translation methods have no English row by construction.
        if (code == "en" && method != Method::direct) continue;
        throw DataError("build_language_table: missing language " + code + " for " +
                        model + " " + to_string(method));
      }
      if (code == "en") continue;
      sum += it->second;
      ++n;
    }
    if (n == 0) throw DataError("build_language_table: only English cells for " + model);
    row.avg = sum / n;
    table.rows.push_back(std::move(row));
  }

  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const LanguageTableRow& a, const LanguageTableRow& b) {
                     if (a.model != b.model) return false;
                     double sa = a.size.empty() ? 0.0 : parse_size_billions(a.size);
                     double sb = b.size.empty() ? 0.0 : parse_size_billions(b.size);
                     if (sa != sb) return sa < sb;
                     return method_rank(a.method) < method_rank(b.method);
                   });
  return table;
}

std::string render_language_table_markdown(const LanguageTable& table, int rounding) {
  std::ostringstream out;
  out << "| Model | Size | Method |";
  for (const auto& c : table.columns) out << " " << c << " |";
  out << " avg |\n";
  out << "|---|---|---|";
  for (std::size_t i = 0; i < table.columns.size() + 1; ++i) out << "---|";
  out << "\n";
  for (const auto& row : table.rows) {
    out << "| " << row.model << " | " << row.size << " | "
        << method_file_token(row.method) << " |";
    for (const auto& c : table.columns) {
      auto it = row.values.find(c);
      out << " " << (it == row.values.end() ? "-" : format_rounded(it->second, rounding))
          << " |";
    }
    out << " " << format_rounded(row.avg, rounding) << " |\n";
  }
  return out.str();
}

std::string render_language_table_csv(const LanguageTable& table, int rounding) {
  std::ostringstream out;
  out << "model,size,method,language,value,sources\n";
  for (const auto& row : table.rows) {
    for (const auto& c : table.columns) {
      auto it = row.values.find(c);
      if (it == row.values.end()) continue;
      out << row.model << "," << row.size << "," << method_file_token(row.method) << ","
          << c << "," << format_rounded(it->second, rounding) << ",";
      for (std::size_t i = 0; i < row.sources.size(); ++i) {
        if (i) out << ";";
        out << row.sources[i];
      }
      out << "\n";
    }
    out << row.model << "," << row.size << "," << method_file_token(row.method)
        << ",avg," << format_rounded(row.avg, rounding) << ",\n";
  }
  return out.str();
}

ScaleCurve build_scale_curve(const std::vector<MetricCell>& cells,
                             const LanguageRegistry& languages) {
  ScaleCurve curve;
  std::vector<std::string> model_order;
  std::map<std::string, std::map<Method, std::vector<MetricCell>>> buckets;
  for (const auto& c : cells) {
    if (!buckets.count(c.model)) model_order.push_back(c.model);
    buckets[c.model][method_from_string(c.method)].push_back(c);
  }
  for (const auto& model : model_order) {
    auto [family, size] = split_model_label(model);
    double size_b = parse_size_billions(size.empty() ? model : size);
    for (const auto& [method, subset] : buckets[model]) {
      auto rows = aggregate(subset, Grouping::resource_class, &languages);
      std::set<std::string> present;
      for (const auto& r : rows) {
        present.insert(r.group);
        curve.points.push_back({family, size, size_b, method, r.group, r.value});
      }
      for (const char* cls : {"high", "low"}) {
        if (!present.count(cls))
          curve.notes.push_back("no " + std::string(cls) + "-resource languages for " +
                                model + " " + to_string(method) + "; series omitted");
      }
    }
  }
  return curve;
}

std::string render_scale_curve_csv(const ScaleCurve& curve) {
  std::ostringstream out;
  out << "model,size,size_billions,method,group,value\n";
  char buf[64];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.12g", p.value);
    out << p.model << "," << p.size_label << "," << p.size_billions << ","
        << method_file_token(p.method) << "," << p.group << "," << buf << "\n";
  }
  return out.str();
}

}  // namespace selftrans
