#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "synchrolab/error.hpp"
#include "synchrolab/experiments.hpp"

namespace synchrolab {

QuantityStats summarize_values(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("cannot summarize an empty sample");
  // Sorting first makes every statistic independent of input order,
  // including the floating-point sums.
  std::sort(values.begin(), values.end());
  QuantityStats s;
  s.count = values.size();
  s.min = values.front();
  s.max = values.back();
  const std::size_t mid = s.count / 2;
  s.median = s.count % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(sq / static_cast<double>(s.count - 1));
    s.std_error = sd / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

SummaryStats summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw InvalidInput("cannot summarize an empty record list");
  std::map<std::size_t, std::map<std::string, std::vector<double>>> grouped;
  for (const auto& r : records) {
    for (const auto& [name, value] : r.values) grouped[r.n][name].push_back(value);
  }
  SummaryStats out;
  for (auto& [n, quantities] : grouped) {
    for (auto& [name, values] : quantities) {
      out.stats[n][name] = summarize_values(std::move(values));
    }
  }
  return out;
}

const QuantityStats& SummaryStats::at(std::size_t n, const std::string& quantity) const {
  auto it = stats.find(n);
  if (it == stats.end() || !it->second.count(quantity)) {
    throw InvalidInput("no statistics for " + quantity + " at n=" + std::to_string(n));
  }
  return it->second.at(quantity);
}

bool SummaryStats::has(std::size_t n, const std::string& quantity) const {
  auto it = stats.find(n);
  return it != stats.end() && it->second.count(quantity) > 0;
}

namespace {

std::string format_value(double v) {
  char buf[40];
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "experiment,n,trial,seed_stream,quantity,value,walltime_ms\n";
  char wall[32];
  for (const auto& r : records) {
    std::snprintf(wall, sizeof wall, "%.3f", r.walltime_ms);
    for (const auto& [name, value] : r.values) {
      out << r.experiment << ',' << r.n << ',' << r.trial << ',' << r.seed_stream << ','
          << name << ',' << format_value(value) << ',' << wall << '\n';
    }
  }
}

bool ExperimentResult::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

nlohmann::json ExperimentResult::summary_json() const {
  nlohmann::json doc;
  doc["experiment"] = config.experiment;
  doc["master_seed"] = config.master_seed;
  if (config.trials_per_n.empty()) {
    doc["trials"] = config.trials;
  } else {
    doc["trials"] = config.trials_per_n;
  }
  doc["n"] = config.n_values;
  doc["thresholds"] = thresholds;
  nlohmann::json per_n = nlohmann::json::array();
  for (const auto& [n, quantities] : summary.stats) {
    nlohmann::json entry;
    entry["n"] = n;
    for (const auto& [name, s] : quantities) {
      entry["stats"][name] = {{"count", s.count}, {"mean", s.mean},     {"stderr", s.std_error},
                              {"min", s.min},     {"max", s.max},       {"median", s.median}};
    }
    per_n.push_back(std::move(entry));
  }
  doc["per_n"] = std::move(per_n);
  doc["derived"] = derived;
  nlohmann::json verdict_list = nlohmann::json::array();
  for (const auto& v : verdicts) {
    verdict_list.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  }
  doc["verdicts"] = std::move(verdict_list);
  doc["passed"] = passed();
  return doc;
}

}  // namespace synchrolab
