#include "soficlab/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace soficlab {

namespace {

std::string double_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("report: number formatting failed");
  return std::string(buf, res.ptr);
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["id"] = cfg.id;
  j["action"] = action_name(cfg.action);
  j["group"] = cfg.group.name();
  j["multiplicity"] = cfg.multiplicity;
  j["p"] = cfg.p;
  j["levels"] = cfg.levels;
  j["construction"] = construction_name(cfg.construction);
  j["tensor_k"] = cfg.tensor_k;
  j["f_radius"] = cfg.f_radius;
  j["f_positive"] = cfg.f_positive;
  j["m"] = cfg.m;
  j["delta"] = cfg.delta;
  j["eps"] = cfg.eps;
  j["rho_q"] = cfg.rho_q;
  j["rho_leading_one"] = cfg.rho_leading_one;
  j["rungs"] = cfg.rungs;
  j["seed"] = cfg.seed;
  j["order_k"] = cfg.order_k;
  j["characters"] = cfg.characters;
  j["theta_turns"] = cfg.theta_turns;
  j["cayley_radius"] = cfg.cayley_radius;
  j["capacity"] = cfg.capacity;
  return j;
}

nlohmann::json level_json(const LevelReport& level) {
  nlohmann::json j;
  j["degree"] = level.degree;
  j["witness_total"] = level.witness_total;
  j["witness_passed"] = level.witness_passed;
  j["witness_undetermined"] = level.witness_undetermined;
  j["pass_fraction"] = level.pass_fraction;
  j["max_defect"] = level.max_defect;
  j["eps_brackets"] = nlohmann::json::array();
  for (const auto& rec : level.eps_records) {
    nlohmann::json e;
    e["epsilon"] = rec.epsilon;
    e["lower_dim"] = rec.lower_dim;
    e["upper_dim"] = rec.upper_dim;
    e["lower_method"] = rec.lower_method;
    e["normalized_lower"] = rec.normalized.lower_value;
    e["normalized_upper"] = rec.normalized.upper_value;
    e["normalized_lower_fraction"] = rec.normalized.lower_fraction;
    e["normalized_upper_fraction"] = rec.normalized.upper_fraction;
    j["eps_brackets"].push_back(std::move(e));
  }
  j["diagnostics"] = nlohmann::json::object();
  for (const auto& [name, value] : level.diagnostics) j["diagnostics"][name] = value;
  return j;
}

}  // namespace

void finalize_report(DimensionReport& report) {
  for (auto& rung : report.rungs) {
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& level : rung.levels) {
      if (level.eps_records.empty()) continue;
      lo = std::max(lo, level.eps_records.front().normalized.lower_value);
      hi = std::max(hi, level.eps_records.front().normalized.upper_value);
    }
    rung.bracket_lower = lo;
    rung.bracket_upper = hi;
  }
  if (!report.rungs.empty()) {
    report.summary_lower = report.rungs.back().bracket_lower;
    report.summary_upper = report.rungs.back().bracket_upper;
  }
}

std::string report_to_json(const DimensionReport& report) {
  nlohmann::json j;
  j["schema"] = "v1";
  j["config"] = config_json(report.config);
  j["rungs"] = nlohmann::json::array();
  for (const auto& rung : report.rungs) {
    nlohmann::json r;
    r["delta"] = rung.delta;
    r["eps"] = rung.eps;
    r["levels"] = nlohmann::json::array();
    for (const auto& level : rung.levels) r["levels"].push_back(level_json(level));
    r["bracket"] = {rung.bracket_lower, rung.bracket_upper};
    j["rungs"].push_back(std::move(r));
  }
  j["levels"] = nlohmann::json::array();
  if (!report.rungs.empty()) {
    for (const auto& level : report.rungs.back().levels) j["levels"].push_back(level_json(level));
  }
  j["summary"]["bracket"] = {report.summary_lower, report.summary_upper};
  return j.dump(2) + "\n";
}

std::string report_to_csv(const DimensionReport& report) {
  std::string out =
      "experiment_id,level_degree,epsilon,lower_dim,upper_dim,normalized_lower,"
      "normalized_upper,witness_pass_fraction,wall_ms\n";
  for (const auto& rung : report.rungs) {
    for (const auto& level : rung.levels) {
      for (const auto& rec : level.eps_records) {
        out += report.config.id;
        out += ',';
        out += std::to_string(level.degree);
        out += ',';
        out += double_text(rec.epsilon);
        out += ',';
        out += std::to_string(rec.lower_dim);
        out += ',';
        out += std::to_string(rec.upper_dim);
        out += ',';
        out += double_text(rec.normalized.lower_value);
        out += ',';
        out += double_text(rec.normalized.upper_value);
        out += ',';
        out += double_text(level.pass_fraction);
        out += ',';
        out += double_text(level.wall_ms);
        out += '\n';
      }
    }
  }
  return out;
}

std::string report_timing_json(const DimensionReport& report) {
  nlohmann::json j;
  j["schema"] = "v1-timing";
  j["levels"] = nlohmann::json::array();
  double total = 0.0;
  for (std::size_t r = 0; r < report.rungs.size(); ++r) {
    for (const auto& level : report.rungs[r].levels) {
      j["levels"].push_back(
          {{"rung", r}, {"degree", level.degree}, {"wall_ms", level.wall_ms}});
      total += level.wall_ms;
    }
  }
  j["total_ms"] = total;
  return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("report: cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("report: write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("report: rename to '" + path + "' failed");
  }
}

std::string csv_path_for(const std::string& json_path) {
  const std::string suffix = ".json";
  if (json_path.size() > suffix.size() &&
      json_path.compare(json_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return json_path.substr(0, json_path.size() - suffix.size()) + ".csv";
  }
  return json_path + ".csv";
}

void write_report_files(const DimensionReport& report, const std::string& json_path) {
  write_file_atomic(json_path, report_to_json(report));
  write_file_atomic(csv_path_for(json_path), report_to_csv(report));
  write_file_atomic(json_path + ".timing.json", report_timing_json(report));
}

}  // namespace soficlab
