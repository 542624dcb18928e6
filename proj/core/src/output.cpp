#include "coldplasma/output.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <fmt/format.h>

#include "coldplasma/errors.hpp"
#include "coldplasma/version.hpp"
#include "json.hpp"

namespace coldplasma {

namespace fs = std::filesystem;

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

void write_text_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", tmp));
    out << text;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError(fmt::format("write to '{}' failed", tmp));
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(fmt::format("cannot move '{}' into place: {}", path, ec.message()));
  }
}

std::vector<std::string> write_files(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> written;
  try {
    for (const auto& [path, text] : files) {
      const fs::path parent = fs::path(path).parent_path();
      if (!parent.empty()) {
        std::error_code ec;
        fs::create_directories(parent, ec);
        if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", parent.string(), ec.message()));
      }
      write_text_file(path, text);
      written.push_back(path);
    }
  } catch (...) {
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw;
  }
  return written;
}

std::string render_csv(const CsvTable& table) {
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out += (i ? "," : "") + table.header[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + row[i];
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> metadata_lines(const RunMetadata& meta, const std::string& what) {
  std::vector<std::string> lines;
  lines.push_back(fmt::format("coldplasma {} {}", kVersion, what));
  if (!meta.command.empty()) lines.push_back("command: " + meta.command);
  for (const auto& [k, v] : meta.config) lines.push_back(k + " = " + v);
  for (const auto& n : meta.notices) lines.push_back("notice: " + n);
  return lines;
}

}  // namespace

std::string render_series_csv(const RunReport& report, const RunMetadata& meta) {
  CsvTable t;
  t.comments = metadata_lines(meta, "time series");
  t.comments.push_back(fmt::format("verdict = {}", to_string(report.verdict)));
  t.header = {"theta", "N_max", "N_origin", "E_max", "P_max", "min_h", "maxQ"};
  t.rows.reserve(report.series.size());
  for (const auto& r : report.series) {
    t.rows.push_back({format_number(r.theta), format_number(r.N_max), format_number(r.N_origin),
                      format_number(r.E_max), format_number(r.P_max), format_number(r.min_h),
                      format_number(r.max_Q)});
  }
  return render_csv(t);
}

std::string render_snapshot_csv(const SnapshotTable& snapshot, const RunMetadata& meta) {
  CsvTable t;
  t.comments = metadata_lines(meta, "snapshot");
  t.comments.push_back("theta = " + format_number(snapshot.theta));
  t.comments.push_back("min_h = " + format_number(snapshot.min_h));
  t.comments.push_back(std::string("degraded = ") + (snapshot.degraded ? "true" : "false"));
  t.comments.push_back(fmt::format("skipped_queries = {}", snapshot.skipped.size()));
  t.header = {"rho", "P", "E", "Q", "D", "N"};
  for (const auto& r : snapshot.rows) {
    t.rows.push_back({format_number(r.rho), format_number(r.P), format_number(r.E), format_number(r.Q),
                      format_number(r.D), format_number(r.N)});
  }
  return render_csv(t);
}

std::string render_summary_json(const RunReport& report, const std::vector<SnapshotTable>& snapshots,
                                const RunMetadata& meta) {
  using json = nlohmann::ordered_json;
  json j;
  j["code_version"] = kVersion;
  if (!meta.command.empty()) j["command"] = meta.command;
  j["verdict"] = to_string(report.verdict);
  j["cause"] = to_string(report.cause);
  j["theta_break"] = report.theta_break ? json(*report.theta_break) : json(nullptr);
  j["rho_break"] = report.rho_break ? json(*report.rho_break) : json(nullptr);
  j["oscillation_count"] = report.oscillation_count;
  j["probe_rho0"] = report.probe_rho0;
  j["theta_end"] = report.theta_end;
  j["steps"] = report.steps;
  j["critrel_initial"] = report.critrel_initial;
  if (!report.series.empty()) {
    double n_max = report.series.front().N_max;
    for (const auto& r : report.series) n_max = std::max(n_max, r.N_max);
    j["N_max_overall"] = n_max;
  }
  json cfg = json::object();
  for (const auto& [k, v] : meta.config) cfg[k] = v;
  j["config"] = cfg;
  j["notices"] = meta.notices;
  j["warnings"] = report.warnings;
  json snaps = json::array();
  for (const auto& s : snapshots) {
    snaps.push_back({{"theta", s.theta}, {"rows", s.rows.size()}, {"skipped", s.skipped.size()},
                     {"min_h", s.min_h}, {"degraded", s.degraded}});
  }
  j["snapshots"] = snaps;
  return j.dump(2) + "\n";
}

std::vector<std::string> emit_outputs(const RunReport& report, const std::vector<SnapshotTable>& snapshots,
                                      const OutputPlan& plan, const RunMetadata& meta) {
  const fs::path dir(plan.directory.empty() ? "." : plan.directory);
  const std::string stem = plan.prefix.empty() ? "run" : plan.prefix;
  std::vector<std::pair<std::string, std::string>> files;
  if (plan.write_series) {
    files.emplace_back((dir / (stem + "_timeseries.csv")).string(), render_series_csv(report, meta));
  }
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    files.emplace_back((dir / fmt::format("{}_snapshot_{:03d}.csv", stem, i)).string(),
                       render_snapshot_csv(snapshots[i], meta));
  }
  files.emplace_back((dir / (stem + "_summary.json")).string(), render_summary_json(report, snapshots, meta));
  return write_files(files);
}

std::string output_directory(const std::string& fallback) {
  const char* env = std::getenv("COLDPLASMA_OUTPUT_DIR");
  if (env != nullptr && *env != '\0') return env;
  return fallback;
}

}  // namespace coldplasma
