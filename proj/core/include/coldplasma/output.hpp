#pragma once

// CSV and JSON emitters. Every file starts with '#' metadata lines followed
// by a header row; numbers are written with 17 significant digits. Files are
// written to a temporary name and renamed, and a failed emit removes whatever
// it had already produced.

#include <string>
#include <utility>
#include <vector>

#include "coldplasma/sampling.hpp"
#include "coldplasma/solver.hpp"

namespace coldplasma {

struct RunMetadata {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // key/value echo
  std::vector<std::string> notices;
};

struct CsvTable {
  std::vector<std::string> comments;  // written as "# <line>"
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_number(double v);

// Writes text to path atomically (temporary file + rename). Throws IoError.
void write_text_file(const std::string& path, const std::string& text);

std::string render_csv(const CsvTable& table);

std::string render_series_csv(const RunReport& report, const RunMetadata& meta);
std::string render_snapshot_csv(const SnapshotTable& snapshot, const RunMetadata& meta);
std::string render_summary_json(const RunReport& report, const std::vector<SnapshotTable>& snapshots,
                                const RunMetadata& meta);

// Writes <prefix>_timeseries.csv (if enabled), <prefix>_snapshot_<i>.csv per
// snapshot and <prefix>_summary.json into plan.directory, creating it if
// needed. Returns the written paths.
std::vector<std::string> emit_outputs(const RunReport& report, const std::vector<SnapshotTable>& snapshots,
                                      const OutputPlan& plan, const RunMetadata& meta);

// Writes a set of (path, contents) pairs all-or-nothing.
std::vector<std::string> write_files(const std::vector<std::pair<std::string, std::string>>& files);

// Directory from COLDPLASMA_OUTPUT_DIR when set, otherwise `fallback`.
std::string output_directory(const std::string& fallback);

}  // namespace coldplasma
