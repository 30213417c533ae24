#pragma once

#include "offload/metrics.hpp"
#include "offload/sim_engine.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace offload {

/// Column contract of the telemetry CSV. Angles are in degrees.
extern const std::vector<std::string> kCsvColumns;

void write_csv(std::ostream &os, std::span<const MetricsRecord> records);
void write_csv(std::span<const MetricsRecord> records, const std::filesystem::path &path);

/// Parses a file produced by write_csv. Throws std::runtime_error on a header
/// mismatch or malformed row.
std::vector<MetricsRecord> read_csv(std::istream &is);
std::vector<MetricsRecord> read_csv(const std::filesystem::path &path);

void write_summary(const SummaryStats &stats, const std::filesystem::path &path);
void write_summary(const SimResult &result, const std::filesystem::path &path);

/// Two-column series for plotting: t vs alpha, t vs fx, t vs fy. Returns the
/// files written. Throws EmptyRun for no records.
std::vector<std::filesystem::path> emit_plot_data(std::span<const MetricsRecord> records,
                                                  const std::filesystem::path &dir);

/// Writes records.csv, summary.json and the plot series into `dir`.
void write_run(const SimResult &result, const std::filesystem::path &dir);

} // namespace offload
