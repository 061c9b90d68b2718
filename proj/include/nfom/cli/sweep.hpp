#pragma once

// Sweep tables and their serialization. CSV output is locale-free and uses
// shortest round-trip formatting (std::to_chars), so identical config and
// tool version produce bit-identical files regardless of thread count.

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nfom/cli/config.hpp"
#include "nfom/version.hpp"

namespace nfom::cli {

struct SweepTable {
  std::vector<std::string> columns;        // "name_unit" tokens
  std::vector<std::vector<double>> rows;   // row-major numeric data
  std::vector<std::string> status;         // per-row marker; empty = no column
};

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Evaluate fn(i) for i in [0, n) on the requested number of threads. Results
// land in input order; fn must be pure (the contract all sweeps rely on).
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min(static_cast<std::size_t>(threads), n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  return v;
}

inline std::vector<double> logspace(double lo, double hi, int steps) {
  if (!(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("logspace: need 0 < lo < hi");
  std::vector<double> v(static_cast<std::size_t>(steps));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < steps; ++i)
    v[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (steps - 1));
  return v;
}

inline void write_table_csv(const std::filesystem::path& path, const SweepTable& t,
                            const RunConfig& cfg) {
  std::ofstream out(path, std::ios::binary);  // binary: LF line endings only
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# " << kToolName << " " << kVersion << " config=" << hash_hex(cfg.hash)
      << "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    out << (c ? "," : "") << t.columns[c];
  if (!t.status.empty()) out << ",status";
  out << "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_double(row[c]);
    if (!t.status.empty()) out << "," << t.status[r];
    out << "\n";
  }
}

inline void write_table_json(const std::filesystem::path& path, const SweepTable& t,
                             const RunConfig& cfg, const std::string& command) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["config_hash"] = hash_hex(cfg.hash);
  doc["columns"] = t.columns;
  doc["rows"] = t.rows;
  if (!t.status.empty()) doc["status"] = t.status;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

inline void write_sidecar(const std::filesystem::path& csv_path, const SweepTable& t,
                          const RunConfig& cfg, const std::string& command) {
  json meta;
  meta["tool"] = kToolName;
  meta["version"] = kVersion;
  meta["command"] = command;
  meta["config_hash"] = hash_hex(cfg.hash);
  meta["columns"] = t.columns;
  meta["row_count"] = t.rows.size();
  meta["config"] = cfg.canonical;
  std::filesystem::path meta_path = csv_path;
  meta_path.replace_extension(".meta.json");
  std::ofstream out(meta_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + meta_path.string());
  out << meta.dump(2) << "\n";
}

// Emit a table in the configured format (plus the CSV sidecar metadata).
inline std::filesystem::path emit_table(const SweepTable& t, const RunConfig& cfg,
                                        const std::string& command,
                                        const std::string& basename) {
  const std::filesystem::path dir(cfg.output.dir);
  std::filesystem::create_directories(dir);
  if (cfg.output.format == "json") {
    const auto path = dir / (basename + ".json");
    write_table_json(path, t, cfg, command);
    return path;
  }
  const auto path = dir / (basename + ".csv");
  write_table_csv(path, t, cfg);
  write_sidecar(path, t, cfg, command);
  return path;
}

}  // namespace nfom::cli
