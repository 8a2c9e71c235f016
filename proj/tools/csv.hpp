#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include "mcchan/particle_sim.hpp"
#include "mcchan/state_space.hpp"

namespace mcchan::cli {

// Locale-independent number formatting. Shortest round-trip form for data
// columns, 12 significant digits where the interface pins that precision.
std::string format_number(double v);
std::string format_sig12(double v);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_cir_csv(std::ostream& out, const Cir& response);
void write_pbs_csv(std::ostream& out, const PbsResult& result, double dt,
                   std::int64_t particles);

// Long-form `k,state,value` listing of recorded state snapshots.
void write_trajectory_states_csv(std::ostream& out, const Trajectory& traj);
void write_pbs_states_csv(std::ostream& out, const PbsResult& result);

// Opens for writing, throws IoError on open or close failure.
class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path);
  ~CsvFile();
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  std::ostream& stream() { return out_; }
  void close();  // flushes and verifies

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  bool closed_ = false;
};

}  // namespace mcchan::cli
