#include "csv.hpp"

#include <charconv>
#include <cstdio>

#include "mcchan/errors.hpp"

namespace mcchan::cli {

std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "k,t,z_obs,z_out\n";
  for (std::int64_t k = 0; k <= traj.steps; ++k) {
    out << k << ',' << format_number(traj.t[k]) << ','
        << format_number(traj.z_obs[k]) << ',' << format_number(traj.z_out[k])
        << '\n';
  }
}

void write_cir_csv(std::ostream& out, const Cir& response) {
  out << "i,t,g\n";
  for (std::size_t i = 0; i < response.g.size(); ++i) {
    out << i << ',' << format_number(static_cast<double>(i) * response.dt)
        << ',' << format_number(response.g[i]) << '\n';
  }
}

void write_pbs_csv(std::ostream& out, const PbsResult& result, double dt,
                   std::int64_t particles) {
  out << "k,t,z_obs,z_out,seed,particles,partitions\n";
  for (std::size_t k = 0; k < result.bound_count.size(); ++k) {
    out << k << ',' << format_number(static_cast<double>(k) * dt) << ','
        << result.bound_count[k] << ',' << result.out_count[k] << ','
        << result.seed << ',' << particles << ',' << result.partitions
        << '\n';
  }
}

void write_trajectory_states_csv(std::ostream& out, const Trajectory& traj) {
  out << "k,state,value\n";
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    for (std::size_t i = 0; i < traj.snapshots[s].size(); ++i) {
      out << traj.snapshot_steps[s] << ',' << (i + 1) << ','
          << format_number(traj.snapshots[s][i]) << '\n';
    }
  }
}

void write_pbs_states_csv(std::ostream& out, const PbsResult& result) {
  out << "k,state,value\n";
  for (std::size_t s = 0; s < result.occupancy.size(); ++s) {
    for (std::size_t i = 0; i < result.occupancy[s].size(); ++i) {
      out << result.occupancy_steps[s] << ',' << (i + 1) << ','
          << result.occupancy[s][i] << '\n';
    }
  }
}

CsvFile::CsvFile(const std::filesystem::path& path) : path_(path) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
}

CsvFile::~CsvFile() {
  if (!closed_ && out_.is_open()) out_.close();
}

void CsvFile::close() {
  out_.flush();
  if (!out_) throw IoError("write failure on '" + path_.string() + "'");
  out_.close();
  if (out_.fail()) throw IoError("close failure on '" + path_.string() + "'");
  closed_ = true;
}

}  // namespace mcchan::cli
