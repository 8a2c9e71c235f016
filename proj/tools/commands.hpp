#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "scenario.hpp"

namespace mcchan::cli {

/// Flag values shared across subcommands. Empty optionals fall back to the
/// scenario file.
struct CommandOptions {
  std::filesystem::path output;
  std::optional<std::int64_t> particles;
  std::optional<std::uint64_t> seed;
  int stride = 0;      // state-snapshot stride, 0 = off
  double tol = -1.0;   // equilibrium: also print the Neumann cross-check
};

// Each command throws on failure; main() maps exception types to the exit
// codes 2 (validation), 3 (I/O), 4 (numerical).
void cmd_run(const std::filesystem::path& scenario_file,
             const CommandOptions& opts);
void cmd_cir(const std::filesystem::path& scenario_file,
             const CommandOptions& opts);
void cmd_equilibrium(const std::filesystem::path& scenario_file,
                     const CommandOptions& opts);
void cmd_pbs(const std::filesystem::path& scenario_file,
             const CommandOptions& opts);
void cmd_sweep(const std::filesystem::path& sweep_file,
               const std::filesystem::path& output_dir);
void cmd_dump(const std::filesystem::path& scenario_file,
              const CommandOptions& opts);

}  // namespace mcchan::cli
