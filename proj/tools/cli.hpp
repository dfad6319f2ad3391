#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "latinhib/dynamics.hpp"
#include "latinhib/io.hpp"
#include "latinhib/sweep.hpp"

namespace latinhib::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;  // filesystem and other runtime failures
inline constexpr int usage = 2;
inline constexpr int input = 3;
inline constexpr int nonconvergence = 4;
}  // namespace exit_code

enum class InputKind { points, distances, iris };

struct CliConfig {
  std::string subcommand;

  InputKind input_kind = InputKind::points;
  std::filesystem::path input;
  bool header = false;
  std::optional<std::size_t> label_column;

  double t = 0.0;
  GridOptions grid;
  DynamicsConfig dynamics;
  std::size_t min_class_size = 1;
  std::string plateau_source = "auto";  // raw | filtered | auto
  std::size_t top = 5;
  unsigned threads = 0;

  std::filesystem::path json_out;
  std::filesystem::path tsv_out;
  std::filesystem::path plateaus_out;
  std::filesystem::path svg_out;
  std::filesystem::path points_out;

  BlobSpec blobs;
};

/// Parses `args` (without the program name) and dispatches. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_cluster(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gen(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace latinhib::cli
