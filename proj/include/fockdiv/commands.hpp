#pragma once

#include "fockdiv/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fockdiv {

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;  // short lines for the console
};

CommandResult cmd_geometry(const Config& c, const std::filesystem::path& out);
CommandResult cmd_frame(const Config& c, const std::filesystem::path& out);
CommandResult cmd_uniqueness(const Config& c, const std::filesystem::path& out);
CommandResult cmd_dichotomy(const Config& c, const std::filesystem::path& out);

// Square-lattice family for the dichotomy sweep: spacing s = kappa * 2 sqrt(m*).
// A is the lower frame bound on span{e_0..e_{N_A-1}}, N_A = ceil((s + frame_pad)^2), for the
// lattice patch of radius sqrt(N_A) + 2 sqrt(m*) + patch_pad. M_X is computed on the 3x3
// patch around the origin at its recommended truncation (infinite when not interpolating).
struct DichotomyParams {
  std::vector<int> multiplicities;
  std::vector<double> kappas;
  double frame_pad = 3.0;
  double patch_pad = 4.0;
};

struct DichotomyPoint {
  int m_star = 0;
  double kappa = 0.0, spacing = 0.0;
  double A = 0.0, MX = 0.0;
  int N_A = 0, N_M = 0;
  double objective = 0.0;  // max(1/A, M_X)
};

struct DichotomyMin {
  int m_star = 0;
  double objective = 0.0;
  double kappa = 0.0;
};

DichotomyParams dichotomy_params(const nlohmann::json& family);
std::vector<DichotomyPoint> dichotomy_sweep(const DichotomyParams& p);
std::vector<DichotomyMin> dichotomy_minima(const std::vector<DichotomyPoint>& pts);

} // namespace fockdiv
