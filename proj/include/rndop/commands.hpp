#pragma once

#include <string>

#include "rndop/config.hpp"

namespace rndop {

// Exit codes shared by the CLI and the command implementations:
// 0 success, 2 configuration error, 3 solver/placement infeasibility.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;

// Runs one placement and writes placement.json + rndop_vs_k.csv into
// config.out_dir. Prints a one-line summary on stdout.
int cmd_place(const RunConfig& config);

// Runs the Monte-Carlo campaign for the configured methods and writes
// error_cdf.csv + timing.csv + campaign.json into config.out_dir.
int cmd_mc(const RunConfig& config);

// Evaluates the RNDOP field and exact DOP on an angular grid and writes
// dop_field.csv into config.out_dir.
int cmd_dopfield(const RunConfig& config);

// Initial anchors for a run: the explicit coordinates when given, otherwise
// the best-of-mc_init random search.
AnchorSet resolve_initial_anchors(const RunConfig& config);

}  // namespace rndop
