#pragma once

#include <filesystem>

#include <json.hpp>

#include "tcoint/simulate.hpp"
#include "tcoint/unitroot.hpp"

namespace tcoint {

/// DGP file schema:
///   {"beta", "tau", "A1": [[b, t], ...], "A2": [[b, t], ...],
///    "noise_cov": [[s11, s12], [s21, s22]], "T", "burn_in", "seed",
///    "start": "YYYY-MM", "benchmark_label", "target_label"}
/// Coefficient rows follow the regressor layout: Constant, z_t, then
/// (d benchmark, d target) for each lag; columns are the two equations.
nlohmann::json dgp_to_json(const DgpSpec& spec);
DgpSpec dgp_from_json(const nlohmann::json& j);
DgpSpec load_dgp(const std::filesystem::path& path);

nlohmann::json unit_root_json(const UnitRootResult& r);

}  // namespace tcoint
