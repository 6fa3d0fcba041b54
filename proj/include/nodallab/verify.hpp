#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nodallab/bounds.hpp"
#include "nodallab/io.hpp"

namespace nodallab {

struct RunConfig {
    std::string command;
    std::string domain;  ///< empty selects the claim's default domains
    std::optional<double> a, b, c;
    double radius = 1.0;
    double h = 1.0 / 64.0;
    std::string bc = "dirichlet";
    std::optional<double> resolution;
    int count = 0;  ///< 0 selects the claim's default
    std::vector<double> deltas{0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<double> ps;  ///< empty selects the claim's default
    std::vector<int> ns{2, 3};
    std::vector<std::string> claims;
    std::string out_dir;
    std::string cache_dir;
    std::uint64_t seed = 1;
    double slack = grid_slack;
    double zero_tolerance = default_zero_tolerance;

    nlohmann::json to_json() const;
    /// Throws std::invalid_argument when a value is outside what the commands accept.
    void validate() const;
};

/// Accepted --domain names: rect, box, torus, disk, sphere, square-fd, lshape, disk-fd.
DomainSpec domain_from_config(const RunConfig& cfg, const std::string& name);

const std::vector<std::string>& supported_claims();

struct NamedTable {
    std::string name;  ///< file stem
    CsvTable table;
};

struct VerifyOutput {
    std::vector<ClaimResult> claims;
    std::vector<NamedTable> tables;
};

/// Runs the check pipeline for one claim id. Throws std::invalid_argument on an
/// unknown id or a domain the claim cannot use.
VerifyOutput run_claim(const std::string& id, const RunConfig& cfg);

/// Runs every claim in cfg.claims (all supported claims when empty).
Report run_verify(const RunConfig& cfg, std::vector<NamedTable>* tables = nullptr);

/// true when some claim has verdict "fail".
bool any_failure(const Report& r);

/// Eigenvalue table: index, lambda, label.
CsvTable spectrum_table(const std::vector<EigenPair>& spectrum);

/// n, p, K, quad_error, delta, alpha, j, alpha_n for every (n, p); delta is
/// blank for p < 2 and alpha blank for n < 3.
CsvTable constants_table(const std::vector<int>& ns, const std::vector<double>& ps);

}  // namespace nodallab
