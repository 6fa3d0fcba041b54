#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nodallab/spectra.hpp"

namespace nodallab {

struct ReportRow {
    double lambda = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;

    bool operator==(const ReportRow&) const = default;
};

struct ClaimFit {
    double slope = 0.0;
    double stderr_slope = 0.0;

    bool operator==(const ClaimFit&) const = default;
};

struct ClaimResult {
    std::string id;
    std::string verdict;  ///< "pass", "fail" or "reported"
    std::vector<ReportRow> rows;
    std::optional<ClaimFit> fit;

    bool operator==(const ClaimResult&) const = default;
};

struct Report {
    std::string version;
    nlohmann::json config;
    std::string started;
    std::string finished;
    std::vector<ClaimResult> claims;

    bool operator==(const Report&) const = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string emit_report(const Report& r);
Report parse_report(const std::string& text);

/// UTC ISO-8601 timestamp; SOURCE_DATE_EPOCH, when set, replaces the clock.
std::string timestamp_now();

using CsvCell = std::variant<std::string, double, long long>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

/// Header row, ',' separator, doubles with 12 significant digits, LF endings.
std::string format_csv(const CsvTable& t);
void write_csv(const std::filesystem::path& path, const CsvTable& t);
std::string format_double(double v);

/// Spectrum cache file: one JSON header line
///   {"format", "domain", "h", "count", "points", "labels", "payload_fnv1a", "header_fnv1a"}
/// followed by count eigenvalues and count * points field samples, all
/// little-endian IEEE-754 binary64.
inline constexpr int cache_format_version = 1;

std::filesystem::path cache_path(const std::filesystem::path& dir, const DomainSpec& d, int count);
void write_cache(const std::filesystem::path& path, const DomainSpec& d, int count,
                 const std::vector<EigenPair>& spectrum);
/// nullopt when the file is missing, corrupted, or describes another spectrum.
std::optional<std::vector<EigenPair>> read_cache(const std::filesystem::path& path, const DomainSpec& d, int count);

struct CacheOutcome {
    std::vector<EigenPair> spectrum;
    bool hit = false;
    bool recomputed_corrupt = false;
};

/// compute_spectrum through the cache directory (empty dir disables caching).
CacheOutcome load_or_compute(const std::filesystem::path& dir, const DomainSpec& d, int count);

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed = 1469598103934665603ull);

}  // namespace nodallab
