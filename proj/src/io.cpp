#include "nodallab/io.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nodallab {

using nlohmann::json;

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
    const auto* b = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= b[i];
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// non-finite numbers are written as "inf", "-inf", "nan"
json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double num_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("report: bad number " + s);
}

json row_json(const ReportRow& r) {
    return json{{"lambda", num(r.lambda)}, {"lhs", num(r.lhs)}, {"rhs", num(r.rhs)}, {"margin", num(r.margin)},
                {"pass", r.pass}};
}

}  // namespace

json to_json(const Report& r) {
    json claims = json::array();
    for (const auto& c : r.claims) {
        json rows = json::array();
        for (const auto& row : c.rows) rows.push_back(row_json(row));
        json fit = nullptr;
        if (c.fit) fit = json{{"slope", num(c.fit->slope)}, {"stderr", num(c.fit->stderr_slope)}};
        claims.push_back(json{{"id", c.id}, {"verdict", c.verdict}, {"rows", rows}, {"fit", fit}});
    }
    return json{{"meta",
                 {{"version", r.version}, {"config", r.config}, {"started", r.started}, {"finished", r.finished}}},
                {"claims", claims}};
}

Report report_from_json(const json& j) {
    Report r;
    const auto& meta = j.at("meta");
    r.version = meta.at("version").get<std::string>();
    r.config = meta.at("config");
    r.started = meta.at("started").get<std::string>();
    r.finished = meta.at("finished").get<std::string>();
    for (const auto& c : j.at("claims")) {
        ClaimResult cr;
        cr.id = c.at("id").get<std::string>();
        cr.verdict = c.at("verdict").get<std::string>();
        for (const auto& row : c.at("rows")) {
            cr.rows.push_back(ReportRow{num_from(row.at("lambda")), num_from(row.at("lhs")), num_from(row.at("rhs")),
                                        num_from(row.at("margin")), row.at("pass").get<bool>()});
        }
        const auto& fit = c.at("fit");
        if (!fit.is_null()) cr.fit = ClaimFit{num_from(fit.at("slope")), num_from(fit.at("stderr"))};
        r.claims.push_back(std::move(cr));
    }
    return r;
}

std::string emit_report(const Report& r) { return to_json(r).dump(2) + "\n"; }

Report parse_report(const std::string& text) { return report_from_json(json::parse(text)); }

std::string timestamp_now() {
    std::time_t t;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde && *sde) {
        t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    } else {
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_csv(const CsvTable& t) {
    std::string out;
    auto cell = [](const CsvCell& c) -> std::string {
        if (const auto* s = std::get_if<std::string>(&c)) {
            if (s->find_first_of(",\"\n") == std::string::npos) return *s;
            std::string q = "\"";
            for (char ch : *s) {
                if (ch == '"') q += '"';
                q += ch;
            }
            return q + "\"";
        }
        if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
        return std::to_string(std::get<long long>(c));
    };
    for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell(row[i]);
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& t) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << format_csv(t);
}

// cache

namespace {

void put_le(std::string& out, double v) {
    auto u = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

double get_le(const unsigned char* p) {
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(u);
}

double spec_h(const DomainSpec& d, const Grid& g) { return d.kind == DomainKind::masked_grid ? d.h : g.spacing; }

json header_core(const DomainSpec& d, double h, int count, std::size_t points, const std::vector<std::string>& labels) {
    return json{{"format", cache_format_version},
                {"domain", json::parse(d.canonical())},
                {"h", h},
                {"count", count},
                {"points", points},
                {"labels", labels}};
}

}  // namespace

std::filesystem::path cache_path(const std::filesystem::path& dir, const DomainSpec& d, int count) {
    return dir / (d.hash() + "-" + std::to_string(count) + ".nlspec");
}

void write_cache(const std::filesystem::path& path, const DomainSpec& d, int count,
                 const std::vector<EigenPair>& spectrum) {
    if (spectrum.empty() || static_cast<int>(spectrum.size()) != count)
        throw std::invalid_argument("write_cache: spectrum size does not match count");
    const auto& grid = *spectrum.front().field.grid;
    const std::size_t points = grid.size();
    std::vector<std::string> labels;
    std::string payload;
    payload.reserve(8 * static_cast<std::size_t>(count) * (points + 1));
    for (const auto& e : spectrum) {
        labels.push_back(e.label);
        put_le(payload, e.lambda);
    }
    for (const auto& e : spectrum) {
        if (e.field.size() != points) throw std::invalid_argument("write_cache: fields on different grids");
        for (double v : e.field.values) put_le(payload, v);
    }
    json header = header_core(d, spec_h(d, grid), count, points, labels);
    const std::string core = header.dump();
    header["payload_fnv1a"] = hex16(fnv1a(payload.data(), payload.size()));
    header["header_fnv1a"] = hex16(fnv1a(core.data(), core.size()));

    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tmp);
        f << header.dump() << '\n';
        f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::vector<EigenPair>> read_cache(const std::filesystem::path& path, const DomainSpec& d, int count) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::string line;
    if (!std::getline(f, line)) return std::nullopt;
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object()) return std::nullopt;
    try {
        if (header.at("format").get<int>() != cache_format_version) return std::nullopt;
        if (header.at("count").get<int>() != count) return std::nullopt;
        if (header.at("domain") != json::parse(d.canonical())) return std::nullopt;
        const auto points = header.at("points").get<std::size_t>();
        const auto labels = header.at("labels").get<std::vector<std::string>>();
        if (static_cast<int>(labels.size()) != count) return std::nullopt;
        const auto want_payload = header.at("payload_fnv1a").get<std::string>();
        const auto want_header = header.at("header_fnv1a").get<std::string>();
        const double h = header.at("h").get<double>();
        const std::string core = header_core(d, h, count, points, labels).dump();
        if (hex16(fnv1a(core.data(), core.size())) != want_header) return std::nullopt;

        std::string payload((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        const std::size_t expected = 8 * static_cast<std::size_t>(count) * (points + 1);
        if (payload.size() != expected) return std::nullopt;
        if (hex16(fnv1a(payload.data(), payload.size())) != want_payload) return std::nullopt;

        auto grid = build_grid(d);
        if (grid->size() != points || spec_h(d, *grid) != h) return std::nullopt;
        const auto* p = reinterpret_cast<const unsigned char*>(payload.data());
        std::vector<EigenPair> out(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k) {
            auto& e = out[static_cast<std::size_t>(k)];
            e.lambda = get_le(p + 8 * k);
            e.index = k + 1;
            e.label = labels[static_cast<std::size_t>(k)];
            e.field.grid = grid;
            e.field.values.resize(points);
            const unsigned char* base = p + 8 * (static_cast<std::size_t>(count) + static_cast<std::size_t>(k) * points);
            for (std::size_t i = 0; i < points; ++i) e.field.values[i] = get_le(base + 8 * i);
            e.norm_l2 = lp_norm(e.field, 2.0);
        }
        return out;
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

CacheOutcome load_or_compute(const std::filesystem::path& dir, const DomainSpec& d, int count) {
    CacheOutcome out;
    if (dir.empty()) {
        out.spectrum = compute_spectrum(d, count);
        return out;
    }
    const auto path = cache_path(dir, d, count);
    const bool existed = std::filesystem::exists(path);
    if (auto cached = read_cache(path, d, count)) {
        out.spectrum = std::move(*cached);
        out.hit = true;
        return out;
    }
    out.recomputed_corrupt = existed;
    out.spectrum = compute_spectrum(d, count);
    write_cache(path, d, count, out.spectrum);
    return out;
}

}  // namespace nodallab
