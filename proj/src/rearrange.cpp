#include "nodallab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "nodallab/specfun.hpp"

namespace nodallab {

WeightedSamples::WeightedSamples(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
    if (values_.size() != weights_.size())
        throw std::invalid_argument("WeightedSamples: values and weights differ in length");
    for (double& v : values_) v = std::fabs(v);
    for (double w : weights_) {
        if (!(w > 0.0)) throw std::invalid_argument("WeightedSamples: weights must be positive");
        total_measure_ += w;
    }
}

double distribution_function(const WeightedSamples& s, double t) {
    if (t < 0.0) throw std::invalid_argument("distribution_function: t must be >= 0");
    double measure = 0.0;
    const auto values = s.values();
    const auto weights = s.weights();
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] > t) measure += weights[i];
    return measure;
}

double StepFunction::operator()(double sigma) const {
    if (values.empty()) return 0.0;
    if (sigma <= 0.0) return values.front();
    const auto it = std::lower_bound(breaks.begin(), breaks.end(), sigma);
    if (it == breaks.end()) return 0.0;
    return values[static_cast<std::size_t>(it - breaks.begin())];
}

double StepFunction::integral() const {
    double s = 0.0;
    double left = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        s += values[k] * (breaks[k] - left);
        left = breaks[k];
    }
    return s;
}

double StepFunction::distribution(double t) const {
    double m = 0.0;
    double left = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] > t) m += breaks[k] - left;
        left = breaks[k];
    }
    return m;
}

StepFunction decreasing_rearrangement(const WeightedSamples& s) {
    if (s.size() == 0) throw std::invalid_argument("decreasing_rearrangement: empty samples");
    const auto values = s.values();
    const auto weights = s.weights();
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    StepFunction out;
    out.breaks.reserve(order.size());
    out.values.reserve(order.size());
    double acc = 0.0;
    for (std::size_t i : order) {
        acc += weights[i];
        out.breaks.push_back(acc);
        out.values.push_back(values[i]);
    }
    return out;
}

BathtubResult bathtub_supremum(const RadialProfile& profile, std::span<const RadialSample> samples,
                               double capacity) {
    double total = 0.0;
    for (const auto& s : samples) {
        if (!(s.weight > 0.0)) throw std::invalid_argument("bathtub_supremum: weights must be positive");
        total += s.weight;
    }
    if (capacity < 0.0) throw std::invalid_argument("bathtub_supremum: negative capacity");
    if (capacity > total * (1.0 + 1e-14))
        throw std::invalid_argument("bathtub_supremum: capacity exceeds total measure");

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a].distance < samples[b].distance;
    });

    // strict decrease over distinct sampled distances
    double prev_d = -1.0;
    double prev_f = 0.0;
    for (std::size_t i : order) {
        const double d = samples[i].distance;
        if (d == prev_d) continue;
        const double fd = profile.f(d);
        if (fd < 0.0) throw std::invalid_argument("bathtub_supremum: profile must be non-negative");
        if (prev_d >= 0.0 && !(fd < prev_f))
            throw std::invalid_argument("bathtub_supremum: profile must be strictly decreasing");
        prev_d = d;
        prev_f = fd;
    }

    BathtubResult result;
    double remaining = capacity;
    for (std::size_t i : order) {
        if (remaining <= 0.0) break;
        const double take = std::min(samples[i].weight, remaining);
        result.value += profile.f(samples[i].distance) * take;
        result.selected_measure += take;
        remaining -= take;
    }
    return result;
}

HardyLittlewood hardy_littlewood_check(const WeightedSamples& u, const WeightedSamples& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("hardy_littlewood_check: sample layouts differ");
    const auto wu = u.weights();
    const auto wv = v.weights();
    if (!std::equal(wu.begin(), wu.end(), wv.begin()))
        throw std::invalid_argument("hardy_littlewood_check: sample layouts differ");

    HardyLittlewood out;
    const auto a = u.values();
    const auto b = v.values();
    for (std::size_t i = 0; i < a.size(); ++i) out.lhs += a[i] * b[i] * wu[i];

    const StepFunction us = decreasing_rearrangement(u);
    const StepFunction vs = decreasing_rearrangement(v);
    std::size_t i = 0;
    std::size_t j = 0;
    double left = 0.0;
    while (i < us.values.size() && j < vs.values.size()) {
        const double right = std::min(us.breaks[i], vs.breaks[j]);
        out.rhs += us.values[i] * vs.values[j] * (right - left);
        left = right;
        if (us.breaks[i] <= right) ++i;
        if (vs.breaks[j] <= right) ++j;
    }
    return out;
}

double newtonian_potential_sup(int n, double region_volume) {
    if (n < 3) throw std::invalid_argument("newtonian_potential_sup: n must be >= 3");
    if (region_volume < 0.0) throw std::invalid_argument("newtonian_potential_sup: negative volume");
    const double alpha = unit_ball_volume(n);
    return std::pow(region_volume, 2.0 / n) / (2.0 * (n - 2) * std::pow(alpha, 2.0 / n));
}

BathtubTrial bathtub_random_subsets(const RadialProfile& profile,
                                    std::span<const RadialSample> samples, std::size_t cells,
                                    int trials, std::uint64_t seed) {
    if (cells > samples.size()) throw std::invalid_argument("bathtub_random_subsets: too many cells");
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a].distance < samples[b].distance;
    });
    double capacity = 0.0;
    for (std::size_t k = 0; k < cells; ++k) capacity += samples[order[k]].weight;

    BathtubTrial out;
    out.greedy = bathtub_supremum(profile, samples, capacity).value;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool(samples.size());
    out.subset_values.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        std::iota(pool.begin(), pool.end(), 0);
        // partial Fisher-Yates
        double value = 0.0;
        for (std::size_t k = 0; k < cells; ++k) {
            std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
            std::swap(pool[k], pool[pick(rng)]);
            const auto& s = samples[pool[k]];
            value += profile.f(s.distance) * s.weight;
        }
        out.subset_values.push_back(value);
    }
    return out;
}

namespace {

void uniform_in_ball(std::mt19937_64& rng, double out[3]) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double r2 = 2.0;
    while (r2 > 1.0 || r2 == 0.0) {
        out[0] = u(rng);
        out[1] = u(rng);
        out[2] = u(rng);
        r2 = out[0] * out[0] + out[1] * out[1] + out[2] * out[2];
    }
}

}  // namespace

PotentialEstimate newtonian_potential_mc(const Ellipsoid& region, int samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("newtonian_potential_mc: need at least 2 samples");
    std::mt19937_64 rng(seed);
    const double volume = 4.0 * std::numbers::pi / 3.0 * region.axes[0] * region.axes[1] * region.axes[2];
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
        double xi[3];
        uniform_in_ball(rng, xi);
        double y[3];
        for (int r = 0; r < 3; ++r) {
            y[r] = region.center[r];
            for (int c = 0; c < 3; ++c) y[r] += region.rotation[r][c] * region.axes[c] * xi[c];
        }
        const double dist = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        const double phi = volume / (4.0 * std::numbers::pi * dist);
        sum += phi;
        sum_sq += phi * phi;
    }
    PotentialEstimate est;
    est.value = sum / samples;
    const double var = std::max(0.0, sum_sq / samples - est.value * est.value);
    est.std_error = std::sqrt(var / (samples - 1));
    return est;
}

Ellipsoid random_ellipsoid(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> stretch(-0.7, 0.7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Ellipsoid e;
    const double s0 = stretch(rng);
    const double s1 = stretch(rng);
    e.axes[0] = std::exp(s0);
    e.axes[1] = std::exp(s1);
    e.axes[2] = std::exp(-s0 - s1);

    double q[4];
    double norm = 0.0;
    for (double& c : q) {
        c = gauss(rng);
        norm += c * c;
    }
    norm = std::sqrt(norm);
    for (double& c : q) c /= norm;
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    const double rot[3][3] = {
        {1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
        {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
        {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)},
    };
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) e.rotation[r][c] = rot[r][c];

    double center[3];
    uniform_in_ball(rng, center);
    for (int r = 0; r < 3; ++r) e.center[r] = 1.5 * center[r];
    return e;
}

}  // namespace nodallab
