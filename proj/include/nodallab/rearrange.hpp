#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nodallab {

/// |u| sampled on cells of positive measure.
class WeightedSamples {
public:
    /// Stores |values|; throws std::invalid_argument on length mismatch or a
    /// non-positive weight.
    WeightedSamples(std::vector<double> values, std::vector<double> weights);

    std::span<const double> values() const { return values_; }
    std::span<const double> weights() const { return weights_; }
    double total_measure() const { return total_measure_; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
    std::vector<double> weights_;
    double total_measure_ = 0.0;
};

/// Measure of {|u| > t}.
double distribution_function(const WeightedSamples& s, double t);

/// Non-increasing step function on [0, total]: value[k] on (breaks[k-1], breaks[k]],
/// with breaks[-1] = 0.
struct StepFunction {
    std::vector<double> breaks;
    std::vector<double> values;

    double operator()(double sigma) const;
    double integral() const;
    double total() const { return breaks.empty() ? 0.0 : breaks.back(); }
    /// Measure of {sigma : f(sigma) > t}.
    double distribution(double t) const;
};

/// u*(sigma) = inf{t : mu(t) < sigma}. Ties keep original sample order.
StepFunction decreasing_rearrangement(const WeightedSamples& s);

/// Non-negative, strictly decreasing radial profile f(r).
struct RadialProfile {
    std::function<double(double)> f;
};

struct RadialSample {
    double distance;
    double weight;
};

struct BathtubResult {
    double value = 0.0;
    double selected_measure = 0.0;
};

/// Greedy fill by increasing distance until capacity, last cell taken fractionally.
/// Throws std::invalid_argument if capacity exceeds the total measure or the
/// profile is not strictly decreasing on the sampled distances.
BathtubResult bathtub_supremum(const RadialProfile& profile, std::span<const RadialSample> samples,
                               double capacity);

struct HardyLittlewood {
    double lhs = 0.0;  ///< sum u v w
    double rhs = 0.0;  ///< integral of u* v*
};

/// Throws std::invalid_argument when u and v do not share a sample layout.
HardyLittlewood hardy_littlewood_check(const WeightedSamples& u, const WeightedSamples& v);

/// Vol^{2/n} / (2 (n-2) alpha_n^{2/n}), the sup of the Newtonian potential of a
/// unit-density region of the given volume. n >= 3.
double newtonian_potential_sup(int n, double region_volume);

/// Greedy value against integer-cell random subsets of the same cell count.
struct BathtubTrial {
    double greedy = 0.0;
    std::vector<double> subset_values;
};

/// Draws `trials` random subsets of `cells` samples (uniform without replacement)
/// and evaluates sum f(d) w on each. `cells` must be such that the greedy
/// capacity is the measure of the `cells` nearest samples.
BathtubTrial bathtub_random_subsets(const RadialProfile& profile,
                                    std::span<const RadialSample> samples, std::size_t cells,
                                    int trials, std::uint64_t seed);

/// A region of volume 4 pi / 3 in R^3: an ellipsoid with semi-axes a b c = 1,
/// rotated and translated.
struct Ellipsoid {
    double axes[3] = {1.0, 1.0, 1.0};
    double rotation[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    double center[3] = {0.0, 0.0, 0.0};
};

struct PotentialEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo estimate of w(0) = integral over the ellipsoid of 1/(4 pi |y|) dy.
PotentialEstimate newtonian_potential_mc(const Ellipsoid& region, int samples, std::uint64_t seed);

/// Random unit-volume-ratio ellipsoid (volume 4 pi / 3) with center inside the unit ball.
Ellipsoid random_ellipsoid(std::uint64_t seed);

}  // namespace nodallab
