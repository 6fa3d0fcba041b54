#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodallab/nodal.hpp"

namespace nodallab {

struct ChitiConstant {
    int n = 0;
    double p = 0.0;
    double value = 0.0;
    double quad_error = 0.0;  ///< propagated absolute error of value
};

/// K_{n,p} = 2^{1-n/2} (n alpha_n)^{-1/p} / (Gamma(n/2) I^{1/p}) with
/// I = int_0^{j} r^{p - np/2 + n - 1} J_{n/2-1}(r)^p dr, j = j_{n/2-1}.
ChitiConstant chiti_constant(int n, double p);

/// z(x) = |x|^{1-n/2} J_{n/2-1}(sqrt(lambda) |x|) on the ball of radius
/// j_{n/2-1} / sqrt(lambda); the value at 0 is the limit.
double extremal_z(int n, double lambda, double x_norm);

double sogge_breakpoint(int n);
/// delta(p) for p >= 2; p = infinity allowed.
double sogge_delta(int n, double p);

double smith_sogge_breakpoint(int n);
/// alpha(p), n >= 3, p >= 2; p = infinity allowed.
double smith_sogge_alpha(int n, double p);

/// n/2 + p delta(p).
double closed_manifold_exponent(int n, double p);
/// n/2 + np/2 (1/2 - 1/p) - p/4; requires p >= 4 (n >= 4) or p >= 5 (n = 3).
double boundary_manifold_exponent(int n, double p);
bool boundary_exponent_applies(int n, double p);

/// (1 - delta)^{n/2} (2(n-2))^{n/2} alpha_n lambda^{-n/2}, n >= 3.
double superlevel_volume_bound(int n, double delta, double lambda);

/// j_{n/2-1}^n alpha_n: Faber-Krahn volume constant (lambda_1(B)^{n/2} |B|).
double faber_krahn_constant(int n);

enum class Provenance { explicit_constant, fitted };
std::string to_string(Provenance p);

/// One inequality instance lhs <= rhs.
struct BoundCheckReport {
    std::string id;
    double lambda = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    Provenance provenance = Provenance::explicit_constant;
    std::string exponent_source;
    double tolerance = 0.0;
    double margin = 0.0;  ///< rhs - lhs
    bool pass = false;    ///< margin >= -tolerance
};

BoundCheckReport make_report(std::string id, double lambda, double lhs, double rhs, double constant,
                             Provenance provenance, double tolerance, std::string exponent_source = {});

struct ScalingFit {
    std::vector<double> lambdas;
    std::vector<double> values;
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
};

/// Least-squares line through (log lambda, log value). Needs >= 5 points with
/// strictly increasing lambda and positive values.
ScalingFit fit_scaling(const std::vector<double>& lambdas, const std::vector<double>& values);

/// Collapses repeated lambdas (relative gap 1e-9) to the largest value, then fits.
ScalingFit fit_upper_envelope(const std::vector<double>& lambdas, const std::vector<double>& values);

/// ||u||_inf <= K_{n,p} lambda^{n/(2p)} ||u||_p for a first Dirichlet
/// eigenfunction of a Euclidean domain.
BoundCheckReport check_chiti_inequality(const EigenPair& e, double p, double tolerance = 0.0);

enum class ExtremaMode { explicit_constant, fitted };

struct ExtremaCheck {
    std::vector<BoundCheckReport> rows;
    std::optional<ScalingFit> fit;
    double exponent = 0.0;
    double lambda_stable = 0.0;  ///< smallest lambda from which every tail fit stays within the slope tolerance; 0 if none
    bool pass = true;
};

inline constexpr double slope_tolerance = 0.1;

/// Explicit mode (Euclidean Dirichlet, p in {1, 2}): per-eigenfunction checks of
///   sum m <= K_{n,1} Vol^{1/2} lambda^{n/2},   sum m^2 <= K_{n,2}^2 lambda^{n/2}
/// with the given relative slack. Fitted mode: slope of log sum m^p against
/// log lambda must not exceed exponent + slope_tolerance; rows carry the
/// empirical constant max(sum m^p / lambda^exponent).
ExtremaCheck check_extrema_sums(const std::vector<NodalDecomposition>& spectrum, double p, double exponent,
                                ExtremaMode mode, double slack = grid_slack);

struct NeumannCheck {
    ExtremaCheck sum1;      ///< sum m vs mu, exponent 1
    ExtremaCheck sum2;      ///< sum m^2 vs mu, exponent 1
    ScalingFit touching;    ///< boundary-touching count vs mu
    bool pass = true;
};

/// Planar Neumann spectra; the constant mode (mu = 0) is skipped.
NeumannCheck check_neumann(const std::vector<NodalDecomposition>& spectrum);

/// sum_i m^p * c <= lambda^{n/2} int |u|^p with c = min_i Vol(V_{1/2}^i) lambda^{n/2} 2^{-p}.
BoundCheckReport check_extrema_chain(const NodalDecomposition& nd, double p, int n);

/// sum m <= (sum m^2 * |A|)^{1/2}.
BoundCheckReport check_cauchy_schwarz(const NodalDecomposition& nd);

/// Per delta: min_i Vol(V_delta^i) lambda^{n/2}.
std::vector<double> superlevel_constants(const NodalDecomposition& nd, const std::vector<double>& deltas, int n);

}  // namespace nodallab
