#ifndef TEC_ESTIMATORS_HPP
#define TEC_ESTIMATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "tec/covariance.hpp"
#include "tec/criteria.hpp"
#include "tec/graph.hpp"
#include "tec/variable_set.hpp"

namespace tec {

enum class EstimatorKind { back_door, conditional_iv, front_door, path_product };

std::string to_string(EstimatorKind kind);

/// How an estimation strategy is specified: criterion kind plus its sets.
/// Text form: "back-door:A,B", "civ:Z|T1,T2", "front-door:M" (empty sets
/// allowed, e.g. "back-door:").
struct Strategy {
    EstimatorKind kind = EstimatorKind::back_door;
    VariableSet set;                 // S, T or Z depending on kind
    std::optional<std::string> instrument;  // conditional IV only

    static Strategy parse(const std::string& text);
    std::string describe() const;
    bool operator==(const Strategy&) const = default;
};

/// Point estimate of a total effect with its variances. `avar` is the
/// asymptotic variance already divided by n; `finite_var` the exact
/// finite-sample variance when the formula applies.
struct EstimateReport {
    EstimatorKind kind = EstimatorKind::back_door;
    std::string treatment;
    std::string outcome;
    VariableSet set;
    std::optional<std::string> instrument;
    double tau_hat = 0.0;
    double avar = 0.0;
    double n_times_avar = 0.0;
    std::optional<double> finite_var;
    int n = 0;
    std::size_t set_size = 0;  // q for back-door, r for front-door
    /// For conditional IV: the total effect plugged into the delta-method
    /// formula, and whether it was supplied or taken from tau_hat.
    std::optional<double> tau_used;
    bool tau_supplied = false;
    std::vector<std::string> warnings;
};

/// Sum over all directed paths from x to y of the product of the path
/// coefficients along the path; 0 when no path exists.
double total_effect_paths(const PathDiagram& g, const std::string& x, const std::string& y);

/// tau_hat = b_yx.S, avar = s_yy.xS / (n s_xx.S), finite-sample variance
/// s_yy.xS / ((n - q - 3) s_xx.S). When n <= q + 3 the finite-sample
/// variance is omitted with a warning.
EstimateReport back_door_estimate(const CovarianceMatrix& sigma,
                                  const std::string& x, const std::string& y,
                                  const VariableSet& s, int n);

/// tau_hat = s_yz.T / s_xz.T; delta-method asymptotic variance
/// (s_yy.T/s_xx.T - 2 b_yx.T tau + tau^2) / (n rho_xz.T^2) with tau the
/// supplied total effect if given, else tau_hat. Throws NumericError for
/// a weak instrument (|rho_xz.T| < 1e-8).
EstimateReport conditional_iv_estimate(const CovarianceMatrix& sigma,
                                       const std::string& x, const std::string& y,
                                       const std::string& z, const VariableSet& t,
                                       int n, std::optional<double> tau = std::nullopt);

/// tau_hat = b_yZ.x . b_Zx; exact finite-sample variance
///   (1/((n-r-3) s_xx.Z) - 1/((n-3) s_xx)) s_yy.xZ
///   + (1/((n-3) s_xx)) b_yZ.x Sigma_ZZ.x b_yZ.x'
/// implemented as printed; avar is its large-n limit. Requires nonempty Z
/// and n > r + 3.
EstimateReport front_door_estimate(const CovarianceMatrix& sigma,
                                   const std::string& x, const std::string& y,
                                   const VariableSet& z, int n);

EstimateReport estimate_for(const CovarianceMatrix& sigma,
                            const std::string& x, const std::string& y,
                            const Strategy& strategy, int n,
                            std::optional<double> tau = std::nullopt);

/// One report per strategy, sorted by n_times_avar ascending, plus
/// pairwise variance ratios (worse over better, >= 1).
struct ComparisonTable {
    std::vector<EstimateReport> reports;
    /// ratios[i][j] = n_times_avar(report i) / n_times_avar(report j) for i > j.
    std::vector<std::vector<double>> ratios;
    std::vector<std::string> warnings;
};

ComparisonTable compare_estimators(const CovarianceMatrix& sigma,
                                   const std::string& x, const std::string& y,
                                   int n, const std::vector<Strategy>& strategies);

}  // namespace tec

#endif
