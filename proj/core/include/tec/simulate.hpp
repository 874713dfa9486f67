#ifndef TEC_SIMULATE_HPP
#define TEC_SIMULATE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tec/covariance.hpp"
#include "tec/estimators.hpp"
#include "tec/graph.hpp"

namespace tec {

/// n rows of jointly sampled values, columns labeled.
struct DataTable {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;  // n x p
};

/// Independent N(0, sigma) rows via the symmetric square root of sigma.
/// Deterministic for a fixed seed.
DataTable sample_mvn(const CovarianceMatrix& sigma, int n, std::uint64_t seed);

/// Ancestral sampling of a fully parameterized structural equation model
/// in topological order.
DataTable sample_sem(const PathDiagram& g, int n, std::uint64_t seed);

/// Sample covariance with the n-1 divisor.
CovarianceMatrix sample_covariance(const DataTable& data);

struct SimulationCell {
    double empirical_var = 0.0;
    double mean = 0.0;
    /// Median absolute deviation; ratio estimators are heavy-tailed at
    /// small n, so the table carries a robust spread column as well.
    double mad = 0.0;
    std::optional<double> finite_var;
    double avar = 0.0;
    int excluded = 0;
};

struct SimulationTable {
    std::string treatment;
    std::string outcome;
    std::vector<Strategy> strategies;
    std::vector<int> sizes;
    /// cells[strategy][size]
    std::vector<std::vector<SimulationCell>> cells;
    int replications = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo study of the plug-in total-effect estimators: for each
/// (strategy, size) cell, `replications` independent datasets are drawn
/// from sigma, the estimator is recomputed from each sample covariance,
/// and the empirical variance is recorded next to the analytic
/// finite-sample and asymptotic variances. Replication r of cell (k, s)
/// uses a seed derived from (seed, s, k, r), so results do not depend on
/// execution order. Replications with singular sample blocks are
/// excluded and counted; a cell aborts with an error when more than 1%
/// are excluded. `raw_csv`, when given, receives one
/// "strategy,n,replication,tau_hat" row per replication.
SimulationTable monte_carlo_variances(const CovarianceMatrix& sigma,
                                      const std::string& x, const std::string& y,
                                      const std::vector<Strategy>& strategies,
                                      const std::vector<int>& sizes,
                                      int replications, std::uint64_t seed,
                                      std::ostream* raw_csv = nullptr);

/// Same study but sampling the structural equations directly; analytic
/// columns use the implied covariance.
SimulationTable monte_carlo_variances(const PathDiagram& g,
                                      const std::string& x, const std::string& y,
                                      const std::vector<Strategy>& strategies,
                                      const std::vector<int>& sizes,
                                      int replications, std::uint64_t seed,
                                      std::ostream* raw_csv = nullptr);

}  // namespace tec

#endif
