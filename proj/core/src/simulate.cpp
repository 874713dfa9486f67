#include "tec/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "tec/error.hpp"
#include "tec/rng.hpp"

namespace tec {

namespace {

Eigen::MatrixXd standard_normal_matrix(int rows, int cols, std::uint64_t seed) {
    NormalSampler rng(seed);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

double plug_in_estimate(const CovarianceMatrix& c, const std::string& x, const std::string& y,
                        const Strategy& strategy) {
    switch (strategy.kind) {
        case EstimatorKind::back_door:
            return regression_coeff(c, y, x, strategy.set);
        case EstimatorKind::conditional_iv: {
            double denom = conditional_cov(c, x, *strategy.instrument, strategy.set);
            if (std::abs(denom) < 1e-12)
                throw NumericError("vanishing sample conditional covariance");
            return conditional_cov(c, y, *strategy.instrument, strategy.set) / denom;
        }
        case EstimatorKind::front_door: {
            Eigen::VectorXd byz_x = regression_coeffs(c, y, strategy.set, VariableSet{x});
            double sxx = conditional_cov(c, x, x, {});
            Eigen::VectorXd bzx(strategy.set.size());
            int i = 0;
            for (const auto& zi : strategy.set) bzx(i++) = c(zi, x) / sxx;
            return byz_x.dot(bzx);
        }
        case EstimatorKind::path_product:
            break;
    }
    throw Error("path-product cannot be estimated from data");
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

SimulationTable run_study(const CovarianceMatrix& sigma,
                          const PathDiagram* sem,
                          const std::string& x, const std::string& y,
                          const std::vector<Strategy>& strategies,
                          const std::vector<int>& sizes, int replications,
                          std::uint64_t seed, std::ostream* raw_csv) {
    if (replications < 2) throw Error("need at least 2 replications");
    if (strategies.empty()) throw Error("no strategies given");
    if (sizes.empty()) throw Error("no sample sizes given");

    SimulationTable table;
    table.treatment = x;
    table.outcome = y;
    table.strategies = strategies;
    table.sizes = sizes;
    table.replications = replications;
    table.seed = seed;
    table.cells.assign(strategies.size(), std::vector<SimulationCell>(sizes.size()));

    if (raw_csv) *raw_csv << "strategy,n,replication,tau_hat\n";

    for (std::size_t k = 0; k < strategies.size(); ++k) {
        const Strategy& strategy = strategies[k];
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            int n = sizes[s];
            SimulationCell& cell = table.cells[k][s];

            std::vector<double> estimates;
            estimates.reserve(replications);
            for (int r = 0; r < replications; ++r) {
                std::uint64_t rep_seed = derive_seed(seed, static_cast<std::uint64_t>(n),
                                                     static_cast<std::uint64_t>(k),
                                                     static_cast<std::uint64_t>(r));
                DataTable data = sem ? sample_sem(*sem, n, rep_seed)
                                     : sample_mvn(sigma, n, rep_seed);
                try {
                    CovarianceMatrix c = sample_covariance(data);
                    double est = plug_in_estimate(c, x, y, strategy);
                    estimates.push_back(est);
                    if (raw_csv)
                        *raw_csv << strategy.describe() << "," << n << "," << r << "," << est
                                 << "\n";
                } catch (const NumericError&) {
                    ++cell.excluded;
                }
            }
            if (cell.excluded * 100 > replications)
                throw NumericError(strategy.describe() + " at n=" + std::to_string(n) +
                                   ": more than 1% of replications excluded (" +
                                   std::to_string(cell.excluded) + ")");

            double mean = 0.0;
            for (double e : estimates) mean += e;
            mean /= static_cast<double>(estimates.size());
            double ss = 0.0;
            for (double e : estimates) ss += (e - mean) * (e - mean);
            cell.mean = mean;
            cell.empirical_var = ss / static_cast<double>(estimates.size() - 1);

            double med = median(estimates);
            std::vector<double> dev;
            dev.reserve(estimates.size());
            for (double e : estimates) dev.push_back(std::abs(e - med));
            cell.mad = median(std::move(dev));

            try {
                EstimateReport analytic = estimate_for(sigma, x, y, strategy, n);
                cell.avar = analytic.avar;
                cell.finite_var = analytic.finite_var;
            } catch (const Error&) {
                cell.avar = std::numeric_limits<double>::quiet_NaN();
            }
        }
    }
    return table;
}

}  // namespace

DataTable sample_mvn(const CovarianceMatrix& sigma, int n, std::uint64_t seed) {
    if (n < 1) throw Error("sample size must be at least 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma.matrix());
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw NumericError("covariance matrix is not positive definite");
    Eigen::MatrixXd root =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();

    DataTable out;
    out.labels = sigma.labels();
    out.values = standard_normal_matrix(n, static_cast<int>(sigma.size()), seed) * root;
    return out;
}

DataTable sample_sem(const PathDiagram& g, int n, std::uint64_t seed) {
    if (n < 1) throw Error("sample size must be at least 1");
    if (!g.fully_parameterized())
        throw Error("sampling needs every coefficient and error variance");

    int p = static_cast<int>(g.vertex_count());
    Eigen::MatrixXd noise = standard_normal_matrix(n, p, seed);

    DataTable out;
    out.labels = g.vertices();
    out.values.resize(n, p);
    for (int v : g.topological_order()) {
        const std::string& name = g.vertices()[v];
        double sd = std::sqrt(*g.error_variance(name));
        Eigen::VectorXd column = noise.col(v) * sd;
        for (int parent : g.parents(v)) {
            double coef = *g.coefficient(g.vertices()[parent], name);
            column += coef * out.values.col(parent);
        }
        out.values.col(v) = column;
    }
    return out;
}

CovarianceMatrix sample_covariance(const DataTable& data) {
    int n = static_cast<int>(data.values.rows());
    if (n < 2) throw Error("need at least 2 rows for a sample covariance");
    Eigen::RowVectorXd mean = data.values.colwise().mean();
    Eigen::MatrixXd centered = data.values.rowwise() - mean;
    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
    return CovarianceMatrix(data.labels, std::move(cov));
}

SimulationTable monte_carlo_variances(const CovarianceMatrix& sigma, const std::string& x,
                                      const std::string& y,
                                      const std::vector<Strategy>& strategies,
                                      const std::vector<int>& sizes, int replications,
                                      std::uint64_t seed, std::ostream* raw_csv) {
    return run_study(sigma, nullptr, x, y, strategies, sizes, replications, seed, raw_csv);
}

SimulationTable monte_carlo_variances(const PathDiagram& g, const std::string& x,
                                      const std::string& y,
                                      const std::vector<Strategy>& strategies,
                                      const std::vector<int>& sizes, int replications,
                                      std::uint64_t seed, std::ostream* raw_csv) {
    CovarianceMatrix implied = implied_covariance(g);
    return run_study(implied, &g, x, y, strategies, sizes, replications, seed, raw_csv);
}

}  // namespace tec
