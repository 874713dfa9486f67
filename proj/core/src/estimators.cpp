#include "tec/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tec/error.hpp"

namespace tec {

namespace {

constexpr double kWeakInstrument = 1e-8;

VariableSet split_names(const std::string& text) {
    std::vector<std::string> names;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        auto b = cell.find_first_not_of(" \t");
        auto e = cell.find_last_not_of(" \t");
        if (b != std::string::npos) names.push_back(cell.substr(b, e - b + 1));
    }
    return VariableSet(std::move(names));
}

}  // namespace

std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::back_door: return "back-door";
        case EstimatorKind::conditional_iv: return "conditional-iv";
        case EstimatorKind::front_door: return "front-door";
        case EstimatorKind::path_product: return "path-product";
    }
    return "?";
}

Strategy Strategy::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw Error("malformed strategy '" + text + "' (expected kind:sets)");
    std::string kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);

    Strategy s;
    if (kind == "back-door" || kind == "back_door") {
        s.kind = EstimatorKind::back_door;
        s.set = split_names(rest);
    } else if (kind == "front-door" || kind == "front_door") {
        s.kind = EstimatorKind::front_door;
        s.set = split_names(rest);
    } else if (kind == "civ" || kind == "conditional-iv" || kind == "conditional_iv") {
        s.kind = EstimatorKind::conditional_iv;
        auto bar = rest.find('|');
        std::string z = bar == std::string::npos ? rest : rest.substr(0, bar);
        auto b = z.find_first_not_of(" \t");
        auto e = z.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw Error("malformed strategy '" + text + "' (missing instrument)");
        s.instrument = z.substr(b, e - b + 1);
        s.set = bar == std::string::npos ? VariableSet{} : split_names(rest.substr(bar + 1));
    } else {
        throw Error("unknown strategy kind '" + kind + "'");
    }
    return s;
}

std::string Strategy::describe() const {
    if (kind == EstimatorKind::conditional_iv)
        return "civ(" + instrument.value_or("?") + " | " + set.describe() + ")";
    return to_string(kind) + "(" + set.describe() + ")";
}

double total_effect_paths(const PathDiagram& g, const std::string& x, const std::string& y) {
    double total = 0.0;
    for (const auto& path : g.directed_paths(x, y)) {
        double product = 1.0;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            auto coef = g.coefficient(path[i], path[i + 1]);
            if (!coef) throw Error("missing coefficient on " + path[i] + " -> " + path[i + 1]);
            product *= *coef;
        }
        total += product;
    }
    return total;
}

EstimateReport back_door_estimate(const CovarianceMatrix& sigma, const std::string& x,
                                  const std::string& y, const VariableSet& s, int n) {
    if (s.contains(x) || s.contains(y)) throw Error("adjustment set overlaps treatment or outcome");
    if (n < 1) throw Error("sample size must be positive");

    EstimateReport r;
    r.kind = EstimatorKind::back_door;
    r.treatment = x;
    r.outcome = y;
    r.set = s;
    r.n = n;
    r.set_size = s.size();

    double sxx_s = conditional_cov(sigma, x, x, s);
    double syy_xs = conditional_cov(sigma, y, y, s.unioned(x));
    r.tau_hat = regression_coeff(sigma, y, x, s);
    r.n_times_avar = syy_xs / sxx_s;
    r.avar = r.n_times_avar / n;

    int q = static_cast<int>(s.size());
    if (n > q + 3)
        r.finite_var = syy_xs / ((n - q - 3) * sxx_s);
    else
        r.warnings.push_back("finite-sample variance omitted: n <= |S| + 3");
    return r;
}

EstimateReport conditional_iv_estimate(const CovarianceMatrix& sigma, const std::string& x,
                                       const std::string& y, const std::string& z,
                                       const VariableSet& t, int n, std::optional<double> tau) {
    if (z == x || z == y) throw Error("instrument must differ from treatment and outcome");
    if (t.contains(x) || t.contains(y) || t.contains(z))
        throw Error("conditioning set overlaps treatment, outcome or instrument");
    if (n < 1) throw Error("sample size must be positive");

    EstimateReport r;
    r.kind = EstimatorKind::conditional_iv;
    r.treatment = x;
    r.outcome = y;
    r.set = t;
    r.instrument = z;
    r.n = n;
    r.set_size = t.size();

    double rho = partial_correlation(sigma, x, z, t);
    if (std::abs(rho) < kWeakInstrument)
        throw NumericError("weak instrument: |rho_xz.T| < 1e-8");

    r.tau_hat = conditional_cov(sigma, y, z, t) / conditional_cov(sigma, x, z, t);
    double tau_used = tau.value_or(r.tau_hat);
    r.tau_used = tau_used;
    r.tau_supplied = tau.has_value();

    double syy_t = conditional_cov(sigma, y, y, t);
    double sxx_t = conditional_cov(sigma, x, x, t);
    double byx_t = regression_coeff(sigma, y, x, t);
    r.n_times_avar =
        (syy_t / sxx_t - 2.0 * byx_t * tau_used + tau_used * tau_used) / (rho * rho);
    r.avar = r.n_times_avar / n;
    return r;
}

EstimateReport front_door_estimate(const CovarianceMatrix& sigma, const std::string& x,
                                   const std::string& y, const VariableSet& z, int n) {
    if (z.empty()) throw Error("front-door estimation needs a nonempty mediator set");
    if (z.contains(x) || z.contains(y)) throw Error("mediator set overlaps treatment or outcome");
    int rsize = static_cast<int>(z.size());
    if (n <= rsize + 3) throw Error("sample size too small: need n > |Z| + 3");

    EstimateReport r;
    r.kind = EstimatorKind::front_door;
    r.treatment = x;
    r.outcome = y;
    r.set = z;
    r.n = n;
    r.set_size = z.size();

    Eigen::VectorXd byz_x = regression_coeffs(sigma, y, z, VariableSet{x});
    Eigen::VectorXd bzx(z.size());
    double sxx = conditional_cov(sigma, x, x, {});
    int i = 0;
    for (const auto& zi : z) bzx(i++) = sigma(zi, x) / sxx;
    r.tau_hat = byz_x.dot(bzx);

    double sxx_z = conditional_cov(sigma, x, x, z);
    double syy_xz = conditional_cov(sigma, y, y, z.unioned(x));
    Eigen::MatrixXd szz_x = conditional_cov(sigma, z, z, VariableSet{x});
    double quad = byz_x.dot(szz_x * byz_x);

    r.finite_var = (1.0 / ((n - rsize - 3) * sxx_z) - 1.0 / ((n - 3) * sxx)) * syy_xz +
                   quad / ((n - 3) * sxx);
    r.n_times_avar = (1.0 / sxx_z - 1.0 / sxx) * syy_xz + quad / sxx;
    r.avar = r.n_times_avar / n;
    return r;
}

EstimateReport estimate_for(const CovarianceMatrix& sigma, const std::string& x,
                            const std::string& y, const Strategy& strategy, int n,
                            std::optional<double> tau) {
    switch (strategy.kind) {
        case EstimatorKind::back_door:
            return back_door_estimate(sigma, x, y, strategy.set, n);
        case EstimatorKind::conditional_iv:
            return conditional_iv_estimate(sigma, x, y, strategy.instrument.value(), strategy.set,
                                           n, tau);
        case EstimatorKind::front_door:
            return front_door_estimate(sigma, x, y, strategy.set, n);
        case EstimatorKind::path_product:
            break;
    }
    throw Error("path-product is not a covariance-based strategy");
}

ComparisonTable compare_estimators(const CovarianceMatrix& sigma, const std::string& x,
                                   const std::string& y, int n,
                                   const std::vector<Strategy>& strategies) {
    ComparisonTable table;
    for (const auto& s : strategies)
        table.reports.push_back(estimate_for(sigma, x, y, s, n));

    std::sort(table.reports.begin(), table.reports.end(),
              [](const EstimateReport& a, const EstimateReport& b) {
                  if (a.n_times_avar != b.n_times_avar) return a.n_times_avar < b.n_times_avar;
                  if (a.set_size != b.set_size) return a.set_size < b.set_size;
                  return a.set.members() < b.set.members();
              });

    // Worse-over-better ratios for every pair below the diagonal.
    table.ratios.assign(table.reports.size(), {});
    for (std::size_t i = 0; i < table.reports.size(); ++i) {
        table.ratios[i].assign(i, 0.0);
        for (std::size_t j = 0; j < i; ++j)
            table.ratios[i][j] = table.reports[i].n_times_avar / table.reports[j].n_times_avar;
    }
    for (const auto& r : table.reports)
        table.warnings.insert(table.warnings.end(), r.warnings.begin(), r.warnings.end());
    return table;
}

}  // namespace tec
