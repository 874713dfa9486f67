#ifndef TEC_TESTS_ORACLES_HPP
#define TEC_TESTS_ORACLES_HPP

// Independent generators and reference implementations used to cross-check
// the library. Everything here recomputes results from first principles
// (transitive closure, precision-matrix inversion) rather than reusing the
// code under test.

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tec/graph.hpp"
#include "tec/rng.hpp"

namespace tec::testing {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() { return splitmix64(state); }

    double uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool bernoulli(double p) { return uniform() < p; }
};

/// Random DAG over V0..V(n-1): a random permutation fixes a topological
/// order and each forward pair becomes an arrow independently.
inline PathDiagram random_dag(Rng& rng, int max_vertices, double edge_prob = 0.35) {
    int n = rng.uniform_int(2, max_vertices);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);

    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));

    std::vector<Arrow> arrows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(edge_prob)) arrows.push_back({names[order[i]], names[order[j]]});
    return PathDiagram(names, arrows);
}

/// Same topology distribution, but fully parameterized: coefficients of
/// magnitude in [0.05, 1] with random sign, error variances in [0.5, 1.5].
inline PathDiagram random_sem(Rng& rng, int max_vertices, double edge_prob = 0.4) {
    PathDiagram skeleton = random_dag(rng, max_vertices, edge_prob);
    std::map<std::pair<std::string, std::string>, double> coefs;
    for (const auto& arrow : skeleton.arrows()) {
        double magnitude = rng.uniform(0.05, 1.0);
        coefs[{arrow.from, arrow.to}] = rng.bernoulli(0.5) ? magnitude : -magnitude;
    }
    std::map<std::string, double> variances;
    for (const auto& v : skeleton.vertices()) variances[v] = rng.uniform(0.5, 1.5);
    return PathDiagram(skeleton.vertices(), skeleton.arrows(), coefs, variances);
}

/// Reassigns random coefficients (magnitude in [0.05, 1], random sign) and
/// unit error variances to an existing diagram, preserving its topology.
inline PathDiagram reparameterize(Rng& rng, const PathDiagram& g) {
    std::map<std::pair<std::string, std::string>, double> coefs;
    for (const auto& arrow : g.arrows()) {
        double magnitude = rng.uniform(0.05, 1.0);
        coefs[{arrow.from, arrow.to}] = rng.bernoulli(0.5) ? magnitude : -magnitude;
    }
    std::map<std::string, double> variances;
    for (const auto& v : g.vertices()) variances[v] = 1.0;
    return PathDiagram(g.vertices(), g.arrows(), coefs, variances);
}

/// Well-conditioned random symmetric positive-definite matrix.
inline Eigen::MatrixXd random_pd(Rng& rng, int dim) {
    NormalSampler normals(rng.next());
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = normals.normal();
    return a * a.transpose() + 0.25 * dim * Eigen::MatrixXd::Identity(dim, dim);
}

/// Boolean transitive closure by Floyd-Warshall; closure[i][j] is true iff
/// a directed path i -> ... -> j exists (i != j).
inline std::vector<std::vector<bool>> reachability_closure(const PathDiagram& g) {
    int n = static_cast<int>(g.vertex_count());
    std::vector<std::vector<bool>> closure(n, std::vector<bool>(n, false));
    for (const auto& arrow : g.arrows())
        closure[g.index_of(arrow.from)][g.index_of(arrow.to)] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (closure[i][k] && closure[k][j]) closure[i][j] = true;
    return closure;
}

/// Conditional covariance block via the precision matrix of the selected
/// subvector: invert sigma over rows + given, then invert back the rows
/// block. Independent of the Schur-complement route in the library.
inline Eigen::MatrixXd precision_conditional_cov(const Eigen::MatrixXd& sigma,
                                                 const std::vector<int>& rows,
                                                 const std::vector<int>& given) {
    std::vector<int> all = rows;
    all.insert(all.end(), given.begin(), given.end());
    int m = static_cast<int>(all.size());
    Eigen::MatrixXd sub(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) sub(i, j) = sigma(all[i], all[j]);
    Eigen::MatrixXd precision = sub.inverse();
    int r = static_cast<int>(rows.size());
    return precision.topLeftCorner(r, r).inverse();
}

}  // namespace tec::testing

#endif
