#include "tec/covariance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "tec/error.hpp"

namespace tec {

namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kPdRatio = 1e-10;
constexpr double kConditionLimit = 1e12;

Eigen::MatrixXd select(const CovarianceMatrix& sigma,
                       const std::vector<int>& rows,
                       const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(i, j) = sigma.matrix()(rows[i], cols[j]);
    return out;
}

std::vector<int> indices(const CovarianceMatrix& sigma, const VariableSet& names) {
    std::vector<int> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(sigma.index_of(n));
    return out;
}

// Solves sigma_CC X = B with a condition-number guard.
Eigen::MatrixXd solve_conditioned(const Eigen::MatrixXd& scc, const Eigen::MatrixXd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scc);
    const auto& ev = es.eigenvalues();
    double lo = ev.minCoeff();
    double hi = ev.maxCoeff();
    if (!(lo > 0.0) || hi / lo > kConditionLimit)
        throw NumericError("singular conditioning block (condition number > 1e12)");
    Eigen::MatrixXd projected = es.eigenvectors().transpose() * b;
    return es.eigenvectors() * (projected.array().colwise() / ev.array()).matrix();
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(std::vector<std::string> labels, Eigen::MatrixXd entries)
    : labels_(std::move(labels)), m_(std::move(entries)) {
    if (m_.rows() != m_.cols())
        throw Error("covariance matrix must be square");
    if (static_cast<std::size_t>(m_.rows()) != labels_.size())
        throw Error("label count does not match matrix dimension");
    std::set<std::string> distinct(labels_.begin(), labels_.end());
    if (distinct.size() != labels_.size())
        throw Error("duplicate covariance labels");

    double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol)
        throw NumericError("covariance matrix asymmetric beyond 1e-9");
    m_ = ((m_ + m_.transpose()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m_, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    double hi = es.eigenvalues().maxCoeff();
    if (!(lo > kPdRatio * hi))
        throw NumericError("covariance matrix is not positive definite");
}

CovarianceMatrix CovarianceMatrix::from_csv(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.emplace_back(line);
    }
    if (lines.empty()) throw ParseError("empty covariance CSV");

    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            auto b = cell.find_first_not_of(" \t");
            auto e = cell.find_last_not_of(" \t");
            cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        return cells;
    };

    std::vector<std::string> labels = split(lines[0]);
    std::size_t n = labels.size();
    if (lines.size() != n + 1)
        throw ParseError("expected " + std::to_string(n) + " matrix rows, got " +
                         std::to_string(lines.size() - 1));
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto cells = split(lines[i + 1]);
        if (cells.size() != n)
            throw ParseError("row has " + std::to_string(cells.size()) + " entries, expected " +
                             std::to_string(n), static_cast<int>(i + 2));
        for (std::size_t j = 0; j < n; ++j) {
            double v = 0.0;
            auto [p, ec] = std::from_chars(cells[j].data(), cells[j].data() + cells[j].size(), v);
            if (ec != std::errc{} || p != cells[j].data() + cells[j].size())
                throw ParseError("malformed number '" + cells[j] + "'", static_cast<int>(i + 2));
            m(i, j) = v;
        }
    }
    return CovarianceMatrix(std::move(labels), std::move(m));
}

std::string CovarianceMatrix::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t j = 0; j < labels_.size(); ++j) {
        if (j) out << ",";
        out << labels_[j];
    }
    out << "\n";
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        for (Eigen::Index j = 0; j < m_.cols(); ++j) {
            if (j) out << ",";
            out << m_(i, j);
        }
        out << "\n";
    }
    return out.str();
}

int CovarianceMatrix::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error("unknown variable '" + label + "'");
    return static_cast<int>(it - labels_.begin());
}

bool CovarianceMatrix::has_label(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double CovarianceMatrix::operator()(const std::string& a, const std::string& b) const {
    return m_(index_of(a), index_of(b));
}

Eigen::MatrixXd conditional_cov(const CovarianceMatrix& sigma, const VariableSet& a,
                                const VariableSet& b, const VariableSet& c) {
    if (!c.disjoint_from(a) || !c.disjoint_from(b))
        throw Error("conditioning set overlaps the target sets");
    auto ia = indices(sigma, a);
    auto ib = indices(sigma, b);
    Eigen::MatrixXd sab = select(sigma, ia, ib);
    if (c.empty()) return sab;
    auto ic = indices(sigma, c);
    Eigen::MatrixXd scc = select(sigma, ic, ic);
    Eigen::MatrixXd scb = select(sigma, ic, ib);
    Eigen::MatrixXd sac = select(sigma, ia, ic);
    return sab - sac * solve_conditioned(scc, scb);
}

double conditional_cov(const CovarianceMatrix& sigma, const std::string& a,
                       const std::string& b, const VariableSet& c) {
    return conditional_cov(sigma, VariableSet{a}, VariableSet{b}, c)(0, 0);
}

double partial_correlation(const CovarianceMatrix& sigma, const std::string& a,
                           const std::string& b, const VariableSet& c) {
    double sab = conditional_cov(sigma, a, b, c);
    double saa = conditional_cov(sigma, a, a, c);
    double sbb = conditional_cov(sigma, b, b, c);
    return sab / std::sqrt(saa * sbb);
}

Eigen::VectorXd regression_coeffs(const CovarianceMatrix& sigma, const std::string& y,
                                  const VariableSet& x, const VariableSet& c) {
    if (x.empty()) throw Error("regression needs at least one regressor");
    if (x.contains(y) || c.contains(y))
        throw Error("response overlaps regressors or conditioning set");
    Eigen::MatrixXd sxx = conditional_cov(sigma, x, x, c);
    Eigen::MatrixXd sxy = conditional_cov(sigma, x, VariableSet{y}, c);
    return solve_conditioned(sxx, sxy).col(0);
}

double regression_coeff(const CovarianceMatrix& sigma, const std::string& y,
                        const std::string& x, const VariableSet& c) {
    return regression_coeffs(sigma, y, VariableSet{x}, c)(0);
}

CovarianceMatrix implied_covariance(const PathDiagram& g) {
    std::size_t n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd d(n);
    for (const auto& arrow : g.arrows()) {
        auto coef = g.coefficient(arrow.from, arrow.to);
        if (!coef) throw Error("missing coefficient on " + arrow.from + " -> " + arrow.to);
        a(g.index_of(arrow.to), g.index_of(arrow.from)) = *coef;
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto v = g.error_variance(g.vertices()[i]);
        if (!v) throw Error("missing error variance for '" + g.vertices()[i] + "'");
        d(i) = *v;
    }
    Eigen::MatrixXd reduced = (Eigen::MatrixXd::Identity(n, n) - a).inverse();
    Eigen::MatrixXd sigma = reduced * d.asDiagonal() * reduced.transpose();
    return CovarianceMatrix(g.vertices(), std::move(sigma));
}

Lemma1Residuals lemma1_residuals(const CovarianceMatrix& sigma, const std::string& x,
                                 const std::string& y, const VariableSet& s,
                                 const VariableSet& t) {
    VariableSet xy{x, y};
    if (s.contains(x) || s.contains(y) || t.contains(x) || t.contains(y))
        throw Error("S and T must exclude x and y");
    if (!s.disjoint_from(t)) throw Error("S and T must be disjoint");

    VariableSet xs = s.unioned(x);
    Lemma1Residuals r{};

    // eq3: b_yx.S = b_yx.ST + b_yT.xS . b_Tx.S
    double lhs3 = regression_coeff(sigma, y, x, s);
    double rhs3 = regression_coeff(sigma, y, x, s.unioned(t));
    if (!t.empty()) {
        Eigen::VectorXd byt_xs = regression_coeffs(sigma, y, t, xs);
        Eigen::VectorXd btx_s(t.size());
        double sxx_s = conditional_cov(sigma, x, x, s);
        int i = 0;
        for (const auto& ti : t) btx_s(i++) = conditional_cov(sigma, ti, x, s) / sxx_s;
        rhs3 += byt_xs.dot(btx_s);
    }
    r.eq3 = lhs3 - rhs3;

    // eq4 and eq5 decompose s_yy.xS using only S.
    double syy_xs = conditional_cov(sigma, y, y, xs);
    double byx_s = regression_coeff(sigma, y, x, s);
    double rhs4 = sigma(y, y) - byx_s * byx_s * sigma(x, x);
    double rhs5 = conditional_cov(sigma, y, y, VariableSet{x});
    if (!s.empty()) {
        Eigen::VectorXd bys_x = regression_coeffs(sigma, y, s, VariableSet{x});
        Eigen::VectorXd ssx(s.size());
        int i = 0;
        for (const auto& si : s) ssx(i++) = sigma(si, x);
        Eigen::MatrixXd sss = conditional_cov(sigma, s, s, VariableSet{});
        Eigen::MatrixXd sss_x = conditional_cov(sigma, s, s, VariableSet{x});
        rhs4 -= 2.0 * byx_s * bys_x.dot(ssx) + bys_x.dot(sss * bys_x);
        rhs5 -= bys_x.dot(sss_x * bys_x);
    }
    r.eq4 = syy_xs - rhs4;
    r.eq5 = syy_xs - rhs5;
    return r;
}

}  // namespace tec
