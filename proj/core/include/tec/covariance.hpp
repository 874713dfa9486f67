#ifndef TEC_COVARIANCE_HPP
#define TEC_COVARIANCE_HPP

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "tec/graph.hpp"
#include "tec/variable_set.hpp"

namespace tec {

/// Labeled symmetric positive-definite covariance (or correlation)
/// matrix. Ingest symmetrizes by averaging, rejecting asymmetry beyond
/// 1e-9, and requires the smallest eigenvalue to exceed 1e-10 times the
/// largest.
class CovarianceMatrix {
public:
    CovarianceMatrix(std::vector<std::string> labels, Eigen::MatrixXd entries);

    /// First line: comma-separated labels; following lines: matrix rows.
    static CovarianceMatrix from_csv(std::string_view text);
    std::string to_csv() const;

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    const Eigen::MatrixXd& matrix() const { return m_; }

    int index_of(const std::string& label) const;
    bool has_label(const std::string& label) const;
    double operator()(const std::string& a, const std::string& b) const;

private:
    std::vector<std::string> labels_;
    Eigen::MatrixXd m_;
};

/// Conditional covariance block via the Schur complement:
/// sigma_AB.C = sigma_AB - sigma_AC sigma_CC^-1 sigma_CB.
/// Rows follow the sorted order of `a`, columns the sorted order of `b`.
/// Throws NumericError when sigma_CC has condition number above 1e12.
Eigen::MatrixXd conditional_cov(const CovarianceMatrix& sigma,
                                const VariableSet& a,
                                const VariableSet& b,
                                const VariableSet& c);

/// sigma_ab.C for single variables.
double conditional_cov(const CovarianceMatrix& sigma,
                       const std::string& a,
                       const std::string& b,
                       const VariableSet& c);

/// rho_ab.C = sigma_ab.C / sqrt(sigma_aa.C sigma_bb.C).
double partial_correlation(const CovarianceMatrix& sigma,
                           const std::string& a,
                           const std::string& b,
                           const VariableSet& c);

/// Coefficients of the regressors X in the regression of y on X given C,
/// ordered as the sorted members of X. Singleton X reduces to
/// sigma_xy.C / sigma_xx.C.
Eigen::VectorXd regression_coeffs(const CovarianceMatrix& sigma,
                                  const std::string& y,
                                  const VariableSet& x,
                                  const VariableSet& c);

double regression_coeff(const CovarianceMatrix& sigma,
                        const std::string& y,
                        const std::string& x,
                        const VariableSet& c);

/// Covariance over the diagram's vertices implied by its structural
/// equations: (I - A)^-1 D (I - A)^-T with A holding the path
/// coefficients and D the error variances. Requires the diagram to be
/// fully parameterized.
CovarianceMatrix implied_covariance(const PathDiagram& g);

/// Left-minus-right residuals of the three regression/partial-variance
/// decomposition identities used to self-test the algebra layer:
///   eq3: b_yx.S - (b_yx.ST + b_yT.xS . b_Tx.S)
///   eq4: s_yy.xS - (s_yy - b_yx.S^2 s_xx - 2 b_yx.S b_yS.x s_Sx
///                   - b_yS.x Sigma_SS b_yS.x')
///   eq5: s_yy.xS - (s_yy.x - b_yS.x Sigma_SS.x b_yS.x')
struct Lemma1Residuals {
    double eq3;
    double eq4;
    double eq5;
};

Lemma1Residuals lemma1_residuals(const CovarianceMatrix& sigma,
                                 const std::string& x,
                                 const std::string& y,
                                 const VariableSet& s,
                                 const VariableSet& t);

}  // namespace tec

#endif
