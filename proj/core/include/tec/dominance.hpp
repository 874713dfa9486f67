#ifndef TEC_DOMINANCE_HPP
#define TEC_DOMINANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tec/covariance.hpp"
#include "tec/criteria.hpp"
#include "tec/estimators.hpp"
#include "tec/graph.hpp"

namespace tec {

enum class DominanceBasis { lemma3, prop1, prop2, numeric, incomparable };

std::string to_string(DominanceBasis basis);

struct DominancePrecondition {
    std::string statement;
    bool holds;
};

/// An asserted ordering between two estimation strategies, or
/// `incomparable` when the graphical preconditions fail and no numeric
/// comparison was requested.
struct DominanceVerdict {
    Strategy better;
    Strategy worse;
    DominanceBasis basis = DominanceBasis::incomparable;
    std::vector<DominancePrecondition> preconditions;

    bool asserted() const { return basis != DominanceBasis::incomparable; }
    std::string describe() const;
};

/// Covariate-set rule for two back-door sets: S dominates T when T
/// d-separates x from S and S + {x} d-separates T from y. Requires both
/// sets to be valid back-door sets.
DominanceVerdict lemma3_dominance(const PathDiagram& g,
                                  const std::string& x, const std::string& y,
                                  const VariableSet& s, const VariableSet& t,
                                  DsepEngine engine = DsepEngine::fast);

/// Instrument rule for two conditional IVs sharing T: z1 dominates z2
/// when {z1} + T d-separates x from z2.
DominanceVerdict prop1_dominance(const PathDiagram& g,
                                 const std::string& x, const std::string& y,
                                 const std::string& z1, const std::string& z2,
                                 const VariableSet& t,
                                 DsepEngine engine = DsepEngine::fast);

/// Back-door versus conditional IV: back-door(S) dominates civ(z | T)
/// when T d-separates x from S and S + {x} d-separates T from y, and
/// unconditionally when T equals S.
DominanceVerdict prop2_dominance(const PathDiagram& g,
                                 const std::string& x, const std::string& y,
                                 const VariableSet& s,
                                 const std::string& z, const VariableSet& t,
                                 DsepEngine engine = DsepEngine::fast);

struct StrategyEvaluation {
    CriterionCertificate certificate;
    Strategy strategy;
    std::optional<EstimateReport> estimate;
};

/// Ranked strategies with the pairwise orderings that justify the
/// ranking. `identifiable` is false when no strategy of any kind exists.
struct RecommendReport {
    bool identifiable = false;
    std::vector<StrategyEvaluation> ranked;  // best first
    std::vector<DominanceVerdict> orderings;
    std::vector<std::string> warnings;
};

/// Enumerates every strategy up to max_size, applies the graphical rules
/// to all applicable pairs and, when a covariance matrix and sample size
/// are given, completes the order numerically.
RecommendReport recommend(const PathDiagram& g,
                          const std::string& x, const std::string& y,
                          std::size_t max_size,
                          const CovarianceMatrix* sigma = nullptr,
                          std::optional<int> n = std::nullopt,
                          DsepEngine engine = DsepEngine::fast);

}  // namespace tec

#endif
