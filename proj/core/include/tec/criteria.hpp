#ifndef TEC_CRITERIA_HPP
#define TEC_CRITERIA_HPP

#include <optional>
#include <string>
#include <vector>

#include "tec/dsep.hpp"
#include "tec/graph.hpp"
#include "tec/variable_set.hpp"

namespace tec {

enum class CriterionKind { back_door, conditional_iv, front_door };

std::string to_string(CriterionKind kind);
CriterionKind criterion_from_string(const std::string& name);

struct CriterionCondition {
    std::string label;
    bool satisfied;
};

/// A verified claim that a set (or instrument/set pair) satisfies one of
/// the three identifiability criteria relative to (treatment, outcome),
/// with per-condition evidence. Valid iff every condition is satisfied.
struct CriterionCertificate {
    CriterionKind kind;
    std::string treatment;
    std::string outcome;
    /// S for back-door, Z for front-door; empty for conditional IV.
    VariableSet primary_set;
    std::optional<std::string> instrument;    // conditional IV only
    std::optional<VariableSet> conditioning_set;  // conditional IV only
    std::vector<CriterionCondition> conditions;
    std::vector<std::string> notes;
    bool minimal = false;

    bool valid() const;
    /// "back-door({S})", "civ(Z | {T})" or "front-door({M})".
    std::string describe() const;
};

CriterionCertificate check_back_door(const PathDiagram& g,
                                     const std::string& x, const std::string& y,
                                     const VariableSet& s,
                                     DsepEngine engine = DsepEngine::fast);

/// The covariate-set condition is evaluated in its conservative reading
/// (T contains no descendant of x and none of y); a certificate that
/// would pass with only one of the two gets an explanatory note.
CriterionCertificate check_conditional_iv(const PathDiagram& g,
                                          const std::string& x, const std::string& y,
                                          const std::string& z, const VariableSet& t,
                                          DsepEngine engine = DsepEngine::fast);

CriterionCertificate check_front_door(const PathDiagram& g,
                                      const std::string& x, const std::string& y,
                                      const VariableSet& z,
                                      DsepEngine engine = DsepEngine::fast);

/// All valid certificates of the given kind whose sets have at most
/// max_size members (for conditional IV: all (z, T) with |T| <= max_size),
/// searched over the criterion-specific candidate pools, ordered by
/// (instrument, set size, set) lexicographically. Minimal certificates
/// (no valid proper subset in the result) are flagged.
std::vector<CriterionCertificate> enumerate_criterion(const PathDiagram& g,
                                                      CriterionKind kind,
                                                      const std::string& x,
                                                      const std::string& y,
                                                      std::size_t max_size,
                                                      DsepEngine engine = DsepEngine::fast);

}  // namespace tec

#endif
