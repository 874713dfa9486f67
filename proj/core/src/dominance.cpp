#include "tec/dominance.hpp"

#include <algorithm>
#include <cmath>

#include "tec/error.hpp"

namespace tec {

namespace {

// Empty endpoint sets make the statement vacuously true.
bool dsep_vacuous(const PathDiagram& g, const VariableSet& a, const VariableSet& b,
                  const VariableSet& z, DsepEngine engine) {
    if (a.empty() || b.empty()) return true;
    return d_separated(g, a, b, z, engine);
}

// The two Lemma 3 / Proposition 2 preconditions on (S, T). Returns
// nullopt when S and T overlap, in which case the d-separation
// statements are not well formed.
std::optional<std::vector<DominancePrecondition>> covariate_preconditions(
    const PathDiagram& g, const std::string& x, const std::string& y,
    const VariableSet& s, const VariableSet& t, DsepEngine engine) {
    if (!s.disjoint_from(t)) return std::nullopt;
    std::vector<DominancePrecondition> pre;
    bool sep1 = dsep_vacuous(g, VariableSet{x}, s, t, engine);
    pre.push_back({t.describe() + " d-separates " + x + " from " + s.describe(), sep1});
    bool sep2 = dsep_vacuous(g, t, VariableSet{y}, s.unioned(x), engine);
    pre.push_back({s.describe() + " + {" + x + "} d-separates " + t.describe() + " from " + y,
                   sep2});
    return pre;
}

bool all_hold(const std::vector<DominancePrecondition>& pre) {
    return std::all_of(pre.begin(), pre.end(),
                       [](const DominancePrecondition& p) { return p.holds; });
}

Strategy back_door_strategy(const VariableSet& s) {
    Strategy st;
    st.kind = EstimatorKind::back_door;
    st.set = s;
    return st;
}

Strategy civ_strategy(const std::string& z, const VariableSet& t) {
    Strategy st;
    st.kind = EstimatorKind::conditional_iv;
    st.instrument = z;
    st.set = t;
    return st;
}

}  // namespace

std::string to_string(DominanceBasis basis) {
    switch (basis) {
        case DominanceBasis::lemma3: return "lemma3";
        case DominanceBasis::prop1: return "prop1";
        case DominanceBasis::prop2: return "prop2";
        case DominanceBasis::numeric: return "numeric";
        case DominanceBasis::incomparable: return "incomparable";
    }
    return "?";
}

std::string DominanceVerdict::describe() const {
    if (!asserted())
        return better.describe() + " vs " + worse.describe() + ": incomparable";
    return better.describe() + " better than " + worse.describe() + " [" + to_string(basis) + "]";
}

DominanceVerdict lemma3_dominance(const PathDiagram& g, const std::string& x,
                                  const std::string& y, const VariableSet& s,
                                  const VariableSet& t, DsepEngine engine) {
    if (!check_back_door(g, x, y, s, engine).valid() ||
        !check_back_door(g, x, y, t, engine).valid())
        throw Error("lemma3 dominance requires two valid back-door sets");

    DominanceVerdict v;
    v.better = back_door_strategy(s);
    v.worse = back_door_strategy(t);

    auto pre = covariate_preconditions(g, x, y, s, t, engine);
    if (pre && all_hold(*pre)) {
        v.basis = DominanceBasis::lemma3;
        v.preconditions = *pre;
        return v;
    }
    // Try the swapped direction before giving up.
    auto swapped = covariate_preconditions(g, x, y, t, s, engine);
    if (swapped && all_hold(*swapped)) {
        v.better = back_door_strategy(t);
        v.worse = back_door_strategy(s);
        v.basis = DominanceBasis::lemma3;
        v.preconditions = *swapped;
        return v;
    }
    v.basis = DominanceBasis::incomparable;
    if (pre)
        v.preconditions = *pre;
    else
        v.preconditions.push_back({"S and T are disjoint", false});
    return v;
}

DominanceVerdict prop1_dominance(const PathDiagram& g, const std::string& x,
                                 const std::string& y, const std::string& z1,
                                 const std::string& z2, const VariableSet& t,
                                 DsepEngine engine) {
    if (!check_conditional_iv(g, x, y, z1, t, engine).valid() ||
        !check_conditional_iv(g, x, y, z2, t, engine).valid())
        throw Error("prop1 dominance requires two valid conditional IVs given T");

    DominanceVerdict v;
    v.better = civ_strategy(z1, t);
    v.worse = civ_strategy(z2, t);

    bool sep12 = d_separated(g, VariableSet{x}, VariableSet{z2}, t.unioned(z1), engine);
    if (sep12) {
        v.basis = DominanceBasis::prop1;
        v.preconditions.push_back(
            {"{" + z1 + "} + " + t.describe() + " d-separates " + x + " from " + z2, true});
        return v;
    }
    bool sep21 = d_separated(g, VariableSet{x}, VariableSet{z1}, t.unioned(z2), engine);
    if (sep21) {
        v.better = civ_strategy(z2, t);
        v.worse = civ_strategy(z1, t);
        v.basis = DominanceBasis::prop1;
        v.preconditions.push_back(
            {"{" + z2 + "} + " + t.describe() + " d-separates " + x + " from " + z1, true});
        return v;
    }
    v.basis = DominanceBasis::incomparable;
    v.preconditions.push_back(
        {"{" + z1 + "} + " + t.describe() + " d-separates " + x + " from " + z2, false});
    v.preconditions.push_back(
        {"{" + z2 + "} + " + t.describe() + " d-separates " + x + " from " + z1, false});
    return v;
}

DominanceVerdict prop2_dominance(const PathDiagram& g, const std::string& x,
                                 const std::string& y, const VariableSet& s,
                                 const std::string& z, const VariableSet& t,
                                 DsepEngine engine) {
    if (!check_back_door(g, x, y, s, engine).valid())
        throw Error("prop2 dominance requires a valid back-door set");
    if (!check_conditional_iv(g, x, y, z, t, engine).valid())
        throw Error("prop2 dominance requires a valid conditional IV");

    DominanceVerdict v;
    v.better = back_door_strategy(s);
    v.worse = civ_strategy(z, t);

    // T identical to S needs no d-separation statements.
    if (t == s) {
        v.basis = DominanceBasis::prop2;
        v.preconditions.push_back({"T is identical to S", true});
        return v;
    }

    auto pre = covariate_preconditions(g, x, y, s, t, engine);
    if (pre && all_hold(*pre)) {
        v.basis = DominanceBasis::prop2;
        v.preconditions = *pre;
        return v;
    }
    v.basis = DominanceBasis::incomparable;
    if (pre)
        v.preconditions = *pre;
    else
        v.preconditions.push_back({"S and T are disjoint", false});
    return v;
}

RecommendReport recommend(const PathDiagram& g, const std::string& x, const std::string& y,
                          std::size_t max_size, const CovarianceMatrix* sigma,
                          std::optional<int> n, DsepEngine engine) {
    RecommendReport report;

    auto add = [&](std::vector<CriterionCertificate> certs) {
        for (auto& cert : certs) {
            StrategyEvaluation eval;
            eval.strategy.set = cert.conditioning_set ? *cert.conditioning_set : cert.primary_set;
            eval.strategy.instrument = cert.instrument;
            switch (cert.kind) {
                case CriterionKind::back_door:
                    eval.strategy.kind = EstimatorKind::back_door;
                    break;
                case CriterionKind::conditional_iv:
                    eval.strategy.kind = EstimatorKind::conditional_iv;
                    break;
                case CriterionKind::front_door:
                    eval.strategy.kind = EstimatorKind::front_door;
                    break;
            }
            eval.certificate = std::move(cert);
            report.ranked.push_back(std::move(eval));
        }
    };
    add(enumerate_criterion(g, CriterionKind::back_door, x, y, max_size, engine));
    add(enumerate_criterion(g, CriterionKind::conditional_iv, x, y, max_size, engine));
    add(enumerate_criterion(g, CriterionKind::front_door, x, y, max_size, engine));

    report.identifiable = !report.ranked.empty();
    if (!report.identifiable) {
        report.warnings.push_back(
            "total effect of " + x + " on " + y +
            " is not identifiable by the back-door, conditional-IV or front-door criteria "
            "at this search size");
        return report;
    }

    if (sigma && n) {
        for (auto& eval : report.ranked) {
            try {
                eval.estimate = estimate_for(*sigma, x, y, eval.strategy, *n);
            } catch (const Error& e) {
                report.warnings.push_back(eval.strategy.describe() + ": " + e.what());
            }
        }
    }

    // Graphical rules over all applicable pairs.
    std::vector<DominanceVerdict> graphical;
    for (std::size_t i = 0; i < report.ranked.size(); ++i) {
        for (std::size_t j = i + 1; j < report.ranked.size(); ++j) {
            const Strategy& a = report.ranked[i].strategy;
            const Strategy& b = report.ranked[j].strategy;
            std::optional<DominanceVerdict> v;
            if (a.kind == EstimatorKind::back_door && b.kind == EstimatorKind::back_door)
                v = lemma3_dominance(g, x, y, a.set, b.set, engine);
            else if (a.kind == EstimatorKind::conditional_iv &&
                     b.kind == EstimatorKind::conditional_iv && a.set == b.set)
                v = prop1_dominance(g, x, y, *a.instrument, *b.instrument, a.set, engine);
            else if (a.kind == EstimatorKind::back_door &&
                     b.kind == EstimatorKind::conditional_iv)
                v = prop2_dominance(g, x, y, a.set, *b.instrument, b.set, engine);
            else if (a.kind == EstimatorKind::conditional_iv &&
                     b.kind == EstimatorKind::back_door)
                v = prop2_dominance(g, x, y, b.set, *a.instrument, a.set, engine);
            if (v && v->asserted()) graphical.push_back(std::move(*v));
        }
    }

    // Rank: numeric variance when available, otherwise by how many
    // strategies graphically dominate each one.
    auto dominated_count = [&](const Strategy& s) {
        std::size_t count = 0;
        for (const auto& v : graphical)
            if (v.worse == s) ++count;
        return count;
    };
    std::stable_sort(report.ranked.begin(), report.ranked.end(),
                     [&](const StrategyEvaluation& a, const StrategyEvaluation& b) {
                         if (a.estimate && b.estimate) {
                             double da = a.estimate->n_times_avar;
                             double db = b.estimate->n_times_avar;
                             if (std::abs(da - db) >= 1e-12) return da < db;
                         } else if (a.estimate.has_value() != b.estimate.has_value()) {
                             return a.estimate.has_value();  // failed estimates sink
                         } else if (!a.estimate) {
                             std::size_t ca = dominated_count(a.strategy);
                             std::size_t cb = dominated_count(b.strategy);
                             if (ca != cb) return ca < cb;
                         }
                         if (a.strategy.set.size() != b.strategy.set.size())
                             return a.strategy.set.size() < b.strategy.set.size();
                         return a.strategy.describe() < b.strategy.describe();
                     });

    // Report one ordering per pair: graphical basis wins, numeric fills in.
    for (std::size_t i = 0; i < report.ranked.size(); ++i) {
        for (std::size_t j = i + 1; j < report.ranked.size(); ++j) {
            const Strategy& a = report.ranked[i].strategy;
            const Strategy& b = report.ranked[j].strategy;
            auto it = std::find_if(graphical.begin(), graphical.end(),
                                   [&](const DominanceVerdict& v) {
                                       return (v.better == a && v.worse == b) ||
                                              (v.better == b && v.worse == a);
                                   });
            if (it != graphical.end()) {
                report.orderings.push_back(*it);
                continue;
            }
            if (report.ranked[i].estimate && report.ranked[j].estimate) {
                DominanceVerdict v;
                v.better = a;
                v.worse = b;
                v.basis = DominanceBasis::numeric;
                report.orderings.push_back(std::move(v));
            } else {
                DominanceVerdict v;
                v.better = a;
                v.worse = b;
                v.basis = DominanceBasis::incomparable;
                report.orderings.push_back(std::move(v));
            }
        }
    }
    return report;
}

}  // namespace tec
