#include "tec/criteria.hpp"

#include <algorithm>

#include "tec/error.hpp"

namespace tec {

namespace {

void require_distinct(const std::string& x, const std::string& y) {
    if (x == y) throw Error("treatment and outcome must be distinct");
}

void require_disjoint_from_pair(const VariableSet& set, const std::string& x,
                                const std::string& y, const char* name) {
    if (set.contains(x) || set.contains(y))
        throw Error(std::string(name) + " overlaps treatment or outcome");
}

// Subsets of `pool` with at most max_size members, by size then
// lexicographically.
std::vector<VariableSet> subsets_up_to(const VariableSet& pool, std::size_t max_size) {
    const auto& items = pool.members();
    std::vector<VariableSet> out;
    std::vector<std::string> current;
    auto dfs = [&](auto&& self, std::size_t start, std::size_t want) -> void {
        if (current.size() == want) {
            out.push_back(VariableSet(current));
            return;
        }
        for (std::size_t i = start; i < items.size(); ++i) {
            current.push_back(items[i]);
            self(self, i + 1, want);
            current.pop_back();
        }
    };
    for (std::size_t k = 0; k <= std::min(max_size, items.size()); ++k) dfs(dfs, 0, k);
    return out;
}

}  // namespace

std::string to_string(CriterionKind kind) {
    switch (kind) {
        case CriterionKind::back_door: return "back-door";
        case CriterionKind::conditional_iv: return "conditional-iv";
        case CriterionKind::front_door: return "front-door";
    }
    return "?";
}

CriterionKind criterion_from_string(const std::string& name) {
    if (name == "back-door" || name == "back_door" || name == "backdoor")
        return CriterionKind::back_door;
    if (name == "conditional-iv" || name == "conditional_iv" || name == "civ" || name == "iv")
        return CriterionKind::conditional_iv;
    if (name == "front-door" || name == "front_door" || name == "frontdoor")
        return CriterionKind::front_door;
    throw Error("unknown criterion '" + name + "'");
}

bool CriterionCertificate::valid() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const CriterionCondition& c) { return c.satisfied; });
}

std::string CriterionCertificate::describe() const {
    switch (kind) {
        case CriterionKind::back_door: return "back-door(" + primary_set.describe() + ")";
        case CriterionKind::conditional_iv:
            return "civ(" + (instrument ? *instrument : "?") + " | " +
                   (conditioning_set ? conditioning_set->describe() : "{}") + ")";
        case CriterionKind::front_door: return "front-door(" + primary_set.describe() + ")";
    }
    return "?";
}

CriterionCertificate check_back_door(const PathDiagram& g, const std::string& x,
                                     const std::string& y, const VariableSet& s,
                                     DsepEngine engine) {
    require_distinct(x, y);
    g.index_of(x);
    g.index_of(y);
    require_disjoint_from_pair(s, x, y, "adjustment set");

    CriterionCertificate cert;
    cert.kind = CriterionKind::back_door;
    cert.treatment = x;
    cert.outcome = y;
    cert.primary_set = s;

    VariableSet de_x = g.descendants(x);
    bool cond1 = s.disjoint_from(de_x);
    cert.conditions.push_back({"no member of " + s.describe() + " is a descendant of " + x, cond1});

    PathDiagram cut = g.surgery(SurgeryMode::remove_outgoing, VariableSet{x});
    bool cond2 = d_separated(cut, VariableSet{x}, VariableSet{y}, s, engine);
    cert.conditions.push_back(
        {s.describe() + " d-separates " + x + " from " + y + " with outgoing arrows of " + x +
             " removed",
         cond2});
    return cert;
}

CriterionCertificate check_conditional_iv(const PathDiagram& g, const std::string& x,
                                          const std::string& y, const std::string& z,
                                          const VariableSet& t, DsepEngine engine) {
    require_distinct(x, y);
    g.index_of(x);
    g.index_of(y);
    g.index_of(z);
    if (z == x || z == y) throw Error("instrument must differ from treatment and outcome");
    require_disjoint_from_pair(t, x, y, "conditioning set");
    if (t.contains(z)) throw Error("conditioning set overlaps the instrument");

    CriterionCertificate cert;
    cert.kind = CriterionKind::conditional_iv;
    cert.treatment = x;
    cert.outcome = y;
    cert.instrument = z;
    cert.conditioning_set = t;

    VariableSet nd_x = g.nondescendants(x);
    VariableSet nd_y = g.nondescendants(y);
    bool nd_of_x = t.subset_of(nd_x);
    bool nd_of_y = t.subset_of(nd_y);
    bool cond1 = nd_of_x && nd_of_y;
    cert.conditions.push_back(
        {t.describe() + " contains no descendant of " + x + " and none of " + y, cond1});
    if (!cond1 && (nd_of_x || nd_of_y))
        cert.notes.push_back("covariate-set condition would hold under the disjunctive reading (" +
                             t.describe() + " avoids descendants of " +
                             (nd_of_x ? x : y) + " only)");

    PathDiagram cut = g.surgery(SurgeryMode::remove_outgoing, VariableSet{x});
    bool sep_y = d_separated(cut, VariableSet{z}, VariableSet{y}, t, engine);
    bool sep_x = d_separated(cut, VariableSet{z}, VariableSet{x}, t, engine);
    cert.conditions.push_back(
        {t.describe() + " d-separates " + z + " from " + y + " with outgoing arrows of " + x +
             " removed",
         sep_y});
    cert.conditions.push_back(
        {t.describe() + " does not d-separate " + z + " from " + x + " in the same graph", !sep_x});

    // The ratio estimator equals the total effect only when every open
    // association between the instrument and the outcome leaves the
    // treatment along its outgoing arrows toward the outcome.  If the
    // instrument descends from the treatment, association can instead leave
    // the treatment toward the instrument — a route the cut graph used for
    // the two separation checks cannot see — so the ratio picks up terms
    // unrelated to the effect.  Requiring a nondescendant instrument rules
    // this out.
    bool cond4 = !g.descendants(x).contains(z);
    cert.conditions.push_back({z + " is not a descendant of " + x, cond4});
    return cert;
}

CriterionCertificate check_front_door(const PathDiagram& g, const std::string& x,
                                      const std::string& y, const VariableSet& z,
                                      DsepEngine engine) {
    require_distinct(x, y);
    g.index_of(x);
    g.index_of(y);
    require_disjoint_from_pair(z, x, y, "mediator set");

    CriterionCertificate cert;
    cert.kind = CriterionKind::front_door;
    cert.treatment = x;
    cert.outcome = y;
    cert.primary_set = z;

    PathDiagram no_into_x = g.surgery(SurgeryMode::remove_incoming, VariableSet{x});
    bool cond1 = d_separated(no_into_x, VariableSet{x}, VariableSet{y}, z, engine);
    cert.conditions.push_back(
        {z.describe() + " d-separates " + x + " from " + y + " with incoming arrows of " + x +
             " removed",
         cond1});

    // Conditions 2 and 3 rule out back-door paths into the mediator set
    // and out of it, so the surgeries remove outgoing arrows.
    PathDiagram no_out_x = g.surgery(SurgeryMode::remove_outgoing, VariableSet{x});
    bool cond2 = true;
    for (const auto& zi : z)
        cond2 = cond2 && d_separated(no_out_x, VariableSet{x}, VariableSet{zi}, {}, engine);
    cert.conditions.push_back(
        {"the empty set d-separates " + x + " from every member of " + z.describe() +
             " with outgoing arrows of " + x + " removed",
         cond2});

    bool cond3 = true;
    if (!z.empty()) {
        PathDiagram no_out_z = g.surgery(SurgeryMode::remove_outgoing, z);
        for (const auto& zi : z)
            cond3 = cond3 && d_separated(no_out_z, VariableSet{zi}, VariableSet{y},
                                         VariableSet{x}, engine);
    }
    cert.conditions.push_back(
        {x + " d-separates every member of " + z.describe() + " from " + y +
             " with outgoing arrows of the set removed",
         cond3});
    return cert;
}

std::vector<CriterionCertificate> enumerate_criterion(const PathDiagram& g, CriterionKind kind,
                                                      const std::string& x, const std::string& y,
                                                      std::size_t max_size, DsepEngine engine) {
    require_distinct(x, y);
    g.index_of(x);
    g.index_of(y);
    VariableSet xy{x, y};

    std::vector<CriterionCertificate> valid;

    auto flag_minimal_sets = [&]() {
        for (auto& cert : valid) {
            bool minimal = true;
            for (const auto& other : valid) {
                if (&other == &cert) continue;
                if (cert.instrument != other.instrument) continue;
                const VariableSet& mine = cert.conditioning_set ? *cert.conditioning_set
                                                                : cert.primary_set;
                const VariableSet& theirs = other.conditioning_set ? *other.conditioning_set
                                                                   : other.primary_set;
                if (theirs.proper_subset_of(mine)) {
                    minimal = false;
                    break;
                }
            }
            cert.minimal = minimal;
        }
    };

    switch (kind) {
        case CriterionKind::back_door: {
            VariableSet pool = g.nondescendants(x).minus(xy);
            for (const auto& s : subsets_up_to(pool, max_size)) {
                auto cert = check_back_door(g, x, y, s, engine);
                if (cert.valid()) valid.push_back(std::move(cert));
            }
            break;
        }
        case CriterionKind::conditional_iv: {
            VariableSet pool =
                g.nondescendants(x).intersect(g.nondescendants(y)).minus(xy);
            std::vector<std::string> candidates;
            for (const auto& v : g.vertices())
                if (v != x && v != y) candidates.push_back(v);
            std::sort(candidates.begin(), candidates.end());
            for (const auto& z : candidates) {
                for (const auto& t : subsets_up_to(pool.minus(VariableSet{z}), max_size)) {
                    auto cert = check_conditional_iv(g, x, y, z, t, engine);
                    if (cert.valid()) valid.push_back(std::move(cert));
                }
            }
            break;
        }
        case CriterionKind::front_door: {
            // Candidate mediators: vertices lying on a directed x -> y path.
            std::vector<std::string> mediators;
            int xi = g.index_of(x);
            int yi = g.index_of(y);
            for (const auto& v : g.vertices()) {
                if (v == x || v == y) continue;
                int vi = g.index_of(v);
                if (g.reachable(xi, vi) && g.reachable(vi, yi)) mediators.push_back(v);
            }
            for (const auto& z : subsets_up_to(VariableSet(mediators), max_size)) {
                if (z.empty()) continue;
                auto cert = check_front_door(g, x, y, z, engine);
                if (cert.valid()) valid.push_back(std::move(cert));
            }
            break;
        }
    }

    flag_minimal_sets();
    std::sort(valid.begin(), valid.end(),
              [](const CriterionCertificate& a, const CriterionCertificate& b) {
                  const std::string ai = a.instrument.value_or("");
                  const std::string bi = b.instrument.value_or("");
                  const VariableSet& as = a.conditioning_set ? *a.conditioning_set : a.primary_set;
                  const VariableSet& bs = b.conditioning_set ? *b.conditioning_set : b.primary_set;
                  return std::tuple(ai, as.size(), as.members()) <
                         std::tuple(bi, bs.size(), bs.members());
              });
    return valid;
}

}  // namespace tec
