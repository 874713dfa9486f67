#ifndef TEC_GRAPH_HPP
#define TEC_GRAPH_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tec/variable_set.hpp"

namespace tec {

struct Arrow {
    std::string from;
    std::string to;
    bool operator==(const Arrow&) const = default;
};

/// Which arrows a surgery removes relative to a vertex set.
enum class SurgeryMode {
    remove_outgoing,  // arrows emerging from the set
    remove_incoming,  // arrows pointing to the set
};

/// A directed acyclic graph over named variables, optionally annotated
/// with linear structural-equation coefficients on arrows and error
/// variances on vertices.
///
/// Vertices keep first-mention order. Validation at construction rejects
/// self-loops, duplicate arrows, cycles, zero coefficients and
/// non-positive error variances.
class PathDiagram {
public:
    PathDiagram(std::vector<std::string> vertices,
                std::vector<Arrow> arrows,
                std::map<std::pair<std::string, std::string>, double> coefficients = {},
                std::map<std::string, double> error_variances = {});

    /// Parses the edge-list format: one `A -> B` or `A -> B [coef=0.8]`
    /// per line. A bare `A` or `A [var=1.0]` line declares a vertex (and
    /// optionally its error variance). `#` starts a comment; blank lines
    /// are ignored.
    static PathDiagram parse(std::string_view text);

    /// Round-trips through parse().
    std::string to_source() const;

    const std::vector<std::string>& vertices() const { return names_; }
    std::size_t vertex_count() const { return names_.size(); }
    bool has_vertex(const std::string& name) const;
    /// Throws Error for an unknown vertex.
    int index_of(const std::string& name) const;

    const std::vector<Arrow>& arrows() const { return arrows_; }
    bool has_arrow(const std::string& from, const std::string& to) const;

    std::optional<double> coefficient(const std::string& from, const std::string& to) const;
    std::optional<double> error_variance(const std::string& vertex) const;
    /// True when every arrow has a coefficient and every vertex an error variance.
    bool fully_parameterized() const;

    const std::vector<int>& parents(int v) const { return parents_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }

    /// Indices in a topological order (parents before children).
    const std::vector<int>& topological_order() const { return topo_; }

    VariableSet ancestors(const std::string& vertex) const;
    VariableSet descendants(const std::string& vertex) const;
    /// V \ (descendants(v) + {v}).
    VariableSet nondescendants(const std::string& vertex) const;

    /// Returns a copy with the arrows selected by `mode` removed. The
    /// vertex set and surviving annotations are unchanged.
    PathDiagram surgery(SurgeryMode mode, const VariableSet& x) const;

    /// All simple directed paths from x to y as vertex sequences, in
    /// lexicographic order. Throws Error once more than `path_budget`
    /// paths have been produced.
    std::vector<std::vector<std::string>> directed_paths(const std::string& x,
                                                         const std::string& y) const;

    /// True iff some directed path x -> ... -> y exists.
    bool reachable(int from, int to) const;

    static constexpr std::size_t path_budget = 10000;

private:
    void validate_and_index();
    void descendants_of(int v, std::vector<bool>& seen) const;

    std::vector<std::string> names_;
    std::map<std::string, int, std::less<>> index_;
    std::vector<Arrow> arrows_;
    std::map<std::pair<std::string, std::string>, double> coefficients_;
    std::map<std::string, double> error_variances_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
    std::vector<int> topo_;
};

}  // namespace tec

#endif
