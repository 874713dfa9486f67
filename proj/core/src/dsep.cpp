#include "tec/dsep.hpp"

#include <array>
#include <vector>

#include "tec/error.hpp"

namespace tec {

namespace {

// open_collider[v]: v may be passed as a collider, i.e. v or one of its
// descendants is in the conditioning set.
std::vector<bool> collider_openings(const PathDiagram& g, const std::vector<bool>& in_z) {
    std::vector<bool> open(in_z);
    // Walk the topological order backwards so children are resolved first.
    const auto& topo = g.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        if (open[*it]) continue;
        for (int c : g.children(*it)) {
            if (open[c]) {
                open[*it] = true;
                break;
            }
        }
    }
    return open;
}

// Reachability over (vertex, arrival direction) states. Arrival "at head"
// means the traversed edge points into the vertex; a vertex is a collider
// on the trail exactly when both the arriving and the departing edge
// point into it.
bool connected_fast(const PathDiagram& g, const std::vector<int>& sources,
                    const std::vector<bool>& in_b, const std::vector<bool>& in_z,
                    const std::vector<bool>& open_collider) {
    std::size_t n = g.vertex_count();
    // visited[v][0]: arrived at tail, visited[v][1]: arrived at head.
    std::vector<std::array<bool, 2>> visited(n, {false, false});
    std::vector<std::pair<int, int>> stack;

    auto push = [&](int v, int at_head) {
        if (in_b[v]) return true;
        if (!visited[v][at_head]) {
            visited[v][at_head] = true;
            stack.push_back({v, at_head});
        }
        return false;
    };

    for (int s : sources) {
        // The source has no arrival edge; leave freely in both directions.
        for (int c : g.children(s))
            if (push(c, 1)) return true;
        for (int p : g.parents(s))
            if (push(p, 0)) return true;
    }

    while (!stack.empty()) {
        auto [v, at_head] = stack.back();
        stack.pop_back();

        // Depart to a child via v -> c: v is a non-collider here.
        if (!in_z[v]) {
            for (int c : g.children(v))
                if (push(c, 1)) return true;
        }
        // Depart to a parent via p -> v: v is a collider iff we arrived at head.
        bool passable = at_head ? open_collider[v] : !in_z[v];
        if (passable) {
            for (int p : g.parents(v))
                if (push(p, 0)) return true;
        }
    }
    return false;
}

// Exhaustive simple-path enumeration applying the blocking definition to
// each complete path: blocked iff it contains a non-collider in Z, or a
// collider that is not in Z and has no descendant in Z.
bool connected_oracle(const PathDiagram& g, int source,
                      const std::vector<bool>& in_b, const std::vector<bool>& in_z,
                      const std::vector<bool>& open_collider) {
    std::size_t n = g.vertex_count();
    std::vector<bool> on_path(n, false);
    std::vector<int> path{source};
    // edge_into[i]: the edge between path[i] and path[i+1] points to path[i+1].
    std::vector<bool> edge_into;
    on_path[source] = true;
    bool found = false;

    auto path_unblocked = [&]() {
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            // path[i] is a collider when both adjacent edges point into it:
            // edge_into[i-1] covers the arriving edge, !edge_into[i] the
            // departing one.
            bool collider = edge_into[i - 1] && !edge_into[i];
            if (collider) {
                if (!open_collider[path[i]]) return false;
            } else {
                if (in_z[path[i]]) return false;
            }
        }
        return true;
    };

    auto dfs = [&](auto&& self, int v) -> void {
        if (found) return;
        if (in_b[v] && path.size() > 1) {
            if (path_unblocked()) found = true;
            return;
        }
        if (in_b[v]) return;
        for (int c : g.children(v)) {
            if (on_path[c]) continue;
            on_path[c] = true;
            path.push_back(c);
            edge_into.push_back(true);
            self(self, c);
            edge_into.pop_back();
            path.pop_back();
            on_path[c] = false;
        }
        for (int p : g.parents(v)) {
            if (on_path[p]) continue;
            on_path[p] = true;
            path.push_back(p);
            edge_into.push_back(false);
            self(self, p);
            edge_into.pop_back();
            path.pop_back();
            on_path[p] = false;
        }
    };
    dfs(dfs, source);
    return found;
}

}  // namespace

bool d_separated(const PathDiagram& g, const VariableSet& a, const VariableSet& b,
                 const VariableSet& given, DsepEngine engine) {
    if (a.empty() || b.empty()) throw Error("d-separation requires nonempty endpoint sets");
    if (!a.disjoint_from(b) || !a.disjoint_from(given) || !b.disjoint_from(given))
        throw Error("overlapping sets in d-separation query");

    std::size_t n = g.vertex_count();
    std::vector<bool> in_b(n, false), in_z(n, false);
    std::vector<int> sources;
    for (const auto& name : a) sources.push_back(g.index_of(name));
    for (const auto& name : b) in_b[g.index_of(name)] = true;
    for (const auto& name : given) in_z[g.index_of(name)] = true;

    std::vector<bool> open_collider = collider_openings(g, in_z);

    if (engine == DsepEngine::fast)
        return !connected_fast(g, sources, in_b, in_z, open_collider);

    for (int s : sources)
        if (connected_oracle(g, s, in_b, in_z, open_collider)) return false;
    return true;
}

}  // namespace tec
