#include "tec/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <sstream>

#include "tec/error.hpp"

namespace tec {

namespace {

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s, int line, const char* what) {
    s = trim(s);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(std::string("malformed ") + what + " '" + std::string(s) + "'", line);
    return value;
}

// Parses a trailing "[key=value]" annotation, returning (key, value).
std::optional<std::pair<std::string, double>> parse_annotation(std::string_view& rest, int line) {
    rest = trim(rest);
    if (rest.empty()) return std::nullopt;
    if (rest.front() != '[' || rest.back() != ']')
        throw ParseError("malformed annotation '" + std::string(rest) + "'", line);
    std::string_view inner = trim(rest.substr(1, rest.size() - 2));
    auto eq = inner.find('=');
    if (eq == std::string_view::npos)
        throw ParseError("malformed annotation '" + std::string(rest) + "'", line);
    std::string key{trim(inner.substr(0, eq))};
    double value = parse_number(inner.substr(eq + 1), line, "annotation value");
    return std::make_pair(key, value);
}

}  // namespace

PathDiagram::PathDiagram(std::vector<std::string> vertices,
                         std::vector<Arrow> arrows,
                         std::map<std::pair<std::string, std::string>, double> coefficients,
                         std::map<std::string, double> error_variances)
    : names_(std::move(vertices)),
      arrows_(std::move(arrows)),
      coefficients_(std::move(coefficients)),
      error_variances_(std::move(error_variances)) {
    validate_and_index();
}

void PathDiagram::validate_and_index() {
    index_.clear();
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!valid_name(names_[i]))
            throw Error("invalid vertex name '" + names_[i] + "'");
        if (!index_.emplace(names_[i], static_cast<int>(i)).second)
            throw Error("duplicate vertex '" + names_[i] + "'");
    }

    parents_.assign(names_.size(), {});
    children_.assign(names_.size(), {});
    std::vector<std::vector<bool>> seen(names_.size(), std::vector<bool>(names_.size(), false));
    for (const auto& a : arrows_) {
        int u = index_of(a.from);
        int v = index_of(a.to);
        if (u == v) throw Error("self-loop on '" + a.from + "'");
        if (seen[u][v]) throw Error("duplicate arrow " + a.from + " -> " + a.to);
        seen[u][v] = true;
        children_[u].push_back(v);
        parents_[v].push_back(u);
    }
    for (auto& c : children_) std::sort(c.begin(), c.end());
    for (auto& p : parents_) std::sort(p.begin(), p.end());

    // Kahn topological sort; failure means a cycle.
    std::vector<int> indeg(names_.size());
    for (std::size_t v = 0; v < names_.size(); ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::deque<int> ready;
    for (std::size_t v = 0; v < names_.size(); ++v)
        if (indeg[v] == 0) ready.push_back(static_cast<int>(v));
    topo_.clear();
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        topo_.push_back(v);
        for (int c : children_[v])
            if (--indeg[c] == 0) ready.push_back(c);
    }
    if (topo_.size() != names_.size()) throw Error("cycle detected");

    for (const auto& [arrow, value] : coefficients_) {
        if (!has_arrow(arrow.first, arrow.second))
            throw Error("coefficient on missing arrow " + arrow.first + " -> " + arrow.second);
        if (value == 0.0)
            throw Error("zero path coefficient on " + arrow.first + " -> " + arrow.second);
    }
    for (const auto& [vertex, value] : error_variances_) {
        index_of(vertex);
        if (!(value > 0.0))
            throw Error("error variance of '" + vertex + "' must be positive");
    }
}

PathDiagram PathDiagram::parse(std::string_view text) {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::map<std::pair<std::string, std::string>, double> coefficients;
    std::map<std::string, double> error_variances;

    auto mention = [&](std::string_view name, int line) {
        if (!valid_name(name))
            throw ParseError("invalid vertex name '" + std::string(name) + "'", line);
        std::string s{name};
        if (std::find(vertices.begin(), vertices.end(), s) == vertices.end())
            vertices.push_back(s);
        return s;
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto arrow_pos = line.find("->");
        if (arrow_pos == std::string_view::npos) {
            // Vertex declaration: "A" or "A [var=1.0]".
            auto sp = line.find_first_of(" \t[");
            std::string_view name = sp == std::string_view::npos ? line : line.substr(0, sp);
            std::string_view rest = sp == std::string_view::npos ? std::string_view{} : line.substr(sp);
            std::string v = mention(name, line_no);
            if (auto ann = parse_annotation(rest, line_no)) {
                if (ann->first != "var")
                    throw ParseError("unknown annotation '" + ann->first + "'", line_no);
                error_variances[v] = ann->second;
            }
            continue;
        }

        std::string_view lhs = trim(line.substr(0, arrow_pos));
        std::string_view rhs = line.substr(arrow_pos + 2);
        auto bracket = rhs.find('[');
        std::string_view to_part = trim(bracket == std::string_view::npos ? rhs : rhs.substr(0, bracket));
        std::string_view rest = bracket == std::string_view::npos ? std::string_view{} : rhs.substr(bracket);

        std::string from = mention(lhs, line_no);
        std::string to = mention(to_part, line_no);
        if (from == to) throw ParseError("self-loop on '" + from + "'", line_no);
        for (const auto& a : arrows)
            if (a.from == from && a.to == to)
                throw ParseError("duplicate arrow " + from + " -> " + to, line_no);
        arrows.push_back({from, to});
        if (auto ann = parse_annotation(rest, line_no)) {
            if (ann->first != "coef")
                throw ParseError("unknown annotation '" + ann->first + "'", line_no);
            if (ann->second == 0.0)
                throw ParseError("coefficient equal to 0 on " + from + " -> " + to, line_no);
            coefficients[{from, to}] = ann->second;
        }
    }

    try {
        return PathDiagram(std::move(vertices), std::move(arrows),
                           std::move(coefficients), std::move(error_variances));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

std::string PathDiagram::to_source() const {
    std::ostringstream out;
    out.precision(17);
    for (const auto& name : names_) {
        if (auto v = error_variance(name))
            out << name << " [var=" << *v << "]\n";
        else if (parents_[index_of(name)].empty() && children_[index_of(name)].empty())
            out << name << "\n";
    }
    for (const auto& a : arrows_) {
        out << a.from << " -> " << a.to;
        if (auto c = coefficient(a.from, a.to)) out << " [coef=" << *c << "]";
        out << "\n";
    }
    return out.str();
}

bool PathDiagram::has_vertex(const std::string& name) const {
    return index_.find(name) != index_.end();
}

int PathDiagram::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("unknown vertex '" + name + "'");
    return it->second;
}

bool PathDiagram::has_arrow(const std::string& from, const std::string& to) const {
    if (!has_vertex(from) || !has_vertex(to)) return false;
    const auto& c = children_[index_of(from)];
    return std::binary_search(c.begin(), c.end(), index_of(to));
}

std::optional<double> PathDiagram::coefficient(const std::string& from, const std::string& to) const {
    auto it = coefficients_.find({from, to});
    if (it == coefficients_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> PathDiagram::error_variance(const std::string& vertex) const {
    auto it = error_variances_.find(vertex);
    if (it == error_variances_.end()) return std::nullopt;
    return it->second;
}

bool PathDiagram::fully_parameterized() const {
    for (const auto& a : arrows_)
        if (!coefficient(a.from, a.to)) return false;
    for (const auto& v : names_)
        if (!error_variance(v)) return false;
    return true;
}

void PathDiagram::descendants_of(int v, std::vector<bool>& seen) const {
    for (int c : children_[v]) {
        if (!seen[c]) {
            seen[c] = true;
            descendants_of(c, seen);
        }
    }
}

VariableSet PathDiagram::descendants(const std::string& vertex) const {
    int v = index_of(vertex);
    std::vector<bool> seen(names_.size(), false);
    descendants_of(v, seen);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (seen[i]) out.push_back(names_[i]);
    return VariableSet(std::move(out));
}

VariableSet PathDiagram::ancestors(const std::string& vertex) const {
    int v = index_of(vertex);
    std::vector<bool> seen(names_.size(), false);
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int p : parents_[u]) {
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
        }
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (seen[i]) out.push_back(names_[i]);
    return VariableSet(std::move(out));
}

VariableSet PathDiagram::nondescendants(const std::string& vertex) const {
    VariableSet de = descendants(vertex);
    std::vector<std::string> out;
    for (const auto& name : names_)
        if (name != vertex && !de.contains(name)) out.push_back(name);
    return VariableSet(std::move(out));
}

PathDiagram PathDiagram::surgery(SurgeryMode mode, const VariableSet& x) const {
    for (const auto& name : x) index_of(name);
    std::vector<Arrow> kept;
    std::map<std::pair<std::string, std::string>, double> coef;
    for (const auto& a : arrows_) {
        bool removed = (mode == SurgeryMode::remove_outgoing) ? x.contains(a.from)
                                                              : x.contains(a.to);
        if (removed) continue;
        kept.push_back(a);
        if (auto c = coefficient(a.from, a.to)) coef[{a.from, a.to}] = *c;
    }
    return PathDiagram(names_, std::move(kept), std::move(coef), error_variances_);
}

bool PathDiagram::reachable(int from, int to) const {
    if (from == to) return true;
    std::vector<bool> seen(names_.size(), false);
    std::vector<int> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int c : children_[u]) {
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    return false;
}

std::vector<std::vector<std::string>> PathDiagram::directed_paths(const std::string& x,
                                                                  const std::string& y) const {
    int src = index_of(x);
    int dst = index_of(y);
    if (src == dst) throw Error("directed_paths requires distinct endpoints");

    // Children sorted by name so the output is lexicographic.
    std::vector<std::vector<int>> by_name(names_.size());
    for (std::size_t v = 0; v < names_.size(); ++v) {
        by_name[v] = children_[v];
        std::sort(by_name[v].begin(), by_name[v].end(),
                  [&](int a, int b) { return names_[a] < names_[b]; });
    }

    std::vector<std::vector<std::string>> paths;
    std::vector<int> current{src};
    std::vector<bool> on_path(names_.size(), false);
    on_path[src] = true;

    auto dfs = [&](auto&& self, int v) -> void {
        if (v == dst) {
            if (paths.size() >= path_budget) throw Error("path budget exceeded");
            std::vector<std::string> path;
            for (int u : current) path.push_back(names_[u]);
            paths.push_back(std::move(path));
            return;
        }
        for (int c : by_name[v]) {
            if (on_path[c]) continue;
            on_path[c] = true;
            current.push_back(c);
            self(self, c);
            current.pop_back();
            on_path[c] = false;
        }
    };
    dfs(dfs, src);
    return paths;
}

}  // namespace tec
