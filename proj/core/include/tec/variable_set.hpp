#ifndef TEC_VARIABLE_SET_HPP
#define TEC_VARIABLE_SET_HPP

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace tec {

/// A set of variable names, kept sorted and duplicate-free.
class VariableSet {
public:
    VariableSet() = default;

    VariableSet(std::initializer_list<std::string> names)
        : members_(names) {
        normalize();
    }

    explicit VariableSet(std::vector<std::string> names)
        : members_(std::move(names)) {
        normalize();
    }

    const std::vector<std::string>& members() const { return members_; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }

    bool contains(const std::string& name) const {
        return std::binary_search(members_.begin(), members_.end(), name);
    }

    bool disjoint_from(const VariableSet& other) const {
        for (const auto& m : members_)
            if (other.contains(m)) return false;
        return true;
    }

    /// True when every member of this set is also in `other`.
    bool subset_of(const VariableSet& other) const {
        for (const auto& m : members_)
            if (!other.contains(m)) return false;
        return true;
    }

    bool proper_subset_of(const VariableSet& other) const {
        return size() < other.size() && subset_of(other);
    }

    VariableSet unioned(const VariableSet& other) const {
        std::vector<std::string> out = members_;
        out.insert(out.end(), other.members_.begin(), other.members_.end());
        return VariableSet(std::move(out));
    }

    VariableSet unioned(const std::string& name) const {
        std::vector<std::string> out = members_;
        out.push_back(name);
        return VariableSet(std::move(out));
    }

    VariableSet minus(const VariableSet& other) const {
        std::vector<std::string> out;
        for (const auto& m : members_)
            if (!other.contains(m)) out.push_back(m);
        return VariableSet(std::move(out));
    }

    VariableSet intersect(const VariableSet& other) const {
        std::vector<std::string> out;
        for (const auto& m : members_)
            if (other.contains(m)) out.push_back(m);
        return VariableSet(std::move(out));
    }

    bool operator==(const VariableSet& other) const = default;

    /// Lexicographic comparison of the sorted member lists.
    bool operator<(const VariableSet& other) const {
        return members_ < other.members_;
    }

    /// "{A, B, C}" or "{}" for the empty set.
    std::string describe() const {
        std::string out = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i) out += ", ";
            out += members_[i];
        }
        out += "}";
        return out;
    }

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

private:
    void normalize() {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<std::string> members_;
};

}  // namespace tec

#endif
