#ifndef TEC_DSEP_HPP
#define TEC_DSEP_HPP

#include "tec/graph.hpp"
#include "tec/variable_set.hpp"

namespace tec {

/// `fast` walks legal trails by reachability; `oracle` enumerates every
/// simple path and applies the blocking conditions literally. The two
/// must agree on every input; the oracle is the semantic authority.
enum class DsepEngine { fast, oracle };

/// True iff `given` blocks every path between every vertex of `a` and
/// every vertex of `b`. The three sets must be pairwise disjoint and
/// a, b nonempty.
bool d_separated(const PathDiagram& g,
                 const VariableSet& a,
                 const VariableSet& b,
                 const VariableSet& given,
                 DsepEngine engine = DsepEngine::fast);

}  // namespace tec

#endif
