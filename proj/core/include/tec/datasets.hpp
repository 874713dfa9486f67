#ifndef TEC_DATASETS_HPP
#define TEC_DATASETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "tec/covariance.hpp"
#include "tec/graph.hpp"

namespace tec {

/// A bundled covariance matrix, optionally with an accompanying path
/// diagram, plus provenance notes.
struct EmbeddedDataset {
    std::string name;
    CovarianceMatrix covariance;
    std::optional<PathDiagram> graph;
    std::string notes;
};

/// Available: "uai-eq7", "paint-table2", "fig1-template", "fig2-template".
EmbeddedDataset embedded_dataset(const std::string& name);

std::vector<std::string> embedded_dataset_names();

}  // namespace tec

#endif
