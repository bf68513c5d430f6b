// CSV datasets: a header row `f0,...,f{d-1},label`, then one observation per
// line with decimal features and a 1-based integer label.

#pragma once

#include "iwboost/core.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace iwboost {

/// |A| defaults to the largest observed label; `num_labels` may raise it.
/// Throws FormatError, LabelError or ConsistencyError with the line number.
Dataset parse_csv(std::istream& in, std::optional<std::size_t> num_labels = std::nullopt);
Dataset load_csv(const std::string& path, std::optional<std::size_t> num_labels = std::nullopt);

/// Feature rows for prediction. A trailing `label` column is accepted and
/// ignored.
struct FeatureTable {
    std::vector<double> features;
    std::size_t dim = 0;
    std::size_t rows() const noexcept { return dim ? features.size() / dim : 0; }
};
FeatureTable parse_feature_csv(std::istream& in);
FeatureTable load_feature_csv(const std::string& path);

void write_csv(std::ostream& out, const Dataset& data);
void write_predictions(std::ostream& out, const LabelVector& predictions);

}  // namespace iwboost
