// Machine-readable reports: JSON documents and CSV tables. Labels and
// observation indices are 1-based in every output.

#pragma once

#include "iwboost/experiments.hpp"
#include "iwboost/learnability.hpp"

#include <json.hpp>

#include <exception>
#include <iosfwd>
#include <optional>
#include <string>

namespace iwboost {

inline constexpr int kReportFormatVersion = 1;

using Json = nlohmann::ordered_json;

/// Per-epoch K_i, N_i, |A_i| and round-level alpha, eps, Z, gamma, plus
/// training/holdout error, truth-lost count and decay slopes. Wall-clock
/// time is included only when given.
Json metrics_json(const TrainRun& run, const RunConfig& config,
                  std::optional<double> seconds = std::nullopt);

Json game_json(const GameValueReport& report);
Json subset_json(const SubsetReport& report);
Json learnability_json(const IterativeReport& report, std::size_t num_labels, LabelingMode mode);

Json ms13_json(const Ms13Result& result);
Json gen_gap_json(const GenGapResult& result, const GenGapConfig& config);
Json compare_json(const CompareResult& result, const RunConfig& config);

/// Columns: epoch,k,z,z_product,misclassified.
void write_decay_csv(std::ostream& out, const DecayResult& result);
/// Columns: size,median_gap,median_train_error,median_test_error.
void write_gen_gap_csv(std::ostream& out, const GenGapResult& result);

/// One-line JSON for the diagnostic stream: error kind, message and, for
/// input errors, the line number.
std::string error_line(const std::exception& e);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace iwboost
