// Versioned text model files.
//
// Every real number is written as a C99 hexadecimal float so a saved model
// reloads bit-for-bit; labels and observation indices are 1-based. The first
// two lines are always
//
//   iwboost-model
//   format_version 1
//
// followed by `algorithm tau-ks`, `algorithm samme` or `algorithm adaboost`.

#pragma once

#include "iwboost/baselines.hpp"
#include "iwboost/eliminate.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace iwboost {

inline constexpr int kModelFormatVersion = 1;

void write_model(std::ostream& out, const TrainedModel& model);
void write_model(std::ostream& out, const SammeModel& model);

using AnyModel = std::variant<TrainedModel, SammeModel>;

/// Parses a model file; throws FormatError with the offending line.
AnyModel read_model(std::istream& in);

void save_model(const std::string& path, const AnyModel& model);
AnyModel load_model(const std::string& path);

/// Prediction for either model kind.
Label predict(const AnyModel& model, std::span<const double> x);
std::size_t model_dim(const AnyModel& model);
std::size_t model_num_labels(const AnyModel& model);

/// Hexadecimal float text that round-trips exactly.
std::string hex_double(double v);

}  // namespace iwboost
