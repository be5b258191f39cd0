#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "krlip/atomic.hpp"
#include "krlip/field.hpp"
#include "krlip/measure.hpp"
#include "krlip/metric.hpp"
#include "krlip/transport.hpp"

namespace krlip::io {

using nlohmann::json;

/// Serializes with every floating value printed to 17 significant digits.
std::string dump(const json& value, int indent = 2);

json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// {"points": [...], "dist": [[...]]} or {"points": [...], "coords": [[...]],
/// "metric": "euclidean", "alpha": a}; optional "weights" as array or object.
MetricMeasureSpace parse_space(const json& j);
json space_to_json(const MetricMeasureSpace& mm);
json coords_space_to_json(const std::vector<std::vector<double>>& coords,
                          const MetricMeasureSpace& mm, std::optional<double> alpha);

/// {"mass": {"a": 1.0, ...}}; omitted points are zero, unknown ids rejected.
SignedMeasure parse_measure(const json& j, const FiniteMetricSpace& space);
json measure_to_json(const FiniteMetricSpace& space, const SignedMeasure& mu);

/// {"value": {"a": 0.0, ...}}; every point must be given.
ScalarField parse_field(const json& j, const FiniteMetricSpace& space);
json field_to_json(const FiniteMetricSpace& space, const ScalarField& f);

AtomicDecomposition parse_decomposition(const json& j, const FiniteMetricSpace& space);
json decomposition_to_json(const FiniteMetricSpace& space, const AtomicDecomposition& dec);

/// {"primal", "dual", "gap", "plan": [{"from","to","mass"}], "residual", "potential"}
json kr_result_to_json(const FiniteMetricSpace& space, const KRResult& r);

/// JSON schemas of every file format, keyed by format name.
json schemas();

}  // namespace krlip::io
