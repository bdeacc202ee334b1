#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbx/core.hpp"
#include "pbx/extremes.hpp"

// JSON serialization of p-boxes and analysis results.
namespace pbx {

/// {"domain": [...], "lower": [...], "upper": [...], "name": ..., "description": ...}
/// Bound values are strings ("1/5", "0.2") or JSON integers; non-integer JSON
/// numbers are rejected because they are not exact. "domain" defaults to 1..n.
struct PBoxDocument {
  std::vector<std::string> domain;
  std::vector<std::string> lower;
  std::vector<std::string> upper;
  std::optional<std::string> name;
  std::optional<std::string> description;

  /// Parses the bound values and validates the p-box. Throws ParseError.
  PBoxCheck check() const;
  /// Throws ParseError or InvariantViolation.
  PBox pbox() const;
};

/// Throws Error(ParseError).
PBoxDocument parse_document(std::string_view json_text);
/// Throws Error(IOError) or Error(ParseError).
PBoxDocument load_document(const std::filesystem::path& path);

std::string document_json(const PBox& pbox, const std::optional<std::string>& name = std::nullopt);

/// Stable-key JSON listing of extreme points (F, masses, witnesses).
std::string extremes_json(const PBox& pbox, const std::vector<ExtremePoint>& extremes);
/// Reads the "F" vectors back from extremes_json output. Throws ParseError.
std::vector<StepCDF> read_extremes_json(std::string_view json_text);

std::string fan_json(const FanGraph& fan);
/// Graphviz text: one node per MESC labeled by its family and F, dashed edges
/// inside one extreme point's cone, solid edges between extreme points, and a
/// second cluster with the quotient graph on extreme points.
std::string fan_dot(const FanGraph& fan);

}  // namespace pbx
