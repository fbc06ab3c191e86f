#pragma once

#include <optional>
#include <string>
#include <vector>

namespace uq {

/// A generated tool invocation: the raw emitted text, the parsed feature
/// vector when parsing succeeded, and the sequence log-probability.
/// is_null marks the no-tool entry, which bypasses invocation and carries
/// zero tool entropy.
struct ToolCall {
  std::string raw_text;
  std::optional<std::vector<double>> parsed_features;
  double log_prob = 0.0;
  bool is_null = false;

  bool parsed() const { return parsed_features.has_value(); }
};

/// Extracts the first bracketed span of comma-separated reals from raw text.
/// "[5.1, 3.5]" -> features {5.1, 3.5}. A bare or bracketed "null" marks the
/// null tool. Returns a call with empty parsed_features when no valid span
/// exists.
ToolCall parse_tool_call(const std::string& raw_text, double log_prob);

/// Substitutes the label's display string into the single "{}" placeholder.
std::string render_tool_output(const std::string& z_label, const std::string& tmpl);

}  // namespace uq
