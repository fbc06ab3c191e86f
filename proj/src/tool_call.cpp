#include "uq/tool_call.hpp"

#include <cctype>
#include <charconv>

#include "uq/common.hpp"

namespace uq {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<double> parse_real(const std::string& tok) {
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

ToolCall parse_tool_call(const std::string& raw_text, double log_prob) {
  ToolCall call;
  call.raw_text = raw_text;
  call.log_prob = log_prob;

  std::string body = trim(raw_text);
  std::size_t open = body.find('[');
  std::size_t close = open == std::string::npos ? std::string::npos : body.find(']', open);
  if (open != std::string::npos && close != std::string::npos) {
    body = body.substr(open + 1, close - open - 1);
  }
  if (lower(trim(body)) == "null") {
    call.is_null = true;
    return call;
  }
  if (open == std::string::npos || close == std::string::npos) return call;

  std::vector<double> features;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string tok = trim(comma == std::string::npos ? body.substr(start)
                                                      : body.substr(start, comma - start));
    if (tok.empty()) return call;  // empty field: not a valid feature list
    auto value = parse_real(tok);
    if (!value) return call;
    features.push_back(*value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!features.empty()) call.parsed_features = std::move(features);
  return call;
}

std::string render_tool_output(const std::string& z_label, const std::string& tmpl) {
  std::size_t pos = tmpl.find("{}");
  require(pos != std::string::npos, "render_tool_output: template has no '{}' placeholder");
  std::string out = tmpl;
  out.replace(pos, 2, z_label);
  return out;
}

}  // namespace uq
