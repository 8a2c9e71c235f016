#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mcchan {

/// One `key = value` entry with its source location for diagnostics.
struct KeyValue {
  std::string key;
  std::string value;
  std::string origin;  // file name or "<string>"
  int line = 0;
};

/// Parses flat `key = value` text. `#` starts a comment (whole line or
/// trailing); blank lines are skipped. Duplicate keys are an error.
std::vector<KeyValue> parse_key_values(std::string_view text,
                                       std::string_view origin);

/// Reads a whole file; throws IoError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Numeric conversions with diagnostics naming the offending key.
/// All accept scientific notation.
double parse_real(const KeyValue& kv);
long long parse_integer(const KeyValue& kv);   // rejects non-integral values
std::uint64_t parse_seed(const KeyValue& kv);  // decimal u64

}  // namespace mcchan
