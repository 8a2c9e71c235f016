#include "mcchan/key_value.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "mcchan/errors.hpp"

namespace mcchan {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const KeyValue& kv, const std::string& what) {
  std::ostringstream msg;
  msg << kv.origin << ":" << kv.line << ": key '" << kv.key << "': " << what
      << " (value '" << kv.value << "')";
  throw ParseError(msg.str());
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::string_view text,
                                       std::string_view origin) {
  std::vector<KeyValue> out;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream msg;
      msg << origin << ":" << line_no << ": expected 'key = value', got '"
          << std::string(line) << "'";
      throw ParseError(msg.str());
    }
    KeyValue kv;
    kv.key = std::string(trim(line.substr(0, eq)));
    kv.value = std::string(trim(line.substr(eq + 1)));
    kv.origin = std::string(origin);
    kv.line = line_no;
    if (kv.key.empty()) fail(kv, "empty key");
    if (kv.value.empty()) fail(kv, "empty value");
    if (!seen.insert(kv.key).second) fail(kv, "duplicate key");
    out.push_back(std::move(kv));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return buf.str();
}

double parse_real(const KeyValue& kv) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(kv.value.c_str(), &end);
  if (end == kv.value.c_str() || *end != '\0')
    fail(kv, "not a number");
  if (errno == ERANGE || !std::isfinite(v)) fail(kv, "out of range");
  return v;
}

long long parse_integer(const KeyValue& kv) {
  double v = parse_real(kv);
  if (v != std::floor(v) || std::abs(v) > 9.007199254740992e15)
    fail(kv, "not an integer");
  return static_cast<long long>(v);
}

std::uint64_t parse_seed(const KeyValue& kv) {
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(kv.value.c_str(), &end, 10);
  if (end == kv.value.c_str() || *end != '\0' || kv.value[0] == '-')
    fail(kv, "not an unsigned integer");
  if (errno == ERANGE) fail(kv, "out of range");
  return static_cast<std::uint64_t>(v);
}

}  // namespace mcchan
