#include "argimpact/kv.hpp"

#include <istream>
#include <ostream>

#include "argimpact/error.hpp"
#include "argimpact/text.hpp"

namespace argimpact::kv {

void write(std::ostream& os, std::string_view key, std::string_view value) {
  os << key << '\t' << text::escape_field(value) << '\n';
}

void write(std::ostream& os, std::string_view key, double value) {
  os << key << '\t' << text::format_double(value) << '\n';
}

void write(std::ostream& os, std::string_view key, long long value) {
  os << key << '\t' << value << '\n';
}

std::vector<std::pair<std::string, std::string>> parse(std::istream& is) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = text::split_tabs(line);
    if (fields.size() != 2) {
      throw DataError("kv record line " + std::to_string(lineno) +
                      ": expected key<TAB>value");
    }
    out.emplace_back(std::string(fields[0]), text::unescape_field(fields[1]));
  }
  return out;
}

std::string get(const std::vector<std::pair<std::string, std::string>>& records,
                std::string_view key) {
  for (const auto& [k, v] : records) {
    if (k == key) return v;
  }
  return {};
}

}  // namespace argimpact::kv
