#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace argimpact::kv {

/// Machine-readable key/value record format shared by reports, manifests and
/// oracle sidecars: one `key<TAB>value` pair per line, values backslash-escaped,
/// `#` starts a comment line.
void write(std::ostream& os, std::string_view key, std::string_view value);
void write(std::ostream& os, std::string_view key, double value);
void write(std::ostream& os, std::string_view key, long long value);

/// Parses a whole stream. Order preserved; duplicate keys allowed.
std::vector<std::pair<std::string, std::string>> parse(std::istream& is);

/// First value for key, or empty string.
std::string get(const std::vector<std::pair<std::string, std::string>>& records,
                std::string_view key);

}  // namespace argimpact::kv
