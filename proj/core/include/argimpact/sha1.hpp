#pragma once

#include <string>
#include <string_view>

namespace argimpact {

/// SHA-1 of the given bytes, lowercase hex.
std::string sha1_hex(std::string_view data);

/// Git-style content hash: sha1("blob <size>\0" + data).
/// Matches `git hash-object` for regular files.
std::string git_blob_sha1(std::string_view data);

}  // namespace argimpact
