#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nestkit {

inline constexpr std::string_view kVersion = "0.1.0";

// FNV-1a over raw bytes; the constants are fixed so digests agree on every
// platform.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

// One line per processed input, written to stderr by the CLI. Two runs on
// identical input differ only in elapsed_ms.
struct RunReport {
  std::string command;
  std::string input_digest;
  std::string outcome;
  std::vector<std::pair<std::string, long long>> metrics;  // sizes, widths, counts
  std::optional<bool> guaranteed;
  double elapsed_ms = 0.0;

  std::string to_json() const;
};

}  // namespace nestkit
