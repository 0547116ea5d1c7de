#include "nestkit/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace nestkit {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["outcome"] = outcome;
  nlohmann::ordered_json m;
  for (const auto& [key, value] : metrics) m[key] = value;
  j["metrics"] = std::move(m);
  if (guaranteed) j["guaranteed"] = *guaranteed;
  j["elapsed_ms"] = elapsed_ms;
  j["version"] = std::string(kVersion);
  return j.dump();
}

}  // namespace nestkit
