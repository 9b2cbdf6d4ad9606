#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "hansard/tsv.hpp"
#include "hansard/version.hpp"

// Every output directory gets exactly one manifest.json describing the
// run: subcommand, the full config snapshot, digests of the inputs, seed
// and tool version. The timestamp lives in its own field so that data
// outputs and the rest of the manifest stay byte-identical across
// identical runs.

namespace hansard {

// FNV-1a, 64 bit. Good enough to pin input identity in a manifest.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string digest_hex(std::string_view bytes) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

inline std::string digest_file(const std::string& path) {
  return digest_hex(tsv::read_file(path));
}

struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> config;   // flag -> value snapshot
  std::map<std::string, std::string> inputs;   // path -> digest
  std::uint64_t seed = 0;
  bool with_timestamp = true;

  std::string to_json() const {
    nlohmann::json j;
    j["tool"] = std::string(kToolName) + " " + kVersion;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["config"] = config;
    j["inputs"] = inputs;
    if (with_timestamp) {
      j["timestamp_unix_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(
              std::chrono::system_clock::now().time_since_epoch())
              .count();
    }
    return j.dump(2) + "\n";
  }

  void write(const std::string& dir) const {
    tsv::write_file(dir + "/manifest.json", to_json());
  }
};

}  // namespace hansard
