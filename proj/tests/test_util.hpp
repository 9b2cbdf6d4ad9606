#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// Shared bits for the test binaries: scratch directories and the paths
// wired in by the build.

namespace testutil {

namespace fs = std::filesystem;

inline std::string data_dir() {
#ifdef HANSARD_DATA_DIR
  return HANSARD_DATA_DIR;
#else
  return "data";
#endif
}

inline std::string cli_path() {
#ifdef HANSARD_CLI_PATH
  return HANSARD_CLI_PATH;
#else
  return "./hansard";
#endif
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = fs::temp_directory_path() /
            ("hansard_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace testutil
