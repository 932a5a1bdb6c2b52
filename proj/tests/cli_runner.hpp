#pragma once

// Runs the wrlat binary as a subprocess; WRLAT_CLI_PATH is set by CMake.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace wrlat::cli {

struct Result {
  int code = -1;
  std::string out;
};

inline std::string work_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "wrlat_cli_tests";
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline std::string path(const std::string& name) { return work_dir() + "/" + name; }

inline std::string read(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write(const std::string& file, const std::string& text) { std::ofstream(file, std::ios::binary) << text; }

/// `args` is appended to the binary path verbatim (shell quoting applies).
inline Result run(const std::string& args) {
  const std::string out = path("stdout.txt");
  const std::string cmd = std::string(WRLAT_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read(out);
  return r;
}

}  // namespace wrlat::cli
