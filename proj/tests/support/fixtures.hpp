#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

#include "cwa/kif.hpp"
#include "cwa/pipeline.hpp"

namespace cwa::testing {

inline std::filesystem::path fixture_path(const std::string& name) { return std::filesystem::path(CWA_FIXTURE_DIR) / name; }
inline std::string fixture_text(const std::string& name) { return read_file(fixture_path(name)); }
inline Ontology fixture_ontology(const std::string& name) { return load_ontology(fixture_path(name)); }
inline std::string stub(const std::string& name) { return std::string(CWA_STUB_DIR) + "/" + name; }

inline const char* const kToyChildren[] = {"Birth",     "Death",     "Breathing", "Ingesting",             "Digesting",
                                           "Replication", "Excretion", "Mating",    "RecoveringFromIllness", "LayingEggs"};

// Fresh scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      path_ = base / ("cwa-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++) + "-" + std::to_string(i));
      if (std::filesystem::create_directories(path_)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

 private:
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::filesystem::path path_;
};

}  // namespace cwa::testing
