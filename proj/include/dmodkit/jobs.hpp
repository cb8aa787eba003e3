#pragma once

#include <stdexcept>
#include <string>

#include "dmodkit/serialize.hpp"

namespace dmodkit {

inline constexpr const char* kToolVersion = "0.1.0";

// Malformed job input. path() names the offending field, e.g. "ring.slope".
class UsageError : public std::invalid_argument {
 public:
  UsageError(std::string path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A job is a JSON object
//   {"subcommand": "bf", "operation": "dim",
//    "ring": {"n": 1, "weights": [1], "slope": "2", "characteristic": 0},
//    "group": "cyclic-sign" | {"matrices": [...]},
//    "params": {...}, "seed": 1, "output": {"format": "json"|"csv"}}
// Missing ring fields take defaults (n inferred from the texts in params,
// unit weights, slope 2).
struct JobResult {
  Json report;       // {"tool", "version", "job", "result", "verified"}
  std::string text;  // rendered in the requested format
  int status = 0;    // 0 ok, 1 verification failure
};

// Checks the job and fills in defaults; throws UsageError.
Json validate_job(const Json& job);
JobResult run_job(const Json& job);

}  // namespace dmodkit
