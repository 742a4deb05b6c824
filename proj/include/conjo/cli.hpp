#pragma once

// Command-line front end and batch suites.
//
// Option precedence: command-line flag, then environment variable, then
// built-in default.
//   --cap           CONJO_CAP        quotient size cap (20000; desk suite 500)
//   --exact-cap     CONJO_EXACT_CAP  largest matrix for the exact spectrum (400)
//   --tol           CONJO_TOL        spectral tolerance (1e-8)
//   --out           CONJO_OUT        output directory
//   --export        CONJO_EXPORT     json,dot,csv,matrix
//   --jobs          CONJO_JOBS       worker threads (1)
//   --cache         CONJO_CACHE      quotient cache directory
//
// Exit codes: 0 all passed, 1 a condition or lemma check failed, 2 bad
// input, 3 a size cap was exceeded, 4 output could not be written,
// 5 an internal invariant failed.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conjo/weyl.hpp"

namespace conjo {

enum class ExitCode : int {
  Ok = 0,
  ConditionFailed = 1,
  BadInput = 2,
  CapExceeded = 3,
  OutputFailed = 4,
  InvariantFailed = 5,
};

struct SpaceSpec {
  std::string type;
  std::vector<int> levi;  // I_P, 0-based

  bool operator==(const SpaceSpec&) const = default;
};

struct ExportSet {
  bool json = false;
  bool dot = false;
  bool csv = false;
  bool matrix = false;

  // Comma separated subset of json,dot,csv,matrix. Throws ParseError.
  static ExportSet parse(std::string_view text);
  bool any() const { return json || dot || csv || matrix; }
};

struct RunConfig {
  std::vector<SpaceSpec> spaces;
  std::string suite;  // empty for an explicit space list
  std::size_t cap = kDefaultQuotientCap;
  std::size_t exact_cap = 400;
  double tol = 1e-8;
  std::optional<std::filesystem::path> out;
  ExportSet exports;
  std::optional<std::filesystem::path> cache;
  unsigned jobs = 1;
  bool json_stdout = false;

  // Throws ParseError.
  void validate() const;
};

// Every proper parabolic (I_P != I) of the suite's types with |W^P| <= cap.
std::vector<SpaceSpec> suite_spaces(std::string_view name, std::size_t cap);
std::size_t suite_default_cap(std::string_view name);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (and the environment), then runs.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace conjo
