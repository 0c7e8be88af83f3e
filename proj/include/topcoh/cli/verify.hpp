#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "topcoh/execution.hpp"

namespace topcoh::cli {

enum class Level { Quick, Full };
enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  Execution exec = Execution::Parallel;
};

struct CheckResult {
  Status status = Status::Pass;
  std::string observed;
  std::string expected;
  std::string note;
};

struct Check {
  std::string id;      // stable across releases
  std::string title;
  std::string source;  // where the expected value comes from
  Level level = Level::Quick;
  std::function<CheckResult(const VerifyOptions&)> run;
};

struct Outcome {
  std::string id;
  std::string title;
  std::string source;
  Status status = Status::Pass;
  std::string observed;
  std::string expected;
  std::string note;
  double seconds = 0;
};

/// Every built-in check; quick checks are those with p <= 5 and n <= 3 plus
/// all formula checks.
std::vector<Check> builtin_checks();

/// Runs the checks selected by `level` (full includes quick), sorted by id.
/// A check that throws is recorded as a failure with the exception text.
std::vector<Outcome> run_checks(const std::vector<Check>& checks, Level level, const VerifyOptions& opt);

nlohmann::json outcomes_json(const std::vector<Outcome>& outcomes);

}  // namespace topcoh::cli
