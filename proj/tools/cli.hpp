#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "problem.hpp"

namespace rdlie::cli {

enum ExitCode : int { kSuccess = 0, kMathFailure = 1, kInputError = 2 };

/// Human-readable text plus its machine-readable mirror.
struct CommandResult {
  int exit_code = kSuccess;
  std::string text;
  nlohmann::json report = nlohmann::json::object();
};

CommandResult cmd_validate(ProblemFile const& p);

struct CohomologyOptions {
  Theory theory = Theory::RelDiff;
  std::size_t max_degree = 2;
  bool les = false;
  std::string on;   // action, operator or representation; empty picks the only candidate
};
CommandResult cmd_cohomology(ProblemFile const& p, CohomologyOptions const& o);

struct DeformOptions {
  std::string on;
  std::vector<std::string> data;               // regular 2-cochains to test; empty means all over the operator
  std::vector<std::string> equivalent;         // exactly two names, or empty
  std::size_t max_representatives = 8;
};
CommandResult cmd_deform(ProblemFile const& p, DeformOptions const& o);

struct ExtendOptions {
  std::string cocycle;
  std::string compare;   // empty compares the extension with itself
};
CommandResult cmd_extend(ProblemFile const& p, ExtendOptions const& o);

struct IntegrateOptions {
  std::string on;
  std::string grid;            // empty uses {−1, −1/2, 0, 1/2, 1}
  std::string homomorphism;    // optional functoriality check
};
CommandResult cmd_integrate(ProblemFile const& p, IntegrateOptions const& o);

/// Full command line (args[0] is the program name). Returns the exit code.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace rdlie::cli
