#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lgo/error.hpp"
#include "lgo/polynomial.hpp"
#include "lgo/symmetry.hpp"

namespace lgo {

enum class Command { kAnalyze, kSymmetries, kJacobian, kDiamond };
enum class OutputFormat { kText, kJson };

const char* command_name(Command c);

struct JobOptions {
  OutputFormat format = OutputFormat::kText;
  long closure_cap = 100000;
  bool verify = true;
};

/// One factor of a generator product: jf, diag(r1,...,rN) or perm(c1 c2 ...)(...).
struct GeneratorFactor {
  enum class Kind { kJf, kDiag, kPerm };
  Kind kind = Kind::kJf;
  std::vector<Rational> phases;
  std::vector<std::vector<int>> cycles;  // zero-based
};

struct GeneratorSpec {
  enum class Kind { kProduct, kMaximalDiagonal, kDiagonalSl };
  Kind kind = Kind::kProduct;
  std::vector<GeneratorFactor> factors;
  std::string text;
  int line = 0;
  int column = 0;
};

struct Job {
  std::string polynomial_text;
  std::vector<std::string> variables;
  bool variables_given = false;
  Polynomial f;
  std::vector<GeneratorSpec> group;
  bool group_given = false;
  Command command = Command::kDiamond;
  JobOptions options;
};

/// Statements `key = value` separated by newlines or ';', '#' starts a comment. Keys:
/// f, vars, group, command, and the option keys format, closure_cap, verify.
/// Throws SyntaxError (with line and column) or ArityMismatch.
Job parse_job(std::string_view text);

/// Resolves the generator specs of a job; an absent group means [jf].
std::vector<GroupElement> resolve_generators(const Job& job, const WeightSystem& w);

struct Report {
  nlohmann::ordered_json data;
  /// 0 success, 1 computation error, 2 failed precondition or verification check.
  int exit_code = 0;
};

/// Runs the job; library errors are captured into the report rather than thrown.
Report run(const Job& job);

/// Error report for failures that happen before a job exists (for example while parsing).
Report error_report(const Error& e);

int exit_code_for(ErrorCode code);

/// Text rendering of a JSON report.
std::string render_text(const nlohmann::ordered_json& report);
std::string render(const Report& report, OutputFormat format);

}  // namespace lgo
