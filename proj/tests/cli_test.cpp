#include <fstream>
#include <functional>
#include <sstream>

#include <gtest/gtest.h>

#include "lgo/cli.hpp"

namespace lgo {
namespace {

using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  EXPECT_TRUE(in.good()) << path;
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string job_file(const std::string& name) { return slurp(std::string(LGO_JOBS_DIR) + "/" + name + ".job"); }

std::string golden(const std::string& name) { return slurp(std::string(LGO_GOLDEN_DIR) + "/" + name); }

// Same pipeline as the command-line tool: parse errors become error reports.
Report run_text(const std::string& text) {
  try {
    return run(parse_job(text));
  } catch (const Error& e) {
    return error_report(e);
  }
}

ErrorCode parse_error(const std::string& text, std::string* message = nullptr) {
  try {
    parse_job(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  return ErrorCode::kInternal;
}

const char* kMain = "f = x1^2*x2 + x2^2 + x2*x3^6 + x4^6 + x1*x3^9; group = [jf]";

TEST(ParseJob, MainExample) {
  const Job job = parse_job(kMain);
  EXPECT_EQ(job.variables, (std::vector<std::string>{"x1", "x2", "x3", "x4"}));
  EXPECT_FALSE(job.variables_given);
  EXPECT_EQ(job.f.nvars(), 4);
  EXPECT_EQ(job.f.terms().size(), 5u);
  ASSERT_EQ(job.group.size(), 1u);
  ASSERT_EQ(job.group[0].factors.size(), 1u);
  EXPECT_EQ(job.group[0].factors[0].kind, GeneratorFactor::Kind::kJf);
  EXPECT_EQ(job.command, Command::kDiamond);
  EXPECT_TRUE(job.options.verify);
}

TEST(ParseJob, QuinticClosureOrder) {
  const Job job = parse_job("f = x1^5+x2^5+x3^5+x4^5+x5^5; group = [perm(1 2), perm(2 3), jf]");
  const WeightSystem w = analyze(job.f).weights;
  const auto gens = resolve_generators(job, w);
  ASSERT_EQ(gens.size(), 3u);
  EXPECT_EQ(gens[0], GroupElement::permutation(5, {{0, 1}}));
  EXPECT_EQ(gens[1], GroupElement::permutation(5, {{1, 2}}));
  EXPECT_EQ(gens[2], make_jf(w));
  EXPECT_EQ(generate_group(gens, job.f, w).order(), 30u);
}

TEST(ParseJob, GeneratorLanguage) {
  const Job job = parse_job(
      "vars = [a, b, c]\n"
      "f = a^3 + b^3 + c^3\n"
      "group = [diag(1/3, -1/3, 5/3) * perm(1 2 3), jf*jf, SLd]\n"
      "command = symmetries\n");
  EXPECT_TRUE(job.variables_given);
  EXPECT_EQ(job.command, Command::kSymmetries);
  ASSERT_EQ(job.group.size(), 3u);
  const auto& first = job.group[0];
  ASSERT_EQ(first.factors.size(), 2u);
  EXPECT_EQ(first.factors[0].phases, (std::vector<Rational>{Rational(1, 3), Rational(2, 3), Rational(2, 3)}));
  EXPECT_EQ(first.factors[1].cycles, (std::vector<std::vector<int>>{{0, 1, 2}}));
  EXPECT_EQ(job.group[2].kind, GeneratorSpec::Kind::kDiagonalSl);

  const WeightSystem w = analyze(job.f).weights;
  const auto gens = resolve_generators(job, w);
  const GroupElement expected = GroupElement::diagonal(first.factors[0].phases) *
                                GroupElement::permutation(3, {{0, 1, 2}});
  EXPECT_EQ(gens[0], expected);
  EXPECT_EQ(gens[1], make_jf(w) * make_jf(w));
  // The diagonal SL group of a cubic Fermat in three variables has order 9 and two generators.
  EXPECT_EQ(gens.size(), 4u);
}

TEST(ParseJob, CommentsOptionsAndDefaults) {
  const Job job = parse_job(
      "# header comment\n"
      "f = x1^3 + x2^3   # trailing comment\n"
      "format = json; closure_cap = 50; verify = false\n");
  EXPECT_FALSE(job.group_given);
  EXPECT_EQ(job.options.format, OutputFormat::kJson);
  EXPECT_EQ(job.options.closure_cap, 50);
  EXPECT_FALSE(job.options.verify);
  const auto gens = resolve_generators(job, analyze(job.f).weights);
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens[0], make_jf(analyze(job.f).weights));
}

TEST(ParseJob, MultilineGroup) {
  const Job job = parse_job("f = x1^3 + x2^3 + x3^3\ngroup = [\n  perm(1 2 3),\n  jf\n]\n");
  EXPECT_EQ(job.group.size(), 2u);
}

TEST(ParseJob, ArityMismatch) {
  std::string msg;
  EXPECT_EQ(parse_error("f = x1^2*x2 + x2^2 + x2*x3^6 + x4^6 + x1*x3^9; group = [diag(1/2)]", &msg),
            ErrorCode::kArityMismatch);
  EXPECT_NE(msg.find("column 57"), std::string::npos) << msg;
  EXPECT_EQ(parse_error("f = x1^3 + x2^3; group = [perm(1 3)]"), ErrorCode::kArityMismatch);
}

TEST(ParseJob, SyntaxErrorsCarryPosition) {
  std::string msg;
  EXPECT_EQ(parse_error("f = x1^3 + x2^3\ngroup = [jf, bogus]", &msg), ErrorCode::kSyntaxError);
  EXPECT_NE(msg.find("line 2, column 14"), std::string::npos) << msg;

  EXPECT_EQ(parse_error("f = x1^3\n  colour = red", &msg), ErrorCode::kSyntaxError);
  EXPECT_NE(msg.find("line 2, column 3"), std::string::npos) << msg;

  EXPECT_EQ(parse_error("f = x1^3\nf = x2^3", &msg), ErrorCode::kSyntaxError);
  EXPECT_NE(msg.find("duplicate"), std::string::npos) << msg;

  EXPECT_EQ(parse_error("f = x1^3 +* x2"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("group = [jf]"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("f = x1^3; group = [jf"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("f = x1^3; group = jf"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("f = x1^3; command = solve"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("f = x1^3; group = [diag(1/0)]"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("f = x1^3; group = [perm()]"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("f = x1^3; group = [jf * Gd]"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("f = x1^3; vars = [x1, x1]"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("f = x1^3; verify = maybe"), ErrorCode::kSyntaxError);
}

TEST(ParseJob, MixedQuadraticRejected) {
  std::string msg;
  EXPECT_EQ(parse_error("f = x1*x2 + x1^3 + x2^3", &msg), ErrorCode::kMixedQuadratic);
  EXPECT_NE(msg.find("line 1, column 5"), std::string::npos) << msg;
}

TEST(Run, MainDiamond) {
  const Report r = run(parse_job(kMain));
  EXPECT_EQ(r.exit_code, 0);
  const auto& d = r.data;
  EXPECT_EQ(d["schema_version"], 1);
  EXPECT_EQ(d["weights"]["q"], (ordered_json{"1/4", "1/2", "1/12", "1/6"}));
  EXPECT_EQ(d["group"]["order"], 12);
  EXPECT_EQ(d["diamond"]["D"], 2);
  EXPECT_EQ(d["diamond"]["h"], (ordered_json{{1, 0, 1}, {0, 20, 0}, {1, 0, 1}}));
  EXPECT_EQ(d["diamond"]["total"], 24);
  EXPECT_EQ(d["sectors"].size(), 12u);
  EXPECT_EQ(d["sectors"][0]["mu"], 165);
  EXPECT_TRUE(d["oracle_agrees"].get<bool>());
  ASSERT_EQ(d["verification"]["checks"].size(), 6u);
  for (const auto& c : d["verification"]["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST(Run, JacobianQuintic) {
  const Report r = run_text(job_file("quintic_jacobian"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.data["mu"], 1024);
  long degree_one = -1;
  for (const auto& e : r.data["graded_dimensions"])
    if (e["degree"] == "1") degree_one = e["dimension"].get<long>();
  EXPECT_EQ(degree_one, 101);
  EXPECT_TRUE(r.data["oracle_agrees"].get<bool>());
}

TEST(Run, AnalyzeNotInvertible) {
  const Report r = run_text(job_file("f_iii"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_FALSE(r.data["classification"]["invertible"].get<bool>());
  EXPECT_TRUE(r.data["decomposition"]["star_shaped"].get<bool>());
}

TEST(Run, ErrorExitCodes) {
  EXPECT_EQ(run_text(job_file("missing_jf")).data["error"]["code"], "PreconditionFailed");
  EXPECT_EQ(run_text(job_file("missing_jf")).exit_code, 2);
  EXPECT_EQ(run_text(job_file("not_sl")).data["error"]["code"], "NotInSL");
  EXPECT_EQ(run_text(job_file("not_sl")).exit_code, 2);
  EXPECT_EQ(run_text(job_file("not_isolated")).data["error"]["code"], "NotIsolated");
  EXPECT_EQ(run_text(job_file("not_isolated")).exit_code, 1);
  EXPECT_EQ(run_text(job_file("arity")).exit_code, 1);
}

TEST(Run, NoVerifySkipsPreconditions) {
  Job job = parse_job("f = x1^3 + x2^3 + x3^3; group = [perm(1 2), jf]");
  EXPECT_EQ(run(job).data["error"]["code"], "NotInSL");
  job.options.verify = false;
  const Report r = run(job);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.data["verification"]["skipped"].get<bool>());
  EXPECT_EQ(r.data["group"]["order"], 6);
  EXPECT_EQ(r.data["diamond"]["h"], (ordered_json{{1, 0}, {0, 1}}));
}

TEST(Run, WithoutJChargesAreFractional) {
  Job job = parse_job(job_file("missing_jf"));
  job.options.verify = false;
  const Report r = run(job);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.data["error"]["code"], "NonIntegerCharge");
}

TEST(Run, ClosureCap) {
  Job job = parse_job("f = x1^5+x2^5+x3^5+x4^5+x5^5; group = [perm(1 2), perm(2 3), jf]; verify = false");
  job.options.closure_cap = 10;
  const Report r = run(job);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.data["error"]["code"], "ClosureCapExceeded");
}

class Golden : public ::testing::TestWithParam<const char*> {};

TEST_P(Golden, JsonReportMatches) {
  const std::string name = GetParam();
  const Report r = run_text(job_file(name));
  EXPECT_EQ(render(r, OutputFormat::kJson), golden(name + ".json"));
}

INSTANTIATE_TEST_SUITE_P(Jobs, Golden,
                         ::testing::Values("main", "quintic_jacobian", "f_iii", "symmetries", "arity",
                                           "mixed_quadratic", "missing_jf", "not_sl", "not_isolated"));

TEST(Golden, MainText) { EXPECT_EQ(render(run_text(job_file("main")), OutputFormat::kText), golden("main.txt")); }

TEST(Report, DeterministicBytes) {
  const std::string a = render(run_text(kMain), OutputFormat::kJson);
  const std::string b = render(run_text(kMain), OutputFormat::kJson);
  EXPECT_EQ(a, b);
}

TEST(Report, JsonRoundTrips) {
  for (const char* name : {"main", "symmetries", "f_iii"}) {
    const Report r = run_text(job_file(name));
    EXPECT_EQ(ordered_json::parse(render(r, OutputFormat::kJson)), r.data) << name;
  }
}

TEST(Report, TextCarriesTheDiamondNumbers) {
  const std::string text = render(run_text(kMain), OutputFormat::kText);
  EXPECT_NE(text.find("    1     20    1\n"), std::string::npos) << text;
  EXPECT_NE(text.find("total dimension: 24"), std::string::npos);
  EXPECT_NE(text.find("mu 165"), std::string::npos);
}

TEST(Report, ErrorReportStripsCodePrefix) {
  const Report r = error_report(Error(ErrorCode::kSyntaxError, "line 3, column 1: oops"));
  EXPECT_EQ(r.data["error"]["code"], "SyntaxError");
  EXPECT_EQ(r.data["error"]["message"], "line 3, column 1: oops");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(render_text(r.data), "error: SyntaxError: line 3, column 1: oops\n");
}

}  // namespace
}  // namespace lgo
