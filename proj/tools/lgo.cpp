#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lgo/cli.hpp"
#include "lgo/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Landau-Ginzburg orbifold B-model state spaces and Hodge diamonds"};
  std::string job_path;
  std::string format_name;
  long closure_cap = 0;
  bool no_verify = false;
  std::string output_path;
  app.add_option("job", job_path, "Job file")->required()->check(CLI::ExistingFile);
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--closure-cap", closure_cap, "Maximum group order during closure (default 100000)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-verify", no_verify, "Skip the preconditions and diamond checks");
  app.add_option("--output", output_path, "Write the report here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(job_path);
  std::stringstream buffer;
  buffer << in.rdbuf();

  lgo::Report report;
  lgo::OutputFormat format = format_name == "json" ? lgo::OutputFormat::kJson : lgo::OutputFormat::kText;
  try {
    lgo::Job job = lgo::parse_job(buffer.str());
    if (format_name.empty()) format = job.options.format;
    if (closure_cap > 0) job.options.closure_cap = closure_cap;
    if (no_verify) job.options.verify = false;
    report = lgo::run(job);
  } catch (const lgo::Error& e) {
    report = lgo::error_report(e);
  }

  const std::string text = lgo::render(report, format);
  if (output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output_path);
    if (!out) {
      std::cerr << "cannot write " << output_path << "\n";
      return 1;
    }
    out << text;
  }
  return report.exit_code;
}
