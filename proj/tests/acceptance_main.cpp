#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phantom/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria and prints one line per criterion"};
  std::vector<int> ids;
  std::string scale = "full";
  int workers = phantom::default_workers();
  bool verbose = false;
  app.add_option("criteria", ids, "criterion numbers (default: all)")->check(CLI::Range(1, phantom::kCriteria));
  app.add_option("--scale", scale, "quick or full");
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "print per-configuration progress");
  CLI11_PARSE(app, argc, argv);

  const auto parsed = phantom::parse_scale(scale);
  if (!parsed) {
    std::cerr << "unknown scale '" << scale << "' (quick | full)\n";
    return 2;
  }
  if (ids.empty())
    for (int i = 1; i <= phantom::kCriteria; ++i) ids.push_back(i);

  phantom::AcceptanceOptions opt;
  opt.scale = *parsed;
  opt.workers = workers;
  if (verbose) opt.log = [](const std::string& s) { std::cout << "  " << s << std::endl; };
  phantom::AcceptanceSuite suite(opt);
  bool all = true;
  for (int id : ids) {
    const auto r = suite.run(id);
    std::cout << phantom::format_result_line(r) << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
