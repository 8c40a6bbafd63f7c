#include <CLI11.hpp>
#include <iostream>

#include "indexlab/report/experiments.hpp"

using namespace indexlab;

namespace {

std::vector<long> parse_widths(const std::string& s) {
  std::vector<long> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw BadParameter("bad width list '" + s + "'");
    }
  }
  if (out.empty()) throw BadParameter("empty width list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical index-theory experiments"};
  std::string experiment, format = "json", out, widths;
  RunParams p;
  app.add_option("experiment", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  app.add_option("--symbol", p.symbol, "Laurent symbol, e.g. z^3 or [[z,0],[0,z^2]]");
  app.add_option("--trials", p.trials, "Number of random instances");
  app.add_option("--seed", p.seed, "Random seed");
  app.add_option("--N", p.N, "Grid size");
  app.add_option("--mass", p.mass, "Mass parameter (rational)");
  app.add_option("--radius", p.radius, "Truncation radius");
  app.add_option("--widths", widths, "Comma-separated band widths");
  app.add_option("--kmax", p.kmax, "Largest homology degree");
  app.add_option("--algebra", p.algebra, "field, lambda, M<n>, diag<n> or a JSON file");
  app.add_option("--ground-ring", p.ground, "field or lambda")->check(CLI::IsMember({"field", "lambda"}));
  app.add_option("--out", out, "Output path (default stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!widths.empty()) p.widths = parse_widths(widths);
    const auto report = run(experiment, p);
    emit(report, format, out);
    if (!report.all_pass()) {
      std::cerr << report.failures() << " of " << report.checks.size() << " checks failed\n";
      return 1;
    }
    return 0;
  } catch (const indexlab::error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
