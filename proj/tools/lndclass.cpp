// Classifies a triangular or twin derivation read from a JSON file.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lndkit/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify triangular locally nilpotent derivations over a discrete valuation ring"};
  std::string input, format = "json", splitting;
  lndkit::DriverOptions opts;
  bool no_timings = false;
  app.add_option("--input", input, "derivation JSON file")->required()->check(CLI::ExistingFile);
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--splitting", splitting, "splitting data JSON file")->check(CLI::ExistingFile);
  app.add_option("--shear-budget", opts.shear_budget, "general position search bound")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", opts.max_steps, "sharp reduction step guard")->check(CLI::PositiveNumber);
  app.add_flag("--no-timings", no_timings, "omit timing fields from the JSON report");
  CLI11_PARSE(app, argc, argv);

  try {
    auto derivation = lndkit::parse_input(read_file(input));
    if (!splitting.empty()) opts.splittings = lndkit::parse_splittings(read_file(splitting));
    auto rep = lndkit::classify(derivation, opts);
    if (format == "json")
      std::cout << lndkit::report_json(rep, !no_timings).dump(2) << "\n";
    else
      std::cout << lndkit::report_text(rep);
    return 0;
  } catch (const lndkit::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const lndkit::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
