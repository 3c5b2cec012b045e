// Command-line front end: parse a DIMACS max-flow instance (or generate one),
// run the selected algorithm, and emit a JSON report.
//
// Exit codes: 0 success, 2 parse error, 3 algorithm failure, 4 disconnected.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "eflow/dimacs.hpp"
#include "eflow/generator.hpp"
#include "eflow/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitFail = 3;
constexpr int kExitDisconnected = 4;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate max-flow / min-cut via electrical flows"};

  std::string input_path;
  std::string algorithm = "exact";
  double epsilon = 0.1;
  double flow_value = -1.0;
  std::uint64_t seed = 1;
  bool instrument = false;
  std::string gen_spec;
  std::string output_path;
  std::string trace_path;
  std::string dump_dimacs;

  app.add_option("input", input_path, "DIMACS max-flow instance");
  app.add_option("--algorithm", algorithm, "simple | improved | cut | exact")
      ->check(CLI::IsMember({"simple", "improved", "cut", "exact"}));
  app.add_option("--epsilon", epsilon, "approximation parameter");
  app.add_option("--flow-value", flow_value, "fixed target flow value (skips binary search)");
  app.add_option("--seed", seed, "seed for --gen when the family omits one");
  app.add_flag("--instrument", instrument, "record per-iteration invariant traces");
  app.add_option("--gen", gen_spec,
                 "generate the instance instead of reading one, e.g. "
                 "er:n=30,m=60,maxcap=64,seed=7 or shortcut:k=8");
  app.add_option("--output", output_path, "write the JSON report here instead of stdout");
  app.add_option("--trace", trace_path, "JSON-lines instrumentation trace path");
  app.add_option("--dump-dimacs", dump_dimacs, "also write the instance in DIMACS format");
  CLI11_PARSE(app, argc, argv);

  std::optional<eflow::Graph> graph;
  try {
    if (!gen_spec.empty()) {
      if (gen_spec.rfind("er:", 0) == 0 && gen_spec.find("seed=") == std::string::npos)
        gen_spec += ",seed=" + std::to_string(seed);
      std::string error;
      graph = eflow::gen_from_spec(gen_spec, &error);
      if (!graph) {
        std::cerr << "error: " << error << "\n";
        return kExitParse;
      }
    } else if (!input_path.empty()) {
      auto text = read_file(input_path);
      if (!text) {
        std::cerr << "error: cannot read " << input_path << "\n";
        return kExitParse;
      }
      graph = eflow::parse_dimacs(*text);
    } else {
      std::cerr << "error: provide an input file or --gen\n";
      return kExitParse;
    }
  } catch (const eflow::ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitParse;
  }

  if (!dump_dimacs.empty()) {
    std::ofstream out(dump_dimacs);
    if (!out) {
      std::cerr << "error: cannot write " << dump_dimacs << "\n";
      return kExitParse;
    }
    out << eflow::to_dimacs(*graph);
  }

  eflow::RunConfig config;
  config.algorithm = *eflow::algorithm_from_name(algorithm);
  config.epsilon = epsilon;
  if (flow_value > 0.0) config.flow_value = flow_value;
  config.instrument = instrument;
  config.trace_path = trace_path;

  eflow::RunReport report;
  try {
    report = eflow::run(config, *graph);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitParse;
  }

  std::string json = report.to_json();
  if (output_path.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream out(output_path);
    if (!out) {
      std::cerr << "error: cannot write " << output_path << "\n";
      return kExitParse;
    }
    out << json << "\n";
  }

  switch (report.status) {
    case eflow::RunStatus::ok: return kExitOk;
    case eflow::RunStatus::algorithm_fail: return kExitFail;
    case eflow::RunStatus::disconnected: return kExitDisconnected;
  }
  return kExitOk;
}
