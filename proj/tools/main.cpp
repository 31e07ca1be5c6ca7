#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hotab/cli.hpp"

namespace {

bool slurp(const std::string& path, std::string& out) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) return false;
    ss << f.rdbuf();
  }
  out = ss.str();
  return true;
}

std::vector<std::size_t> parse_schedule(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hotab: tableau prover for simple type theory with equality"};
  std::string input = "-";
  std::string mode;
  std::string fuel;
  std::string check_path;
  double timeout = 10.0;
  std::size_t max_nodes = 100000;
  std::uint64_t max_domain = hotab::Frame::kDefaultCeiling;
  hotab::RunOptions opts;

  app.add_option("input", input, "problem file, or - for standard input");
  app.add_option("--mode", mode, "stt, efo or auto (default auto)")->check(CLI::IsMember({"stt", "efo", "auto"}));
  app.add_flag("--fragment-check", opts.fragment_check, "print the fragment report and exit");
  app.add_option("--max-nodes", max_nodes, "node budget for search");
  app.add_option("--timeout", timeout, "time budget for search, in seconds");
  app.add_option("--fuel-schedule", fuel, "instantiation fuel levels, e.g. 1,2,3");
  app.add_flag("--eager-close", opts.eager_close, "close branches on s, not s and s != s");
  auto* proof_out = app.add_option("--proof-out", "write the refutation here")->type_name("PATH");
  auto* model_out = app.add_option("--model-out", "write the model here")->type_name("PATH");
  app.add_option("--check-proof", check_path, "verify a proof file instead of searching")->type_name("PATH");
  app.add_option("--max-domain", max_domain, "cardinality ceiling for function domains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : hotab::kExitInput;
  }

  if (!check_path.empty()) {
    std::string proof_text;
    if (!slurp(check_path, proof_text)) {
      std::cerr << "error: cannot read " << check_path << "\n";
      return hotab::kExitInput;
    }
    std::optional<hotab::Problem> problem;
    if (app.count("input")) {
      std::string text;
      if (!slurp(input, text)) {
        std::cerr << "error: cannot read " << input << "\n";
        return hotab::kExitInput;
      }
      try {
        problem = hotab::parse_problem(text);
      } catch (const hotab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hotab::kExitInput;
      }
    }
    return hotab::check_proof_file(proof_text, problem, std::cout, std::cerr);
  }

  if (!mode.empty()) opts.mode = mode;
  opts.max_nodes = max_nodes;
  opts.timeout_seconds = timeout;
  opts.max_domain = max_domain;
  if (!fuel.empty()) {
    try {
      opts.fuel_schedule = parse_schedule(fuel);
    } catch (const std::exception&) {
      std::cerr << "error: bad --fuel-schedule '" << fuel << "'\n";
      return hotab::kExitInput;
    }
  }
  if (*proof_out) opts.proof_out = proof_out->as<std::string>();
  if (*model_out) opts.model_out = model_out->as<std::string>();

  std::string text;
  if (!slurp(input, text)) {
    std::cerr << "error: cannot read " << input << "\n";
    return hotab::kExitInput;
  }
  return hotab::run_text(text, opts, std::cout, std::cerr);
}
