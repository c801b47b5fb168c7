// qvn: command-line front end over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "qvn/qvn.h"

namespace {

struct Context {
  qvn_context* ptr = nullptr;
  Context() {
    if (qvn_context_create(&ptr) != QVN_OK) throw std::runtime_error("cannot create context");
  }
  ~Context() { qvn_context_destroy(ptr); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
};

bool read_input(const std::string& path, std::string& text) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) return false;
    buf << in.rdbuf();
  }
  text = buf.str();
  return true;
}

int emit(char* report, const std::string& output) {
  if (!report) return 0;
  const std::string text = std::string(report) + "\n";
  qvn_string_free(report);
  if (output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(output);
  if (!out) {
    std::cerr << "qvn: cannot write " << output << "\n";
    return 1;
  }
  out << text;
  return 0;
}

void print_verify_table(const std::string& report) {
  const nlohmann::json doc = nlohmann::json::parse(report);
  std::printf("%-10s %-24s %7s %7s %14s %10s\n", "module", "property", "passed", "failed", "worst", "threshold");
  for (const auto& p : doc.at("properties")) {
    const auto& w = p.at("worst_residual");
    const std::string worst = w.is_string() ? w.get<std::string>() : [&] {
      char b[32];
      std::snprintf(b, sizeof b, "%.3e", w.get<double>());
      return std::string(b);
    }();
    std::printf("%-10s %-24s %7d %7d %14s %10.1e\n", p.at("module").get<std::string>().c_str(),
                p.at("name").get<std::string>().c_str(), p.at("passed").get<int>(), p.at("failed").get<int>(),
                worst.c_str(), p.at("threshold").get<double>());
  }
  for (const auto& w : doc.at("warnings")) std::fprintf(stderr, "warning: %s\n", w.get<std::string>().c_str());
  std::printf("%s in %.1f s\n", doc.at("ok").get<bool>() ? "all properties passed" : "FAILED",
              doc.at("seconds").get<double>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic operator-algebra toolkit"};
  app.require_subcommand(1);

  double tol = 1e-10;
  double rank_eps = 1e-12;
  std::uint64_t seed = 20240611;
  app.add_option("--tol", tol, "Predicate tolerance")->envname("QVN_TOL")->check(CLI::PositiveNumber);
  app.add_option("--rank-eps", rank_eps, "Subspace rank threshold")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Random seed");

  std::string input;
  std::string output;
  const std::pair<const char*, const char*> commands[] = {
      {"classify", "Type of the algebra generated by a matrix list"},
      {"commutant", "Real basis of the commutant of a matrix list"},
      {"spectral", "Spectral resolution of a self-adjoint matrix"},
      {"polar", "Polar decomposition with its contract checks"},
      {"reduce", "Reduce a unitary family with generator H0 to a complex model"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", input, "JSON document, or - for stdin")->required();
    sub->add_option("-o,--output", output, "Write the report here instead of stdout");
  }
  CLI::App* verify = app.add_subcommand("verify", "Run the property suite");
  std::string dims = "1..6";
  int trials = 10;
  bool as_json = false;
  verify->add_option("--dims", dims, "Dimension range lo..hi");
  verify->add_option("--trials", trials, "Trials per property and dimension")->check(CLI::NonNegativeNumber);
  verify->add_flag("--json", as_json, "Print the JSON report");
  verify->add_option("-o,--output", output, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return QVN_ERR_INVALID_ARGUMENT;
  }

  Context ctx;
  if (qvn_context_set_tolerance(ctx.ptr, tol) != QVN_OK || qvn_context_set_rank_eps(ctx.ptr, rank_eps) != QVN_OK) {
    std::cerr << "qvn: " << qvn_context_last_error(ctx.ptr) << "\n";
    return QVN_ERR_INVALID_ARGUMENT;
  }
  qvn_context_set_seed(ctx.ptr, seed);

  if (verify->parsed()) {
    std::smatch m;
    static const std::regex range(R"((\d+)\.\.(\d+)|(\d+))");
    if (!std::regex_match(dims, m, range)) {
      std::cerr << "qvn: --dims expects lo..hi\n";
      return QVN_ERR_INVALID_ARGUMENT;
    }
    const int lo = std::stoi(m[1].matched ? m[1].str() : m[3].str());
    const int hi = std::stoi(m[2].matched ? m[2].str() : m[3].str());
    char* report = nullptr;
    const qvn_status st = qvn_verify(ctx.ptr, lo, hi, trials, &report);
    if (!report) {
      std::cerr << "qvn: " << qvn_status_string(st) << ": " << qvn_context_last_error(ctx.ptr) << "\n";
      return st;
    }
    if (as_json || !output.empty()) {
      if (emit(report, output) != 0) return QVN_ERR_INVALID_ARGUMENT;
    } else {
      print_verify_table(report);
      qvn_string_free(report);
    }
    return st;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string text;
  if (!read_input(input, text)) {
    std::cerr << "qvn: cannot read " << input << "\n";
    return QVN_ERR_INVALID_ARGUMENT;
  }
  char* report = nullptr;
  const qvn_status st = qvn_run_command(ctx.ptr, sub->get_name().c_str(), text.c_str(), &report);
  if (st != QVN_OK) std::cerr << "qvn: " << qvn_status_string(st) << ": " << qvn_context_last_error(ctx.ptr) << "\n";
  if (emit(report, output) != 0) return QVN_ERR_INVALID_ARGUMENT;
  return st;
}
