#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cdt::cli {

enum class OutputFormat { Json, Csv, Plain };

// Everything a subcommand needs, filled from the command line.
struct RunConfig {
  std::string command;     // mean, div, diversity, bhat, ...
  std::string div_kind;    // jensen, skew, bregman, omega, lehmer-bregman, jensen-bregman
  bool extended = false;

  std::string f_expr;
  std::string rho = "identity";
  std::string tau = "identity";
  std::string m_spec = "A";
  std::string n_spec = "A";
  std::string a_spec;
  std::string b_spec;
  std::string generator = "identity";
  std::optional<std::string> domain;

  std::optional<double> alpha;
  std::optional<double> omega;
  double delta = 0.0;
  double delta_prime = 0.0;

  std::vector<double> values;
  std::vector<double> weights;
  std::optional<std::string> input;
  std::optional<std::string> p_path;
  std::optional<std::string> q_path;
  std::optional<std::string> dist_path;
  bool normalize = false;
  bool trusted = false;

  std::size_t k = 2;
  std::size_t grid = 257;
  std::size_t samples = 10000;

  std::string quad_rule = "simpson";
  double abs_tol = 1e-9;
  int max_depth = 20;
  std::size_t nodes = 20;
  std::size_t panels = 16;

  std::uint64_t seed = 0;
  bool seed_from_env = false;
  bool serial = false;
  OutputFormat format = OutputFormat::Json;

  std::vector<std::string> argv;
};

// Parses and runs one command. Exit codes: 0 success, 2 usage or validation
// error, 3 numeric error reported by the library.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdt::cli
