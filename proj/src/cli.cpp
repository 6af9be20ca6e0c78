#include "cdt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "cdt/bhattacharyya.hpp"
#include "cdt/centroids.hpp"
#include "cdt/convexity.hpp"
#include "cdt/divergences.hpp"
#include "cdt/error.hpp"
#include "cdt/expectations.hpp"
#include "cdt/expr.hpp"
#include "cdt/means.hpp"
#include "cdt/random.hpp"

namespace cdt::cli {

namespace {

using json = nlohmann::json;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json result = json::object();
  std::vector<std::string> warnings;
  json specs = json::object();
};

ExecutionPolicy policy_of(const RunConfig& cfg) {
  return cfg.serial ? ExecutionPolicy::Serial : ExecutionPolicy::Parallel;
}

double parse_number(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
  if (used == 0 || used != token.size())
    throw ParseError(0, {"number"}, "line " + std::to_string(line) + ": cannot read '" + token + "' as a number");
  return v;
}

// One value per line, optional second column weight.
void read_csv(const std::string& path, std::vector<double>& values, std::vector<double>& weights) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::string line;
  std::size_t number = 0;
  bool any_weight = false;
  bool all_weight = true;
  std::vector<double> w;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line.erase(0, first);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      values.push_back(parse_number(line, number));
      all_weight = false;
    } else {
      std::string a = line.substr(0, comma);
      std::string b = line.substr(comma + 1);
      a.erase(a.find_last_not_of(" \t") + 1);
      b.erase(0, b.find_first_not_of(" \t"));
      values.push_back(parse_number(a, number));
      w.push_back(parse_number(b, number));
      any_weight = true;
    }
  }
  if (any_weight && !all_weight) throw ValidationError(path + ": either every line or no line carries a weight");
  if (any_weight) weights = std::move(w);
}

// Values and weights from positionals, --weights or --input; weights are
// normalized with a warning when they do not sum to 1.
std::pair<std::vector<double>, std::vector<double>> load_points(const RunConfig& cfg, Outcome& outcome) {
  std::vector<double> values = cfg.values;
  std::vector<double> weights = cfg.weights;
  if (cfg.input) {
    if (!values.empty()) throw ValidationError("give points either as arguments or through --input, not both");
    read_csv(*cfg.input, values, weights);
  }
  if (values.empty()) throw ValidationError("no input points");
  if (weights.empty()) weights.assign(values.size(), 1.0 / static_cast<double>(values.size()));
  if (weights.size() != values.size())
    throw ValidationError(std::to_string(values.size()) + " points but " + std::to_string(weights.size()) + " weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "weights summed to " << total << " and were normalized";
    outcome.warnings.push_back(msg.str());
    for (double& w : weights) w /= total;
  }
  return {values, weights};
}

Generator make_generator(const std::string& text, const Interval& domain) {
  try {
    return parse_generator(text);
  } catch (const ParseError&) {
    return expression_generator(text, domain);
  }
}

Interval domain_or(const RunConfig& cfg, const Interval& fallback) {
  if (!cfg.domain) return fallback;
  try {
    return parse_interval(*cfg.domain);
  } catch (const Error& e) {
    throw ValidationError(std::string("bad --domain: ") + e.what());
  }
}

FunctionModel make_function(const RunConfig& cfg, const Interval& fallback) {
  if (cfg.f_expr.empty()) throw ValidationError("--F is required");
  return expression_function(cfg.f_expr, domain_or(cfg, fallback));
}

QuadratureConfig quadrature_of(const RunConfig& cfg) {
  QuadratureConfig q;
  if (cfg.quad_rule == "simpson")
    q.rule = QuadratureRule::AdaptiveSimpson;
  else if (cfg.quad_rule == "gauss-legendre" || cfg.quad_rule == "gl")
    q.rule = QuadratureRule::GaussLegendre;
  else
    throw ValidationError("--quad must be simpson or gauss-legendre");
  q.abs_tol = cfg.abs_tol;
  q.max_depth = cfg.max_depth;
  q.nodes = cfg.nodes;
  q.panels = cfg.panels;
  q.policy = policy_of(cfg);
  return q;
}

ConvexityOptions convexity_of(const RunConfig& cfg) {
  ConvexityOptions o;
  o.grid = cfg.grid;
  o.policy = policy_of(cfg);
  return o;
}

double require_alpha(const RunConfig& cfg) {
  if (!cfg.alpha) throw ValidationError("--alpha is required");
  if (!(*cfg.alpha > 0.0 && *cfg.alpha < 1.0)) throw ValidationError("--alpha must lie in (0, 1)");
  return *cfg.alpha;
}

std::pair<double, double> pair_of(const RunConfig& cfg) {
  if (cfg.values.size() != 2) throw ValidationError("expected exactly two points p q");
  return {cfg.values[0], cfg.values[1]};
}

void note_spec(Outcome& o, const char* key, const std::string& value) { o.specs[key] = value; }

void add_warnings(Outcome& o, const std::vector<std::string>& w) {
  o.warnings.insert(o.warnings.end(), w.begin(), w.end());
}

Outcome cmd_mean(const RunConfig& cfg) {
  Outcome o;
  const MeanSpec spec = parse_mean_spec(cfg.m_spec);
  note_spec(o, "mean", spec.to_string());
  auto [values, weights] = load_points(cfg, o);
  const bool uniform_pair = values.size() == 2 && weights[0] == weights[1];
  if (!spec.supports_weights() && uniform_pair)
    o.result["value"] = mean(spec, values[0], values[1]);
  else
    o.result["value"] = weighted_mean(spec, values, weights);
  return o;
}

Outcome cmd_div(const RunConfig& cfg) {
  Outcome o;
  const auto [p, q] = pair_of(cfg);
  const std::string& kind = cfg.div_kind;
  note_spec(o, "kind", kind);
  note_spec(o, "F", cfg.f_expr);

  if (kind == "bregman" || kind == "jensen-bregman") {
    const Interval base = domain_or(cfg, Interval::real_line());
    const Generator rho = make_generator(cfg.rho, base);
    const Generator tau = make_generator(cfg.tau, Interval::real_line());
    note_spec(o, "rho", rho.id());
    note_spec(o, "tau", tau.id());
    const FunctionModel f = make_function(cfg, rho.domain());
    const QabdSpec spec = QabdSpec::create(f, rho, tau, convexity_of(cfg));
    add_warnings(o, spec.warnings());
    o.result["verdict"] = std::string(to_string(spec.verdict()));
    if (kind == "bregman") {
      const DivergenceValue v = qabd(spec, p, q);
      const ConformalParts parts = qabd_conformal(spec, p, q);
      o.result["value"] = v.value;
      o.result["clamped"] = v.clamped;
      o.result["orientation"] = {p, q};
      o.result["conformal_factor"] = parts.factor;
      o.result["conformal_base"] = parts.base;
    } else {
      o.result["value"] = jensen_bregman(spec, p, q);
    }
    return o;
  }

  if (kind == "lehmer-bregman") {
    note_spec(o, "delta", std::to_string(cfg.delta));
    note_spec(o, "delta_prime", std::to_string(cfg.delta_prime));
    const FunctionModel f = make_function(cfg, Interval::positive_reals());
    o.result["value"] = lehmer_bregman(f, cfg.delta, cfg.delta_prime, p, q);
    o.result["orientation"] = {p, q};
    return o;
  }

  if (kind == "skew" && cfg.extended) {
    if (!cfg.alpha) throw ValidationError("--alpha is required");
    if (*cfg.alpha == 0.0 || *cfg.alpha == 1.0) throw ValidationError("--alpha must differ from 0 and 1");
    if (cfg.m_spec != "A" || cfg.n_spec != "A")
      o.warnings.push_back("--extended always uses arithmetic means; --M and --N are ignored");
    const FunctionModel f = make_function(cfg, Interval::real_line());
    o.result["value"] = extended_skew_jensen(f, *cfg.alpha, p, q);
    return o;
  }

  const MeanSpec m = parse_mean_spec(cfg.m_spec);
  const MeanSpec n = parse_mean_spec(cfg.n_spec);
  note_spec(o, "M", m.to_string());
  note_spec(o, "N", n.to_string());
  const FunctionModel f = make_function(cfg, m.domain());
  if (kind == "jensen") {
    const JensenSpec spec = JensenSpec::create(f, m, n, convexity_of(cfg));
    add_warnings(o, spec.warnings());
    const DivergenceValue v = jccd(spec, p, q);
    o.result["value"] = v.value;
    o.result["clamped"] = v.clamped;
  } else if (kind == "skew") {
    const double alpha = require_alpha(cfg);
    const JensenSpec spec = JensenSpec::create(f, m, n, convexity_of(cfg));
    add_warnings(o, spec.warnings());
    const DivergenceValue v = skew_jccd(spec, alpha, p, q);
    o.result["value"] = v.value;
    o.result["clamped"] = v.clamped;
  } else if (kind == "omega") {
    if (!cfg.omega) throw ValidationError("--omega is required");
    if (!(*cfg.omega > -1.0 && *cfg.omega < 1.0)) throw ValidationError("--omega must lie in (-1, 1)");
    const JensenSpec spec = JensenSpec::create(f, m, n, convexity_of(cfg));
    add_warnings(o, spec.warnings());
    o.result["value"] = omega_divergence(spec, *cfg.omega, p, q);
  } else {
    throw ValidationError("unknown divergence '" + kind + "'");
  }
  return o;
}

Outcome cmd_diversity(const RunConfig& cfg) {
  Outcome o;
  const MeanSpec m = parse_mean_spec(cfg.m_spec);
  const MeanSpec n = parse_mean_spec(cfg.n_spec);
  note_spec(o, "F", cfg.f_expr);
  note_spec(o, "M", m.to_string());
  note_spec(o, "N", n.to_string());
  auto [values, weights] = load_points(cfg, o);
  const FunctionModel f = make_function(cfg, m.domain());
  const JensenSpec spec = JensenSpec::create(f, m, n, convexity_of(cfg));
  add_warnings(o, spec.warnings());
  o.result["value"] = jensen_diversity(spec, WeightedSet(values, weights));
  return o;
}

std::pair<Distribution, Distribution> load_pair(const RunConfig& cfg) {
  if (!cfg.p_path || !cfg.q_path) throw ValidationError("--p and --q are required");
  const QuadratureConfig quad = quadrature_of(cfg);
  return {load_distribution(*cfg.p_path, quad), load_distribution(*cfg.q_path, quad)};
}

Outcome cmd_bhat(const RunConfig& cfg) {
  Outcome o;
  const double alpha = require_alpha(cfg);
  const MeanSpec m = parse_mean_spec(cfg.m_spec);
  const MeanSpec n = parse_mean_spec(cfg.n_spec);
  note_spec(o, "M", m.to_string());
  note_spec(o, "N", n.to_string());
  note_spec(o, "p", *cfg.p_path);
  note_spec(o, "q", *cfg.q_path);
  const auto [p, q] = load_pair(cfg);
  CmbdOptions options;
  options.trusted_dominance = cfg.trusted;
  options.dominance.seed = cfg.seed;
  options.dominance.samples = cfg.samples;
  options.policy = policy_of(cfg);
  const DivergenceValue v = cmbd(m, n, alpha, p, q, options);
  o.result["value"] = v.value;
  o.result["coefficient_M"] = bhat_coefficient(m, alpha, p, q, options.policy);
  o.result["coefficient_N"] = bhat_coefficient(n, alpha, p, q, options.policy);
  o.result["dominance"] = cfg.trusted ? "trusted" : (known_dominated(m, n) ? "known" : "sampled");
  return o;
}

Outcome cmd_alpha_div(const RunConfig& cfg) {
  Outcome o;
  const double alpha = require_alpha(cfg);
  note_spec(o, "p", *cfg.p_path);
  note_spec(o, "q", *cfg.q_path);
  const auto [p, q] = load_pair(cfg);
  o.result["value"] = alpha_divergence(alpha, p, q, policy_of(cfg));
  return o;
}

Outcome cmd_expect(const RunConfig& cfg) {
  Outcome o;
  const Interval dom = domain_or(cfg, Interval::real_line());
  const Generator f = make_generator(cfg.generator, dom);
  note_spec(o, "f", f.id());
  if (cfg.dist_path) {
    note_spec(o, "dist", *cfg.dist_path);
    const Distribution d = load_distribution(*cfg.dist_path, quadrature_of(cfg));
    o.result["value"] = qa_expected_value(f, d, cfg.normalize, policy_of(cfg));
  } else {
    std::vector<double> values = cfg.values;
    std::vector<double> weights;
    if (cfg.input) read_csv(*cfg.input, values, weights);
    if (values.empty()) throw ValidationError("expect needs --dist, --input or sample values");
    if (!weights.empty()) {
      auto [v, w] = load_points(cfg, o);
      o.result["value"] = qa_expected_value(f, DiscreteDist(w, v), false, policy_of(cfg));
    } else {
      o.result["value"] = qa_mean(f, values, policy_of(cfg));
    }
  }
  return o;
}

QabdSpec make_qabd(const RunConfig& cfg, Outcome& o) {
  const Interval base = domain_or(cfg, Interval::real_line());
  const Generator rho = make_generator(cfg.rho, base);
  const Generator tau = make_generator(cfg.tau, Interval::real_line());
  note_spec(o, "F", cfg.f_expr);
  note_spec(o, "rho", rho.id());
  note_spec(o, "tau", tau.id());
  const FunctionModel f = make_function(cfg, rho.domain());
  QabdSpec spec = QabdSpec::create(f, rho, tau, convexity_of(cfg));
  add_warnings(o, spec.warnings());
  return spec;
}

Outcome cmd_centroid(const RunConfig& cfg) {
  Outcome o;
  const QabdSpec spec = make_qabd(cfg, o);
  auto [values, weights] = load_points(cfg, o);
  const WeightedSet set(values, weights);
  const double c = bregman_centroid(spec, set);
  o.result["value"] = c;
  o.result["objective"] = centroid_objective(spec, set, c);
  return o;
}

Outcome cmd_cluster(const RunConfig& cfg) {
  Outcome o;
  if (cfg.k < 1) throw ValidationError("--k must be at least 1");
  const QabdSpec spec = make_qabd(cfg, o);
  auto [values, weights] = load_points(cfg, o);
  KmeansOptions options;
  options.policy = policy_of(cfg);
  const Clustering c = kmeans_cluster(spec, WeightedSet(values, weights), cfg.k, cfg.seed, options);
  o.result["value"] = c.objective;
  o.result["objective"] = c.objective;
  o.result["centers"] = c.centers;
  o.result["assignments"] = c.assignments;
  o.result["iterations"] = c.iterations;
  o.result["history"] = c.history;
  if (c.reseeds > 0) o.warnings.push_back(std::to_string(c.reseeds) + " empty cluster(s) re-seeded");
  return o;
}

Outcome cmd_check_convexity(const RunConfig& cfg) {
  Outcome o;
  const Interval base = domain_or(cfg, Interval::real_line());
  const Generator rho = make_generator(cfg.rho, base);
  const Generator tau = make_generator(cfg.tau, Interval::real_line());
  note_spec(o, "F", cfg.f_expr);
  note_spec(o, "rho", rho.id());
  note_spec(o, "tau", tau.id());
  const FunctionModel f = make_function(cfg, rho.domain());
  const ConvexityVerdict v = is_mn_convex(f, rho, tau, convexity_of(cfg));
  o.result["value"] = std::string(to_string(v.kind));
  o.result["verdict"] = std::string(to_string(v.kind));
  if (v.witness) o.result["witness"] = {(*v.witness)[0], (*v.witness)[1], (*v.witness)[2]};
  return o;
}

json witness_json(const std::optional<DominanceWitness>& w) {
  if (!w) return nullptr;
  return json{{"x", w->x}, {"y", w->y}, {"alpha", w->alpha}, {"a", w->a_value}, {"b", w->b_value}};
}

Outcome cmd_dominates(const RunConfig& cfg) {
  Outcome o;
  if (cfg.a_spec.empty() || cfg.b_spec.empty()) throw ValidationError("--a and --b are required");
  const MeanSpec a = parse_mean_spec(cfg.a_spec);
  const MeanSpec b = parse_mean_spec(cfg.b_spec);
  note_spec(o, "a", a.to_string());
  note_spec(o, "b", b.to_string());
  DominanceOptions options;
  options.samples = cfg.samples;
  options.seed = cfg.seed;
  const DominanceResult r = dominates(a, b, domain_or(cfg, Interval::positive_reals()), options);
  o.result["value"] = std::string(to_string(r.verdict));
  o.result["verdict"] = std::string(to_string(r.verdict));
  o.result["a_below_b"] = witness_json(r.a_below_b);
  o.result["a_above_b"] = witness_json(r.a_above_b);
  o.result["samples"] = r.samples;
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  if (cfg.command == "mean") return cmd_mean(cfg);
  if (cfg.command == "div") return cmd_div(cfg);
  if (cfg.command == "diversity") return cmd_diversity(cfg);
  if (cfg.command == "bhat") return cmd_bhat(cfg);
  if (cfg.command == "alpha-div") return cmd_alpha_div(cfg);
  if (cfg.command == "expect") return cmd_expect(cfg);
  if (cfg.command == "centroid") return cmd_centroid(cfg);
  if (cfg.command == "cluster") return cmd_cluster(cfg);
  if (cfg.command == "check-convexity") return cmd_check_convexity(cfg);
  if (cfg.command == "dominates") return cmd_dominates(cfg);
  throw ValidationError("unknown command '" + cfg.command + "'");
}

json provenance(const RunConfig& cfg, const json& specs) {
  return json{{"argv", cfg.argv},
              {"specs", specs},
              {"seed", cfg.seed},
              {"tolerances",
               {{"abs_tol", cfg.abs_tol},
                {"max_depth", cfg.max_depth},
                {"quadrature", cfg.quad_rule},
                {"grid", cfg.grid},
                {"convexity_rel_tol", 1e-9},
                {"zero_floor", 1e-12},
                {"weight_sum_tol", 1e-9}}}};
}

std::string plain_scalar(const json& v) {
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(17) << v.get<double>();
    return s.str();
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const RunConfig& cfg, const json& doc, std::ostream& out) {
  if (cfg.format == OutputFormat::Json) {
    out << doc.dump() << '\n';
    return;
  }
  const json& body = doc.contains("error") ? doc.at("error") : doc;
  if (cfg.format == OutputFormat::Plain) {
    if (body.contains("value")) {
      out << plain_scalar(body.at("value")) << '\n';
    } else {
      for (const auto& [key, value] : body.items())
        if (key != "provenance") out << key << ": " << plain_scalar(value) << '\n';
    }
    return;
  }
  out << "key,value\n";
  for (const auto& [key, value] : body.items()) {
    if (key == "provenance" || key == "warnings") continue;
    std::string cell = plain_scalar(value);
    if (cell.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : cell) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      cell = quoted + "\"";
    }
    out << key << ',' << cell << '\n';
  }
}

void add_point_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("values", cfg.values, "Points")->allow_extra_args();
  sub->add_option("--weights", cfg.weights, "Weights, normalized with a warning if they do not sum to 1");
  sub->add_option("--input", cfg.input, "CSV file: value[,weight] per line");
}

void add_qabd_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--F", cfg.f_expr, "Generator F as an expression in x")->required();
  sub->add_option("--rho", cfg.rho, "Domain generator (identity, log, reciprocal, exp, power:d or expression)");
  sub->add_option("--tau", cfg.tau, "Codomain generator");
  sub->add_option("--domain", cfg.domain, "Open domain a:b of F");
  sub->add_option("--grid", cfg.grid, "Convexity check grid size")->check(CLI::Range(3, 100000));
}

void add_quadrature_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--quad", cfg.quad_rule, "simpson or gauss-legendre");
  sub->add_option("--abs-tol", cfg.abs_tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-depth", cfg.max_depth, "Adaptive refinement levels")->check(CLI::Range(1, 60));
  sub->add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes per panel")->check(CLI::Range(1, 200));
  sub->add_option("--panels", cfg.panels, "Initial panels per segment")->check(CLI::Range(1, 100000));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.seed = kDefaultSeed;
  cfg.argv = args;

  CLI::App app{"Comparative-convexity means, divergences and centroids", "cdt"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "json, csv or plain")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--seed", cfg.seed, "Seed for sampling and k-means++ (CDT_SEED overrides)");
  app.add_flag("--serial", cfg.serial, "Run kernels serially");

  auto* mean_cmd = app.add_subcommand("mean", "Weighted mean of values");
  mean_cmd->add_option("--spec", cfg.m_spec, "Mean spec such as qa:log, power:2, lehmer:1, stolarsky:2");
  add_point_options(mean_cmd, cfg);

  auto* div_cmd = app.add_subcommand("div", "Divergence between two points");
  div_cmd->add_option("kind", cfg.div_kind, "jensen, skew, bregman, omega, lehmer-bregman or jensen-bregman")
      ->required()
      ->check(CLI::IsMember({"jensen", "skew", "bregman", "omega", "lehmer-bregman", "jensen-bregman"}));
  div_cmd->add_option("values", cfg.values, "p q")->expected(2);
  div_cmd->add_option("--F", cfg.f_expr, "Generator F as an expression in x")->required();
  div_cmd->add_option("--M", cfg.m_spec, "Domain mean");
  div_cmd->add_option("--N", cfg.n_spec, "Codomain mean");
  div_cmd->add_option("--rho", cfg.rho, "Domain generator");
  div_cmd->add_option("--tau", cfg.tau, "Codomain generator");
  div_cmd->add_option("--alpha", cfg.alpha, "Skew parameter");
  div_cmd->add_option("--omega", cfg.omega, "Omega in (-1, 1)");
  div_cmd->add_option("--delta", cfg.delta, "Lehmer exponent of the domain mean");
  div_cmd->add_option("--delta-prime", cfg.delta_prime, "Lehmer exponent of the codomain mean");
  div_cmd->add_option("--domain", cfg.domain, "Open domain a:b of F");
  div_cmd->add_option("--grid", cfg.grid, "Convexity check grid size")->check(CLI::Range(3, 100000));
  div_cmd->add_flag("--extended", cfg.extended, "Allow alpha outside (0, 1) for the arithmetic skew divergence");

  auto* diversity_cmd = app.add_subcommand("diversity", "Jensen diversity index of weighted points");
  diversity_cmd->add_option("--F", cfg.f_expr, "Generator F")->required();
  diversity_cmd->add_option("--M", cfg.m_spec, "Domain mean");
  diversity_cmd->add_option("--N", cfg.n_spec, "Codomain mean");
  diversity_cmd->add_option("--domain", cfg.domain, "Open domain a:b of F");
  diversity_cmd->add_option("--grid", cfg.grid, "Convexity check grid size")->check(CLI::Range(3, 100000));
  add_point_options(diversity_cmd, cfg);

  auto* bhat_cmd = app.add_subcommand("bhat", "Comparative-mean Bhattacharyya distance");
  bhat_cmd->add_option("--M", cfg.m_spec, "Smaller mean");
  bhat_cmd->add_option("--N", cfg.n_spec, "Larger mean");
  bhat_cmd->add_option("--alpha", cfg.alpha, "Skew parameter in (0, 1)")->required();
  bhat_cmd->add_option("--p", cfg.p_path, "Distribution JSON")->required();
  bhat_cmd->add_option("--q", cfg.q_path, "Distribution JSON")->required();
  bhat_cmd->add_option("--samples", cfg.samples, "Dominance check samples")->check(CLI::PositiveNumber);
  bhat_cmd->add_flag("--trusted", cfg.trusted, "Skip the sampled dominance check");
  add_quadrature_options(bhat_cmd, cfg);

  auto* alpha_cmd = app.add_subcommand("alpha-div", "Alpha-divergence");
  alpha_cmd->add_option("--alpha", cfg.alpha, "Alpha in (0, 1)")->required();
  alpha_cmd->add_option("--p", cfg.p_path, "Distribution JSON")->required();
  alpha_cmd->add_option("--q", cfg.q_path, "Distribution JSON")->required();
  add_quadrature_options(alpha_cmd, cfg);

  auto* expect_cmd = app.add_subcommand("expect", "Quasi-arithmetic mean or expected value");
  expect_cmd->add_option("--f", cfg.generator, "Generator");
  expect_cmd->add_option("--dist", cfg.dist_path, "Distribution JSON");
  expect_cmd->add_option("--domain", cfg.domain, "Domain a:b of an expression generator");
  expect_cmd->add_flag("--normalize", cfg.normalize, "Divide by the total mass");
  add_point_options(expect_cmd, cfg);
  add_quadrature_options(expect_cmd, cfg);

  auto* centroid_cmd = app.add_subcommand("centroid", "Generalized Bregman centroid");
  add_qabd_options(centroid_cmd, cfg);
  add_point_options(centroid_cmd, cfg);

  auto* cluster_cmd = app.add_subcommand("cluster", "k-means under a quasi-arithmetic Bregman divergence");
  add_qabd_options(cluster_cmd, cfg);
  add_point_options(cluster_cmd, cfg);
  cluster_cmd->add_option("--k", cfg.k, "Number of clusters")->check(CLI::PositiveNumber);

  auto* convexity_cmd = app.add_subcommand("check-convexity", "(M_rho, M_tau)-convexity verdict");
  add_qabd_options(convexity_cmd, cfg);

  auto* dominates_cmd = app.add_subcommand("dominates", "Sampled dominance of two means");
  dominates_cmd->add_option("--a", cfg.a_spec, "First mean")->required();
  dominates_cmd->add_option("--b", cfg.b_spec, "Second mean")->required();
  dominates_cmd->add_option("--domain", cfg.domain, "Sampling domain a:b");
  dominates_cmd->add_option("--samples", cfg.samples, "Number of samples")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "csv" ? OutputFormat::Csv : (format == "plain" ? OutputFormat::Plain : OutputFormat::Json);
  if (const char* env = std::getenv("CDT_SEED")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      cfg.seed = std::stoull(text, &used, 0);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      err << "error: CDT_SEED is not an unsigned integer\n";
      return 2;
    }
    cfg.seed_from_env = true;
    cfg.argv.push_back("--seed");
    cfg.argv.push_back(std::to_string(cfg.seed));
  }

  Outcome outcome;
  json doc;
  int code = 0;
  try {
    outcome = dispatch(cfg);
    doc = outcome.result;
  } catch (const ValidationError& e) {
    doc = json{{"error", {{"kind", "ValidationError"}, {"message", e.what()}}}};
    err << "error: " << e.what() << '\n';
    code = 2;
  } catch (const ParseError& e) {
    doc = json{{"error", {{"kind", "ParseError"}, {"message", e.what()}, {"offset", e.offset()}, {"expected", e.expected()}}}};
    err << "error: " << e.what() << '\n';
    code = 2;
  } catch (const Error& e) {
    doc = json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    err << "error: " << e.what() << '\n';
    code = 3;
  } catch (const std::exception& e) {
    doc = json{{"error", {{"kind", "InternalError"}, {"message", e.what()}}}};
    err << "error: " << e.what() << '\n';
    code = 3;
  }
  doc["warnings"] = outcome.warnings;
  doc["provenance"] = provenance(cfg, outcome.specs);
  emit(cfg, doc, out);
  return code;
}

}  // namespace cdt::cli
