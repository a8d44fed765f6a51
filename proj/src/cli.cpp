#include "momentbody/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "momentbody/expression.hpp"
#include "momentbody/experiments.hpp"
#include "momentbody/json_io.hpp"
#include "momentbody/rates.hpp"

namespace momentbody::cli {

using nlohmann::json;

namespace {

struct GlobalOpts {
  std::string mode = "auto";  // auto | exact | float
  std::string out;            // output path; empty = stdout
  std::string format = "json";

  std::optional<Mode> parse_mode() const {
    if (mode == "exact") return Mode::exact;
    if (mode == "float") return Mode::floating;
    return std::nullopt;
  }
};

void emit(const GlobalOpts& g, std::ostream& out, const std::string& payload) {
  if (g.out.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file \"" + g.out + "\"");
  f << payload;
}

void reject_exact(const GlobalOpts& g, const char* op) {
  if (g.mode == "exact") {
    throw InvalidArgument(std::string(op) +
                          " needs float arithmetic (eigensolve/quadrature); rerun with "
                          "--mode float or auto");
  }
}

// Float-only operations accept exact-looking literals and work on their
// float image.
MomentVector parse_moments_float(const std::string& csv) {
  MomentVector v = parse_moments(csv, std::nullopt);
  if (v.mode() == Mode::exact) return MomentVector::floating(v.to_doubles());
  return v;
}

json scalar_json(const Scalar& s) {
  if (s.is_exact()) return format_rational(s.rational());
  return s.floating();
}

ExperimentConfig default_config(const std::string& id) {
  ExperimentConfig cfg;
  cfg.id = id;
  if (id == "clt") {
    cfg.k = 2;
    cfg.n_grid = {200};
    cfg.trials = 20000;
    cfg.hard_asserts = json{{"cov_frob_rtol", 0.10}, {"mean_drift_max", 4.0}};
  } else if (id == "ldp") {
    cfg.n_grid = {50, 100, 150, 200, 250, 300, 350, 400};
    cfg.threshold = 0.6;
    cfg.trials = 100000;
    cfg.mc_check_n = 100;
    cfg.hard_asserts = json{{"slope_rtol", 0.10}, {"mc_z_max", 3.0}};
  } else if (id == "mdp") {
    cfg.gamma = 0.5;
    cfg.threshold = 1.0;
    cfg.n_grid = {100, 1000, 10000};
  } else if (id == "taylor") {
    cfg.k = 3;
    cfg.radius = 0.01;
    cfg.radius_levels = 3;
    cfg.trials = 1000;
    cfg.hard_asserts = json{{"ratio_spread_max", 2.0}};
  } else if (id == "szego") {
    cfg.measure = "arcsine";
    for (std::size_t n = 1; n <= 20; ++n) cfg.n_grid.push_back(n);
    cfg.chain_identity = true;
    cfg.hard_asserts = json{{"monotone", true}, {"chain_identity_exact", true}};
  } else if (id == "range-conv") {
    cfg.poly = {1.6180339887498949, -1.0};  // (1+sqrt(5))/2 - x
    cfg.k_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    cfg.hard_asserts = json{{"value_max_from_deg", 1e-8}};
  } else if (id == "sigma-plus") {
    cfg.n_grid = {20, 40, 80};
    cfg.trials = 100;
    cfg.hard_asserts = json{{"monotone", true}, {"max_failure_rate", 0.01}};
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"truncated power-moment problem on [0,1]: canonical moments, "
               "extremal representations, uniform sampling, rate functions"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::uint64_t g_seed = 0;
  app.add_option("--mode", g.mode, "scalar mode: exact, float or auto")
      ->check(CLI::IsMember({"auto", "exact", "float"}))
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", g_seed, "random seed (sample, experiment)");
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "output format for reports")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // convert
  auto* convert = app.add_subcommand("convert", "moments <-> canonical moments");
  convert->fallthrough();
  std::string conv_moments, conv_canonical;
  convert->add_option("--moments", conv_moments, "comma list c_1,...,c_n");
  convert->add_option("--canonical", conv_canonical, "comma list p_1,...,p_n");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "interior/boundary/outside trichotomy");
  classify_cmd->fallthrough();
  std::string cls_moments;
  classify_cmd->add_option("--moments", cls_moments)->required();

  // range
  auto* range_cmd = app.add_subcommand("range", "admissible interval for the next moment");
  range_cmd->fallthrough();
  std::string range_moments;
  range_cmd->add_option("--moments", range_moments)->required();

  // principal
  auto* principal_cmd = app.add_subcommand("principal", "extremal representation sigma_n+/-");
  principal_cmd->fallthrough();
  std::string pr_moments, pr_side = "upper";
  principal_cmd->add_option("--moments", pr_moments)->required();
  principal_cmd->add_option("--side", pr_side)->check(CLI::IsMember({"upper", "lower"}));

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "uniform draws from the moment body");
  sample_cmd->fallthrough();
  std::size_t s_n = 1, s_count = 1, s_prefix = 0;
  unsigned s_workers = 1;
  sample_cmd->add_option("--n", s_n, "body dimension")->required();
  sample_cmd->add_option("--count", s_count, "number of trials")->required();
  sample_cmd->add_option("--prefix-k", s_prefix, "keep the first k moments (default n)");
  sample_cmd->add_option("--workers", s_workers);

  // rate
  auto* rate_cmd = app.add_subcommand("rate", "rate functions and variational objects");
  rate_cmd->fallthrough();
  std::string rate_kind, rate_moments, rate_x, rate_poly, rate_density, rate_f0;
  double rate_tol = 1e-9;
  bool rate_check_dual = false;
  rate_cmd->add_option("kind", rate_kind, "one of ik|jk|kullback|dual|range|tilt")->required();
  rate_cmd->add_option("--moments", rate_moments);
  rate_cmd->add_option("--x", rate_x, "comma list for J_k");
  rate_cmd->add_option("--poly", rate_poly, "polynomial coefficients, low order first");
  rate_cmd->add_option("--density", rate_density, "density g w.r.t. nu as an expression in x");
  rate_cmd->add_option("--f0", rate_f0, "tilt function as an expression in x");
  rate_cmd->add_option("--tol", rate_tol);
  rate_cmd->add_flag("--check-dual", rate_check_dual);

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "desk-scale verification experiments");
  exp_cmd->fallthrough();
  std::string exp_id, exp_config;
  exp_cmd->add_option("--id", exp_id,
                      "clt|ldp|mdp|taylor|szego|range-conv|sigma-plus");
  exp_cmd->add_option("--config", exp_config, "JSON config path");

  try {
    std::vector<const char*> argv;
    argv.push_back("momentbody");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  if (convert->parsed()) {
    if (conv_moments.empty() == conv_canonical.empty()) {
      throw InvalidArgument("convert takes exactly one of --moments / --canonical");
    }
    json j;
    j["schema_version"] = 1;
    if (!conv_moments.empty()) {
      const MomentVector c = parse_moments(conv_moments, g.parse_mode());
      const CanonicalVector p = moments_to_canonical(c);
      j["mode"] = p.mode() == Mode::exact ? "exact" : "float";
      j["canonical"] = entries_string(p);
    } else {
      const CanonicalVector p = parse_canonical(conv_canonical, g.parse_mode());
      const MomentVector c = canonical_to_moments(p);
      j["mode"] = c.mode() == Mode::exact ? "exact" : "float";
      j["moments"] = entries_string(c);
    }
    emit(g, out, j.dump() + "\n");
    return 0;
  }

  if (classify_cmd->parsed()) {
    const MomentVector c = parse_moments(cls_moments, g.parse_mode());
    json j{{"schema_version", 1}, {"classification", to_string(classify(c))}};
    emit(g, out, j.dump() + "\n");
    return 0;
  }

  if (range_cmd->parsed()) {
    const MomentVector c = parse_moments(range_moments, g.parse_mode());
    const MomentRange r = moment_range(c);
    json j{{"schema_version", 1},
           {"c_minus", scalar_json(r.c_minus)},
           {"c_plus", scalar_json(r.c_plus)},
           {"width", scalar_json(r.width)}};
    emit(g, out, j.dump() + "\n");
    return 0;
  }

  if (principal_cmd->parsed()) {
    reject_exact(g, "principal");
    const MomentVector c = parse_moments_float(pr_moments);
    const DiscreteMeasure mu =
        principal_representation(c, pr_side == "upper" ? Side::upper : Side::lower);
    json j = to_json(mu);
    j["schema_version"] = 1;
    emit(g, out, j.dump() + "\n");
    return 0;
  }

  if (sample_cmd->parsed()) {
    reject_exact(g, "sample (gamma/beta draws)");
    if (seed_opt->count() == 0) throw InvalidArgument("sample needs --seed for reproducibility");
    BatchOptions b;
    b.n = s_n;
    b.count = s_count;
    b.prefix_k = s_prefix == 0 ? s_n : s_prefix;
    b.seed = g_seed;
    b.workers = s_workers;
    const auto rows = sample_moment_batch(b);
    std::string csv;
    for (std::size_t j = 1; j <= b.prefix_k; ++j) {
      if (j > 1) csv.push_back(',');
      csv += "c" + std::to_string(j);
    }
    csv.push_back('\n');
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) csv.push_back(',');
        csv += format_double(row[j]);
      }
      csv.push_back('\n');
    }
    emit(g, out, csv);
    return 0;
  }

  if (rate_cmd->parsed()) {
    json j{{"schema_version", 1}};
    if (rate_kind == "ik") {
      if (rate_moments.empty()) throw InvalidArgument("rate ik needs --moments");
      j["value"] = rate_Ik(parse_moments(rate_moments, g.parse_mode()));
    } else if (rate_kind == "jk") {
      if (rate_x.empty()) throw InvalidArgument("rate jk needs --x");
      std::vector<double> x;
      for (const auto& s : split_list(rate_x)) x.push_back(parse_double(s));
      j["value"] = rate_Jk(x);
    } else if (rate_kind == "kullback") {
      reject_exact(g, "rate kullback");
      MeasureSpec mu;
      if (!rate_poly.empty()) {
        std::vector<double> coeffs;
        for (const auto& s : split_list(rate_poly)) coeffs.push_back(parse_double(s));
        mu.density = [coeffs](double x) { return 1.0 / evaluate_polynomial(coeffs, x); };
      } else if (!rate_density.empty()) {
        mu.density = parse_expression(rate_density);
      } else {
        throw InvalidArgument("rate kullback needs --poly or --density");
      }
      mu.validate(1e-6);  // total mass must be 1
      j["value"] = reversed_kullback(mu, rate_tol);
    } else if (rate_kind == "dual") {
      reject_exact(g, "rate dual");
      if (rate_moments.empty()) throw InvalidArgument("rate dual needs --moments");
      DualOptions opts;
      opts.tol = rate_tol;
      const DualSolution sol = dual_Hk_maximize(parse_moments_float(rate_moments), opts);
      j["value"] = sol.value;
      j["lambda0"] = sol.lambda0;
      j["lambda"] = sol.lambda;
      j["grad_norm"] = sol.grad_norm;
      j["iterations"] = sol.iterations;
    } else if (rate_kind == "range") {
      if (rate_moments.empty()) throw InvalidArgument("rate range needs --moments");
      if (rate_check_dual) reject_exact(g, "rate range --check-dual");
      const Scalar w = range_size(parse_moments(rate_moments, g.parse_mode()), rate_check_dual);
      j["width"] = scalar_json(w);
      j["checked_against_dual"] = rate_check_dual;
    } else if (rate_kind == "tilt") {
      reject_exact(g, "rate tilt");
      if (rate_f0.empty()) throw InvalidArgument("rate tilt needs --f0");
      const TiltSolution sol = tilt_limit(parse_expression(rate_f0), rate_tol);
      j["case"] = sol.kind == TiltCase::absolutely_continuous ? "absolutely-continuous"
                                                              : "atom-at-maximizer";
      j["lambda_bar"] = sol.lambda_bar;
      j["chi0"] = sol.chi0;
      j["x0"] = sol.x0;
      if (sol.kind == TiltCase::absolutely_continuous) {
        j["lambda_star"] = sol.lambda_star;
      } else {
        j["atom_mass"] = sol.atom_mass;
      }
      j["k_f"] = sol.k_f;
    } else {
      throw InvalidArgument("rate kind must be one of ik|jk|kullback|dual|range|tilt");
    }
    emit(g, out, j.dump() + "\n");
    return 0;
  }

  if (exp_cmd->parsed()) {
    ExperimentConfig cfg;
    if (!exp_config.empty()) {
      std::ifstream f(exp_config);
      if (!f) throw InvalidArgument("cannot read config \"" + exp_config + "\"");
      json j = json::parse(f);
      if (!exp_id.empty() && !j.contains("id")) j["id"] = exp_id;
      cfg = ExperimentConfig::from_json(j);
      if (!exp_id.empty()) cfg.id = exp_id;
    } else if (!exp_id.empty()) {
      cfg = default_config(exp_id);
    } else {
      throw InvalidArgument("experiment needs --id and/or --config");
    }
    if (seed_opt->count() > 0) cfg.seed = g_seed;

    const ExperimentReport rep = run_experiment(cfg);
    json meta = rep.to_json();
    meta["config"] = cfg.to_json();
    if (!g.out.empty()) {
      std::ofstream csv(g.out + ".csv", std::ios::binary);
      std::ofstream js(g.out + ".json", std::ios::binary);
      if (!csv || !js) throw InvalidArgument("cannot write report files at \"" + g.out + "\"");
      csv << rep.csv();
      js << meta.dump(2) << "\n";
      out << json{{"passed", rep.passed()}, {"rows", rep.rows.size()},
                  {"csv", g.out + ".csv"}, {"json", g.out + ".json"}}
                 .dump()
          << "\n";
    } else if (g.format == "csv") {
      out << rep.csv();
    } else {
      out << meta.dump() << "\n";
    }
    return rep.passed() ? 0 : 1;
  }

  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out, err);
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const ModeMismatch& e) {
    err << "mode mismatch: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const QuadratureError& e) {
    err << "quadrature failure: " << e.what() << " (last estimates " << e.last_estimate << ", "
        << e.previous_estimate << ")\n";
    return 3;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << "\n";
    return 3;
  } catch (const ConstructionError& e) {
    err << "construction failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace momentbody::cli
