// spectra: group-ring spectral radius experiments at the command line.
//
// Subcommands: moments, radius, extract, reproduce, epsilon, sharpness,
// walk, gamma.  Exit codes: 0 success, 2 a certified inequality failed,
// 3 validation or guard error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spectra/estimators.hpp"
#include "spectra/interval.hpp"
#include "spectra/pipeline.hpp"
#include "spectra/serialize.hpp"

namespace {

using namespace spectra;

struct CommonOpts {
  std::string group = "free:2";
  std::string set = "a,A,b,B";
  std::string engine = "auto";
  std::string format = "json";
  std::string out;
  int precision = 128;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_set = true) {
  cmd->add_option("--group", o.group, "presentation: free:R | fpc:M1,M2,... | zd:D");
  if (with_set) cmd->add_option("--set", o.set, "generating set, comma-separated words");
  cmd->add_option("--engine", o.engine, "dense|radial|auto")
      ->check(CLI::IsMember({"dense", "radial", "auto"}));
  cmd->add_option("--format", o.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--precision", o.precision, "mpfr precision bits");
  cmd->add_option("--seed", o.seed, "random seed");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ValidationError("cannot open output path: " + o.out);
    f << text;
  }
}

Json config_json(const CommonOpts& o, const Json& extra) {
  Json c;
  c["group"] = o.group;
  c["set"] = o.set;
  c["engine"] = o.engine;
  c["format"] = o.format;
  c["precision_bits"] = o.precision;
  c["seed"] = o.seed;
  for (auto& [k, v] : extra.items()) c[k] = v;
  return c;
}

std::string envelope(const std::string& command, const Json& config, const Json& result) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  return j.dump(2) + "\n";
}

bool is_standard_free(const GroupPresentation& p, const GenSet& s) {
  if (p.kind() != GroupKind::Free || s.words.size() != 2u * p.rank()) return false;
  for (const Word& w : s.words)
    if (w.length() != 1) return false;
  return true;
}

GenSet load_set(const GroupPresentation& p, const CommonOpts& o) {
  GenSet s = parse_genset(p, o.set);
  if (const Word* w = s.missing_inverse())
    throw ValidationError("set not symmetric: missing " +
                          word_string(p.invert(*w)));
  if (s.words.empty()) throw ValidationError("empty generating set");
  return s;
}

// ------------------------------------------------------------------ moments

int run_moments(const CommonOpts& o, int nmax) {
  GroupPresentation p = GroupPresentation::parse(o.group);
  GenSet s = load_set(p, o);
  bool radial = o.engine == "radial" || (o.engine == "auto" && is_standard_free(p, s));
  if (o.engine == "radial" && !is_standard_free(p, s))
    throw ValidationError("radial engine requires a free group with its standard set");
  MomentSequence m = radial ? free_markov_moments(p.rank(), nmax)
                            : trace_moments(markov(s).element, nmax);
  Json result = to_json(m, o.precision);
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "n,tau_2n,root_lower,ratio_lower\n";
    for (auto& row : result["rows"]) {
      csv << row["n"] << "," << row["tau_2n"].get<std::string>() << ","
          << row["root_lower"].get<std::string>() << ",";
      if (row.contains("ratio_lower")) csv << row["ratio_lower"].get<std::string>();
      csv << "\n";
    }
    emit(o, csv.str());
  } else {
    emit(o, envelope("moments", config_json(o, {{"nmax", nmax}}), result));
  }
  return 0;
}

// ------------------------------------------------------------------- radius

int run_radius(const CommonOpts& o, unsigned radius, long iters, double tol, int nmax) {
  GroupPresentation p = GroupPresentation::parse(o.group);
  GenSet s = load_set(p, o);
  Json result;
  Json reports = Json::array();
  MomentSequence m = is_standard_free(p, s) ? free_markov_moments(p.rank(), nmax)
                                            : trace_moments(markov(s).element, nmax);
  for (const auto& r : radius_lower_bounds(m, o.precision)) reports.push_back(to_json(r));
  reports.push_back(to_json(ball_power_iteration(p, s, radius, iters, tol)));
  if (is_standard_free(p, s)) reports.push_back(to_json(kesten_exact_free(p.rank())));
  TreeBound tb = tree_comparison_bound(Int(long(s.size())));
  result["estimates"] = reports;
  result["tree_paper_bound"] = double_string(tb.paper_bound);
  result["tree_refined_bound"] = double_string(tb.refined_bound);
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "method,n,radius,value,direction\n";
    for (auto& r : reports)
      csv << r["method"].get<std::string>() << "," << (r.contains("n") ? r["n"].dump() : "")
          << "," << (r.contains("radius") ? r["radius"].dump() : "") << ","
          << r["value"].get<std::string>() << "," << r["direction"].get<std::string>()
          << "\n";
    emit(o, csv.str());
  } else {
    emit(o, envelope("radius",
                     config_json(o, {{"radius", radius},
                                     {"iters", iters},
                                     {"tol", tol},
                                     {"nmax", nmax}}),
                     result));
  }
  return 0;
}

// ------------------------------------------------------------------ extract

int run_extract(const CommonOpts& o, int k, int nmax) {
  GroupPresentation p = GroupPresentation::parse(o.group);
  GenSet s = load_set(p, o);
  EstimatorParams params;
  params.engine = o.engine;
  params.moment_n_max = nmax;
  params.precision_bits = o.precision;
  SkCertificate cert = generate_sk(p, s, k, params);
  Json result = to_json(cert);
  result["augmented"] = to_json(augment_with_sigma(cert));
  emit(o, envelope("extract", config_json(o, {{"k", k}, {"nmax", nmax}}), result));
  return cert.corollary3_ok && cert.consistency_ok ? 0 : 2;
}

// ---------------------------------------------------------------- reproduce

int run_reproduce(const CommonOpts& o, int kmin, int kmax, int kstep, int nmax) {
  GroupPresentation p = GroupPresentation::parse(o.group);
  GenSet s = load_set(p, o);
  if (!is_standard_free(p, s))
    throw ValidationError("reproduce requires a free group with its standard set");
  std::vector<int> ks;
  for (int k = kmin; k <= kmax; k += kstep) ks.push_back(k);

  EstimatorParams params;
  params.engine = "radial";
  params.moment_n_max = nmax;
  params.precision_bits = o.precision;

  std::vector<SkCertificate> certs;
  for (int k : ks) certs.push_back(generate_sk(p, s, k, params));
  EstimateReport rho = kesten_exact_free(p.rank());
  EpsilonReport eps = epsilon_certificate(s, rho, certs, std::max(o.precision, 192));

  bool all_ok = true;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "k,sk_size,b_l1,theorem1_rhs,rho_lower,sk_size_pow_minus_eps,chain_ok\n";
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const SkCertificate& c = certs[i];
    const EpsilonRow& er = eps.rows[i];
    all_ok = all_ok && c.corollary3_ok && c.consistency_ok;
    // |S_k|^{-eps}, rounded down
    Interval e = Interval::from_double(eps.epsilon_hi, o.precision);
    Interval sk_pow = exp((e * log(Interval::from_int(c.sk_size, o.precision))).neg());
    Json row;
    row["k"] = c.k;
    row["sk_size"] = c.sk_size.get_str();
    row["b_l1"] = rat_string(c.b_l1);
    row["theorem1_rhs"] = double_string(c.theorem1_rhs);
    row["rho_lower"] = double_string(c.rho_sk_lower.value);
    row["sk_size_pow_minus_eps"] = double_string(sk_pow.lo_double());
    row["chain_ok"] = er.chain_ok;
    rows.push_back(row);
    csv << c.k << "," << c.sk_size.get_str() << "," << rat_string(c.b_l1) << ","
        << double_string(c.theorem1_rhs) << "," << double_string(c.rho_sk_lower.value)
        << "," << double_string(sk_pow.lo_double()) << "," << (er.chain_ok ? 1 : 0)
        << "\n";
  }
  csv << "# epsilon=" << double_string(eps.epsilon) << " smallest_k="
      << (eps.smallest_k ? std::to_string(*eps.smallest_k) : "none") << "\n";
  if (o.format == "csv") {
    emit(o, csv.str());
  } else {
    Json result;
    result["rows"] = rows;
    result["epsilon"] = double_string(eps.epsilon);
    if (eps.smallest_k)
      result["smallest_k"] = *eps.smallest_k;
    else
      result["smallest_k"] = nullptr;
    emit(o, envelope("reproduce",
                     config_json(o, {{"kmin", kmin}, {"kmax", kmax}, {"kstep", kstep},
                                     {"nmax", nmax}}),
                     result));
  }
  return all_ok ? 0 : 2;
}

// ------------------------------------------------------------------ epsilon

int run_epsilon(const CommonOpts& o, int kmin, int kmax, int kstep, int nmax) {
  GroupPresentation p = GroupPresentation::parse(o.group);
  GenSet s = load_set(p, o);
  EstimateReport rho;
  if (is_standard_free(p, s)) {
    rho = kesten_exact_free(p.rank());
  } else if (p.kind() == GroupKind::FreeAbelian) {
    rho.value = 1.0;
    rho.value_sq_exact = Rat(1);
    rho.direction = Direction::Exact;
    rho.method = "closed-form";
  } else {
    throw ValidationError(
        "epsilon needs an exact or certified-upper rho(Sigma); moment estimates are "
        "lower bounds only for this set");
  }
  EstimatorParams params;
  params.engine = "auto";
  params.moment_n_max = nmax;
  params.precision_bits = o.precision;
  std::vector<SkCertificate> certs;
  std::vector<int> ks;
  for (int k = kmin; k <= kmax; k += kstep) ks.push_back(k);
  EpsilonReport eps;
  if (is_standard_free(p, s)) {
    for (int k : ks) certs.push_back(generate_sk(p, s, k, params));
    eps = epsilon_certificate(s, rho, certs, std::max(o.precision, 192));
  } else {
    eps = epsilon_chain(unsigned(s.size()), rho, ks, std::max(o.precision, 192));
  }
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "k,lhs_hi,rhs_lo,chain_ok\n";
    for (const auto& r : eps.rows)
      csv << r.k << "," << double_string(r.lhs_hi) << "," << double_string(r.rhs_lo)
          << "," << (r.chain_ok ? 1 : 0) << "\n";
    csv << "# epsilon=" << double_string(eps.epsilon) << " smallest_k="
        << (eps.smallest_k ? std::to_string(*eps.smallest_k) : "none") << "\n";
    emit(o, csv.str());
  } else {
    emit(o, envelope("epsilon",
                     config_json(o, {{"kmin", kmin}, {"kmax", kmax}, {"kstep", kstep}}),
                     to_json(eps)));
  }
  return 0;
}

// ---------------------------------------------------------------- sharpness

int run_sharpness(const CommonOpts& o, const std::vector<long>& ns) {
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "n,I,objective,guarantee,guarantee_applicable,guarantee_met,ratio\n";
  double prev_ratio = 2.0;
  bool decreasing = true;
  for (long n : ns) {
    SharpnessRow row = sharpness_scan(n, o.precision);
    decreasing = decreasing && row.ratio < prev_ratio;
    prev_ratio = row.ratio;
    rows.push_back(to_json(row));
    csv << n << "," << double_string(row.I) << "," << rat_string(row.objective) << ","
        << (row.guarantee_applicable ? double_string(row.guarantee) : "") << ","
        << (row.guarantee_applicable ? 1 : 0) << ","
        << (row.guarantee_applicable && row.guarantee_met ? 1 : 0) << ","
        << double_string(row.ratio) << "\n";
  }
  if (o.format == "csv") {
    emit(o, csv.str());
  } else {
    Json result;
    result["rows"] = rows;
    result["ratio_strictly_decreasing"] = decreasing;
    Json cfg;
    cfg["ns"] = ns;
    emit(o, envelope("sharpness", config_json(o, cfg), result));
  }
  return 0;
}

// --------------------------------------------------------------------- walk

int run_walk(const CommonOpts& o, int steps, long trials) {
  GroupPresentation p = GroupPresentation::parse(o.group);
  GenSet s = load_set(p, o);
  WalkResult w = monte_carlo_return(p, s, steps, trials, o.seed);
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "steps,trials,seed,returns,frequency,stderr\n";
    csv << w.steps << "," << w.trials << "," << w.seed << "," << w.returns << ","
        << double_string(w.frequency) << "," << double_string(w.stderr_est) << "\n";
    emit(o, csv.str());
  } else {
    emit(o, envelope("walk", config_json(o, {{"steps", steps}, {"trials", trials}}),
                     to_json(w)));
  }
  return 0;
}

// -------------------------------------------------------------------- gamma

int run_gamma(const CommonOpts& o, unsigned trend_min, unsigned trend_max) {
  Json result;
  if (trend_max >= trend_min && trend_max > 0) {
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "n_pairs,set_size,rho,gamma,ratio_to_sqrt_size\n";
    for (const auto& row : gamma_trend(trend_min, trend_max)) {
      rows.push_back(to_json(row));
      csv << row.n_pairs << "," << row.set_size.get_str() << ","
          << double_string(row.rho) << "," << double_string(row.gamma) << ","
          << double_string(row.ratio_to_sqrt_size) << "\n";
    }
    if (o.format == "csv") {
      emit(o, csv.str());
      return 0;
    }
    result["trend"] = rows;
  }
  GroupPresentation p = GroupPresentation::parse(o.group);
  GenSet s = load_set(p, o);
  EstimateReport rho;
  if (is_standard_free(p, s))
    rho = kesten_exact_free(p.rank());
  else if (p.kind() == GroupKind::FreeAbelian) {
    rho.value = 1.0;
    rho.value_sq_exact = Rat(1);
    rho.direction = Direction::Exact;
    rho.method = "closed-form";
  } else {
    throw ValidationError("gamma needs an exact or certified-upper rho for this set");
  }
  result["set_size"] = s.size();
  result["rho"] = to_json(rho);
  result["gamma_upper"] = double_string(gamma_upper_bound(Int(long(s.size())), rho));
  emit(o, envelope("gamma",
                   config_json(o, {{"trend_min", trend_min}, {"trend_max", trend_max}}),
                   result));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-ring spectral radius toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  int nmax = 3, k = 2, kmin = 20, kmax = 120, kstep = 20, steps = 4;
  unsigned radius = 20, trend_min = 2, trend_max = 0;
  long iters = 2000, trials = 100000;
  double tol = 0.0;
  std::vector<long> ns = {10, 100, 1000, 10000, 100000, 1000000};

  auto* cmd_moments = app.add_subcommand("moments", "exact trace moments and lower bounds");
  add_common(cmd_moments, o);
  cmd_moments->add_option("--nmax", nmax, "number of even moments");

  auto* cmd_radius = app.add_subcommand("radius", "spectral radius estimates");
  add_common(cmd_radius, o);
  cmd_radius->add_option("--radius", radius, "truncation radius R");
  cmd_radius->add_option("--iters", iters, "power iterations");
  cmd_radius->add_option("--tol", tol, "early-stop tolerance");
  cmd_radius->add_option("--nmax", nmax, "number of even moments");

  auto* cmd_extract = app.add_subcommand("extract", "Sk certificate for one k");
  add_common(cmd_extract, o);
  cmd_extract->add_option("--k", k, "power k")->required();
  cmd_extract->add_option("--nmax", nmax, "moments for the Sk lower bound");

  auto* cmd_reproduce = app.add_subcommand("reproduce", "certificate table over a k range");
  add_common(cmd_reproduce, o);
  cmd_reproduce->add_option("--kmin", kmin);
  cmd_reproduce->add_option("--kmax", kmax);
  cmd_reproduce->add_option("--kstep", kstep);
  cmd_reproduce->add_option("--nmax", nmax, "moments for the Sk lower bound");

  auto* cmd_epsilon = app.add_subcommand("epsilon", "Corollary-5 style exponent chain");
  add_common(cmd_epsilon, o);
  cmd_epsilon->add_option("--kmin", kmin);
  cmd_epsilon->add_option("--kmax", kmax);
  cmd_epsilon->add_option("--kstep", kstep);
  cmd_epsilon->add_option("--nmax", nmax);

  auto* cmd_sharpness = app.add_subcommand("sharpness", "f_n(x)=min{1,1/(nx)} scan");
  add_common(cmd_sharpness, o, false);
  cmd_sharpness->add_option("--ns", ns, "values of n");

  auto* cmd_walk = app.add_subcommand("walk", "Monte Carlo return frequency");
  add_common(cmd_walk, o);
  cmd_walk->add_option("--steps", steps, "walk length (even)");
  cmd_walk->add_option("--trials", trials, "number of trials");

  auto* cmd_gamma = app.add_subcommand("gamma", "operator-space factorization bound");
  add_common(cmd_gamma, o);
  cmd_gamma->add_option("--trend-min", trend_min, "free-set trend: first rank");
  cmd_gamma->add_option("--trend-max", trend_max, "free-set trend: last rank (0 = off)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_moments->parsed()) return run_moments(o, nmax);
    if (cmd_radius->parsed()) return run_radius(o, radius, iters, tol, nmax);
    if (cmd_extract->parsed()) return run_extract(o, k, nmax);
    if (cmd_reproduce->parsed()) return run_reproduce(o, kmin, kmax, kstep, nmax);
    if (cmd_epsilon->parsed()) return run_epsilon(o, kmin, kmax, kstep, nmax);
    if (cmd_sharpness->parsed()) return run_sharpness(o, ns);
    if (cmd_walk->parsed()) return run_walk(o, steps, trials);
    if (cmd_gamma->parsed()) return run_gamma(o, trend_min, trend_max);
  } catch (const spectra::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const spectra::GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
