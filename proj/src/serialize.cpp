#include "spectra/serialize.hpp"

#include <charconv>

#include "spectra/interval.hpp"

namespace spectra {

std::string double_string(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

Json to_json(const EstimateReport& r) {
  Json j;
  j["value"] = double_string(r.value);
  j["direction"] = direction_string(r.direction);
  j["method"] = r.method;
  if (r.n) j["n"] = r.n;
  if (r.radius) j["radius"] = r.radius;
  if (r.iterations) j["iterations"] = r.iterations;
  if (r.precision_bits) j["precision_bits"] = r.precision_bits;
  if (r.tolerance != 0) j["tolerance"] = double_string(r.tolerance);
  if (r.seed) j["seed"] = r.seed;
  if (r.value_sq_exact) j["value_squared"] = rat_string(*r.value_sq_exact);
  return j;
}

Json to_json(const MomentSequence& m, int precision_bits) {
  Json rows = Json::array();
  auto bounds = radius_lower_bounds(m, precision_bits);
  // bounds: roots for n = 1..N, then ratios for n = 1..N-1
  std::size_t n_vals = m.tau.size();
  for (std::size_t i = 0; i < n_vals; ++i) {
    Json row;
    row["n"] = i + 1;
    row["tau_2n"] = rat_string(m.tau[i]);
    row["root_lower"] = double_string(bounds[i].value);
    if (i + 1 < n_vals) row["ratio_lower"] = double_string(bounds[n_vals + i].value);
    rows.push_back(row);
  }
  Json j;
  j["element"] = m.element;
  j["n_max"] = m.n_max;
  j["exact"] = m.exact;
  j["precision_bits"] = precision_bits;
  j["rows"] = rows;
  return j;
}

Json to_json(const ThresholdReport& r) {
  Json j;
  j["chosen_level_index"] = r.chosen_level_index;
  j["lambda"] = rat_string(r.lambda);
  j["x0"] = rat_string(r.x0);
  j["objective"] = rat_string(r.objective);
  j["I"] = rat_string(r.I);
  if (r.guarantee_met != GuaranteeStatus::NotApplicable) {
    j["alpha"] = double_string(r.alpha);
    j["guarantee"] = double_string(r.guarantee);
  }
  j["guarantee_met"] = guarantee_string(r.guarantee_met);
  j["precision_bits"] = r.precision_bits;
  return j;
}

Json to_json(const SkCertificate& c) {
  Json j;
  j["k"] = c.k;
  j["group"] = c.group;
  j["sigma"] = c.sigma;
  j["sigma_size"] = c.sigma_size;
  j["engine"] = c.radial_mode ? "radial" : "dense";
  if (c.radial_mode) {
    j["sk_spheres"] = c.sk_spheres;
  } else {
    Json ws = Json::array();
    for (const Word& w : c.sk_words) ws.push_back(word_string(w));
    j["sk_words"] = ws;
  }
  j["sk_size"] = c.sk_size.get_str();
  j["b_level"] = rat_string(c.b_level);
  j["b_l1"] = rat_string(c.b_l1);
  j["size_mk"] = c.size_mk.get_str();
  j["corollary3_ok"] = c.corollary3_ok;
  j["rho_sigma"] = to_json(c.rho_sigma);
  j["theorem1_rhs"] = double_string(c.theorem1_rhs);
  j["theorem1_rhs_lo"] = double_string(c.theorem1_rhs_lo);
  j["rhs_is_upper_bound"] = c.rhs_is_upper_bound;
  j["rho_sk_lower"] = to_json(c.rho_sk_lower);
  j["rho_sk_upper"] = to_json(c.rho_sk_upper);
  j["consistency_ok"] = c.consistency_ok;
  j["threshold"] = to_json(c.threshold);
  return j;
}

Json to_json(const AugmentReport& r) {
  Json j;
  j["s_prime"] = r.s_prime;
  j["s_prime_size"] = r.s_prime_size.get_str();
  j["sigma_subset"] = r.sigma_subset;
  j["bound"] = double_string(r.bound);
  j["simplified_bound"] = double_string(r.simplified_bound);
  return j;
}

Json to_json(const EpsilonReport& r) {
  Json j;
  j["epsilon"] = double_string(r.epsilon);
  j["epsilon_lo"] = double_string(r.epsilon_lo);
  j["epsilon_hi"] = double_string(r.epsilon_hi);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json jr;
    jr["k"] = row.k;
    jr["lhs_hi"] = double_string(row.lhs_hi);
    jr["rhs_lo"] = double_string(row.rhs_lo);
    jr["chain_ok"] = row.chain_ok;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  if (r.smallest_k)
    j["smallest_k"] = *r.smallest_k;
  else
    j["smallest_k"] = nullptr;
  return j;
}

Json to_json(const SharpnessRow& r) {
  Json j;
  j["n"] = r.n;
  j["I"] = double_string(r.I);
  j["objective"] = rat_string(r.objective);
  j["ratio"] = double_string(r.ratio);
  j["guarantee_applicable"] = r.guarantee_applicable;
  if (r.guarantee_applicable) {
    j["guarantee"] = double_string(r.guarantee);
    j["guarantee_met"] = r.guarantee_met;
  }
  return j;
}

Json to_json(const WalkResult& r) {
  Json j;
  j["frequency"] = double_string(r.frequency);
  j["stderr"] = double_string(r.stderr_est);
  j["returns"] = r.returns;
  j["trials"] = r.trials;
  j["steps"] = r.steps;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const GammaTrendRow& r) {
  Json j;
  j["n_pairs"] = r.n_pairs;
  j["set_size"] = r.set_size.get_str();
  j["rho"] = double_string(r.rho);
  j["gamma"] = double_string(r.gamma);
  j["ratio_to_sqrt_size"] = double_string(r.ratio_to_sqrt_size);
  return j;
}

}  // namespace spectra
