#include "report.hpp"

#include <sstream>

namespace wwlab::cli {

namespace {

OperatorArray2D load_array(json& r, const Common& common) {
  json& a = r["array"];
  const Eigen::Index N = required(a, "N").get<Eigen::Index>();
  const MultiIndex n = io::multi_index_from_json(required(a, "n"));
  if (n.size() != 2 || (n.array() < 1).any()) throw Error(ErrorKind::invalid_argument, "array.n must be two positive integers");
  const MultiIndex s = param_index(a, "storage", n);
  if (s.size() != 2 || !componentwise_le(n, s)) throw Error(ErrorKind::invalid_argument, "array.storage must be >= n");
  if (a.contains("constant")) {
    const Operator v = io::operator_from_json(a["constant"]);
    if (v.rows() != N) throw Error(ErrorKind::dimension_mismatch, "array.constant size differs from N");
    return OperatorArray2D::constant(v, n[0], n[1], s[0], s[1]);
  }
  if (a.value("random", false)) {
    Rng rng(require_seed(r, common));
    return OperatorArray2D::random(rng, N, n[0], n[1], s[0], s[1]);
  }
  OperatorArray2D arr(N, n[0], n[1], s[0], s[1]);
  for (const auto& e : required(a, "entries")) {
    const MultiIndex j = io::multi_index_from_json(required(e, "index"));
    if (j.size() != 2 || j[0] < 1 || j[1] < 1 || j[0] > s[0] || j[1] > s[1])
      throw Error(ErrorKind::out_of_range, "array entry index " + to_string(j) + " is outside the storage");
    const Operator v = io::operator_from_json(required(e, "value"));
    if (v.rows() != N) throw Error(ErrorKind::dimension_mismatch, "array entry size differs from N");
    arr.at(j[0], j[1]) = v;
  }
  return arr;
}

}  // namespace

Outcome vdc_check(const json& config, const Common& common) {
  Outcome out;
  out.config = config;
  json& r = out.config;
  const double tol = param(r, "tolerance", 1e-10);
  std::ostringstream csv;
  csv.precision(17);
  csv << "h1,h2,lhs,rhs,outside_hypothesis\n";
  json payload = json::object();
  bool violated = false;

  if (r.contains("array")) {
    const OperatorArray2D arr = load_array(r, common);
    std::vector<std::pair<std::int64_t, std::int64_t>> hs;
    if (r.contains("h")) {
      const MultiIndex h = io::multi_index_from_json(r["h"]);
      if (h.size() != 2 || !all_nonnegative(h)) throw Error(ErrorKind::invalid_argument, "h must be two integers >= 0");
      hs.emplace_back(h[0], h[1]);
    } else {
      for (std::int64_t h1 = 0; h1 <= arr.n1(); ++h1)
        for (std::int64_t h2 = 0; h2 <= arr.n2(); ++h2) hs.emplace_back(h1, h2);
    }
    json bounds = json::array();
    for (const auto& [h1, h2] : hs) {
      const VdcBound b = vdc_bound(arr, h1, h2);
      json entry = io::to_json(b);
      entry["h"] = {h1, h2};
      entry["violation"] = b.lhs > b.rhs + tol;
      if (b.lhs > b.rhs + tol && !b.outside_hypothesis) violated = true;
      bounds.push_back(std::move(entry));
      csv << h1 << "," << h2 << "," << b.lhs << "," << b.rhs << "," << (b.outside_hypothesis ? 1 : 0) << "\n";
    }
    payload["bounds"] = bounds;
  }

  if (r.contains("wwproof")) {
    json& w = r["wwproof"];
    const MatrixSystem sys = load_system(w, "system", common);
    const Operator x = w.contains("x") ? io::operator_from_json(w["x"]) : Operator::Identity(sys.size(), sys.size());
    const Projection e(w.contains("e") ? io::operator_from_json(w["e"]) : Operator::Identity(sys.size(), sys.size()));
    const MultiIndex n = param_index(w, "n", multi_index({8, 8}));
    const MultiIndex h = param_index(w, "h", multi_index({2, 2}));
    const MultiIndex grid = param_index(w, "grid", multi_index({16, 16}));
    const double wtol = param(w, "tolerance", 1e-8);
    const WwProofReport rep = vdc_apply_wwproof(sys, x, e, n, h, grid, wtol);
    if (rep.violation && !rep.outside_hypothesis) violated = true;
    payload["wwproof"] = io::to_json(rep);
  }
  if (payload.empty()) throw Error(ErrorKind::invalid_argument, "vdc check needs an \"array\" or \"wwproof\" block");
  payload["violation"] = violated;
  out.payload = payload;
  out.csv = csv.str();
  if (violated) out.exit_code = kExitInvariant;
  return out;
}

Outcome vdc_fuzz(const json& config, const Common& common) {
  Outcome out;
  out.config = config;
  json& r = out.config;
  VdcFuzzConfig c;
  c.seed = require_seed(r, common);
  c.trials = param(r, "trials", c.trials);
  c.max_dim = param(r, "max_dim", c.max_dim);
  const MultiIndex max_n = param_index(r, "max_n", multi_index({c.max_n1, c.max_n2}));
  if (max_n.size() != 2 || (max_n.array() < 1).any()) throw Error(ErrorKind::invalid_argument, "max_n must be two positive integers");
  c.max_n1 = max_n[0];
  c.max_n2 = max_n[1];
  c.h_policy = param(r, "h_policy", c.h_policy);
  c.tolerance = param(r, "tolerance", c.tolerance);
  c.include_zero_trial = param(r, "include_zero_trial", c.include_zero_trial);
  const VdcFuzzReport rep = vdc_fuzz(c);
  out.payload = io::to_json(rep);
  if (rep.violations > 0) out.exit_code = kExitInvariant;
  return out;
}

}  // namespace wwlab::cli
