// Copyright 2026 The tchsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance run: one PASS/FAIL line per criterion. Criteria listed with
// --expect-fail are reported the same way but do not change the exit code.

#include <chrono>
#include <functional>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tchsim/generator.hpp"
#include "tchsim/lindblad.hpp"
#include "tchsim/scenarios.hpp"
#include "tchsim/tensor.hpp"
#include "tchsim/thermal.hpp"

using namespace tchsim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Runs keyed by config hash; identical configs are simulated once.
class RunCache {
 public:
  const ScenarioResult& get(const ScenarioConfig& c) {
    const auto key = config_hash(c);
    auto it = runs_.find(key);
    if (it == runs_.end()) it = runs_.emplace(key, run_scenario(c)).first;
    return it->second;
  }

 private:
  std::map<std::uint64_t, ScenarioResult> runs_;
};

double oracle_mismatch(const TensorModel& oracle, const Basis& b, const SparseOperator& h) {
  return (oracle.restrict_to(product_indices(oracle, b)) - h.to_dense()).cwiseAbs().maxCoeff();
}

Outcome criterion1() {
  double worst = 0.0;
  const double w = 1.0, g = 0.05;
  const CavityParams one{w, w, {g}};
  DenseMatrix c1(4, 4);
  c1 << 0, 0, 0, 0, 0, w, g, 0, 0, g, w, 0, 0, 0, 0, 2 * w;
  worst = std::max(worst, (tensor_tcm(one, true, 1).to_dense() - c1).cwiseAbs().maxCoeff());

  for (bool leaky : {true, false}) {
    RuleSet r;
    r.terms = tcm_terms(one, true);
    r.cutoffs.set(ModeId::generic(0), 1);
    if (leaky) r.channels.push_back({ModeId::generic(0), false});
    const Basis b = generate_basis(BasisState::reference({0}, 1, 1), r);
    if (b.size() != (leaky ? 3U : 2U)) return {false, "reduced basis has " + std::to_string(b.size()) + " states"};
    worst = std::max(worst, oracle_mismatch(tensor_tcm(one, true, 1), b, build_tcm(1, w, w, {g}, true, b)));
  }

  const CavityParams two{1.0, 0.9, {0.02, 0.03}};
  for (bool rwa : {true, false}) {
    RuleSet r;
    r.terms = tcm_terms(two, rwa);
    r.cutoffs.set(ModeId::generic(0), 1);
    r.channels.push_back({ModeId::generic(0), false});
    const Basis b = generate_basis(BasisState::reference({0}, 1, 2), r);
    worst = std::max(worst, oracle_mismatch(tensor_tcm(two, rwa, 1), b, build_tcm(2, 1.0, 0.9, two.g, rwa, b)));
  }

  for (const char* name : {"fig4a", "fig4b"}) {
    ScenarioConfig c = builtin_scenario(name);
    c.closure_influx = std::string(name) == "fig4a";
    for (ModeId mode : model_modes(c)) c.cutoffs.set(mode, 1);
    const BuiltModel m = build_model(c);
    const TensorModel oracle =
        tensor_assoc_dissoc(c.params, c.model == ModelKind::AssocDissocSpin, resolve_cutoffs(c));
    worst = std::max(worst, oracle_mismatch(oracle, m.basis, m.hamiltonian));
  }
  return {worst <= 1e-12, "max entry mismatch " + fmt("%.3g", worst) + " (4x4, 3x3, 2x2, N=2, H2 cutoff 1)"};
}

Outcome criterion2() {
  const ScenarioConfig c = builtin_scenario("fig4b");
  const Basis a = build_model(c).basis;
  const Basis b = build_model(c).basis;
  const bool stable = basis_to_json(a) == basis_to_json(b);
  const bool ok = stable && a.size() == 192 && a.size() * 10 <= 16384;
  return {ok, "basis " + std::to_string(a.size()) + " states (golden 192, limit 1638), stable " +
                  (stable ? "yes" : "no")};
}

Outcome criterion3(RunCache& cache) {
  using namespace orbital;
  const ScenarioConfig c = builtin_scenario("fig4a");
  const ScenarioResult& r = cache.get(c);
  double max_final = 0.0, min_d = 1.0;
  for (const Sample& s : r.series.samples) {
    max_final = std::max(max_final, s.values[1]);
    min_d = std::min(min_d, s.values[3]);
  }
  bool up_free = true;
  for (const auto& s : build_model(c).basis) {
    for (int bit = 0; bit < s.orbital_slots(); ++bit) {
      if (!s.bit(bit)) continue;
      if (bit % 2 == 0) up_free = false;  // even slots are spin up in both layouts
    }
  }
  const bool ok = max_final <= 1e-9 && min_d >= 1.0 - 1e-9 && up_free;
  return {ok, "max P_final " + fmt("%.3g", max_final) + ", min P_D " + fmt("%.12g", min_d) +
                  ", up-electron states in basis: " + (up_free ? "none" : "present")};
}

Outcome criterion4(RunCache& cache) {
  const ScenarioResult& r = cache.get(builtin_scenario("fig4b"));
  const double pf = r.final_value("P_final");
  const double pa = r.final_value("P_A");
  return {pf >= 0.95 && pa >= 0.95, "step 20000: P_final " + fmt("%.6g", pf) + ", P_A " + fmt("%.6g", pa)};
}

double final_p(RunCache& cache, const char* base, SweepParam param, double mu) {
  ScenarioConfig c = builtin_scenario(base);
  c.name = "fig4b";  // the sweep bases share fig4b's physics; share its runs too
  apply_sweep_value(c, param, mu);
  return cache.get(c).final_value("P_final");
}

Outcome criterion5(RunCache& cache) {
  const double grid[] = {0.0, 0.1, 0.3, 0.5};
  struct Sweep {
    const char* name;
    SweepParam param;
    bool increasing;
  };
  const Sweep sweeps[] = {{"fig5", SweepParam::MuBigOmega, true},
                          {"fig8", SweepParam::MuSpin, true},
                          {"fig6", SweepParam::MuOmega, false}};
  bool ok = true;
  std::ostringstream detail;
  for (const Sweep& s : sweeps) {
    std::vector<double> p;
    for (double mu : grid) p.push_back(final_p(cache, s.name, s.param, mu));
    bool monotone = true;
    for (std::size_t i = 1; i < p.size(); ++i) {
      monotone = monotone && (s.increasing ? p[i] >= p[i - 1] : p[i] <= p[i - 1]);
    }
    const double margin = s.increasing ? p.back() - p.front() : p.front() - p.back();
    const bool good = monotone && margin >= 0.1;
    ok = ok && good;
    detail << s.name << " " << sweep_param_name(s.param) << " [";
    for (std::size_t i = 0; i < p.size(); ++i) detail << (i ? " " : "") << fmt("%.3g", p[i]);
    detail << "] " << (s.increasing ? "nondecreasing " : "nonincreasing ") << (monotone ? "yes" : "no")
           << ", margin " << fmt("%.3g", margin) << "; ";
  }
  std::string d = detail.str();
  d.resize(d.size() - 2);
  return {ok, d};
}

Outcome criterion6(RunCache& cache) {
  double worst = 0.0;
  for (double mu : {0.0, 0.1, 0.3, 0.5}) worst = std::max(worst, final_p(cache, "fig7", SweepParam::Locked, mu));
  return {worst <= 0.05, "locked mu_Omega = mu_omega over {0, 0.1, 0.3, 0.5}: max P_final " + fmt("%.3g", worst)};
}

Outcome criterion7(RunCache& cache) {
  const ScenarioResult& r = cache.get(builtin_scenario("fig9"));
  const double pf = r.final_value("P_final");
  const double cb0 = r.final_value("P_cb0");
  return {pf >= 0.95 && cb0 >= 0.95, "step 20000: P_final " + fmt("%.6g", pf) + ", P_cb0 " + fmt("%.6g", cb0)};
}

Outcome criterion8() {
  ProductSystem sys;
  sys.photon = ThermalSpec{ModeId::generic(0), 0.5, 2};
  sys.rho_photon = DenseMatrix::Zero(3, 3);
  sys.rho_photon(0, 0) = 1.0;
  const StationarityReport r = verify_product_stationarity(sys, 10000, 0.01);
  const double target[] = {4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0};
  double linf = 0.0;
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) linf = std::max(linf, std::abs(r.final_photon(p, q) - (p == q ? target[p] : 0.0)));
  }
  return {linf <= 1e-4 && r.max_flow_mismatch <= 1e-6,
          "L_inf to diag(4/7, 2/7, 1/7) " + fmt("%.3g", linf) + ", flow mismatch " + fmt("%.3g", r.max_flow_mismatch)};
}

Outcome criterion9(RunCache& cache) {
  const ScenarioResult& r = cache.get(builtin_scenario("fig4b"));
  const double g = 0.05;
  ScenarioConfig jcm;
  jcm.name = "rabi";
  jcm.model = ModelKind::JCM;
  jcm.cavities = {CavityParams{1.0, 1.0, {g}}};
  jcm.initial = {{1.0, BasisState::reference({1}, 0, 1)}};
  jcm.steps = 400;
  jcm.dt = M_PI / g / 400.0;
  jcm.stride = 1;
  const ScenarioResult rabi = run_scenario(jcm);
  double rabi_err = 0.0;
  for (const Sample& s : rabi.series.samples) {
    const double c = std::cos(g * s.time);
    rabi_err = std::max(rabi_err, std::abs(s.values[0] - c * c));
  }
  const bool ok = r.series.max_step_drift <= 1e-6 && r.series.max_hermiticity_deviation <= 1e-12 &&
                  rabi_err <= 1e-6 && r.series.min_eig >= -1e-6;
  return {ok, "drift/step " + fmt("%.3g", r.series.max_step_drift) + ", hermiticity " +
                  fmt("%.3g", r.series.max_hermiticity_deviation) + ", Rabi error " + fmt("%.3g", rabi_err) +
                  ", fig4b min eigenvalue " + fmt("%.3g", r.series.min_eig)};
}

Outcome criterion10(RunCache& cache) {
  std::size_t identical = 0;
  std::string differing;
  for (const auto& name : builtin_names()) {
    const ScenarioConfig c = builtin_scenario(name);
    const ScenarioResult& first = cache.get(c);
    const ScenarioResult second = run_scenario(c);
    const bool same = render(first, OutputFormat::Csv) == render(second, OutputFormat::Csv) &&
                      render(first, OutputFormat::Json) == render(second, OutputFormat::Json);
    if (same) {
      ++identical;
    } else {
      differing += " " + name;
    }
  }
  return {differing.empty(), std::to_string(identical) + "/" + std::to_string(builtin_names().size()) +
                                 " builtin scenarios byte-identical across two runs" +
                                 (differing.empty() ? "" : "; differing:" + differing)};
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected_fail = parse_list(argv[++i]);
    } else if (arg == "--only" && i + 1 < argc) {
      only = parse_list(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only 1,2,..] [--expect-fail 4,5]\n");
      return 2;
    }
  }

  RunCache cache;
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", [] { return criterion1(); }},
      {2, "basis reduction", [] { return criterion2(); }},
      {3, "no-spin impossibility", [&] { return criterion3(cache); }},
      {4, "formation with spin", [&] { return criterion4(cache); }},
      {5, "temperature monotonicity", [&] { return criterion5(cache); }},
      {6, "counteraction", [&] { return criterion6(cache); }},
      {7, "covalent-bond model", [&] { return criterion7(cache); }},
      {8, "thermalization oracle", [] { return criterion8(); }},
      {9, "integrator properties", [&] { return criterion9(cache); }},
      {10, "determinism", [&] { return criterion10(cache); }},
  };

  int unexpected = 0, passed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++ran;
    passed += o.pass;
    const bool expected = expected_fail.count(c.id) > 0;
    if (!o.pass && !expected) ++unexpected;
    std::printf("criterion %2d %s: %s: %s%s [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(),
                !o.pass && expected ? " (known failure)" : (o.pass && expected ? " (expected to fail, passed)" : ""),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria pass; %d unexpected failure(s)\n", passed, ran, unexpected);
  return unexpected == 0 ? 0 : 1;
}
