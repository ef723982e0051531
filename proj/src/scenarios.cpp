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


#include "tchsim/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "tchsim/thermal.hpp"

namespace tchsim {

namespace {

constexpr std::pair<ModelKind, std::string_view> kModelNames[] = {
    {ModelKind::AssocDissocNoSpin, "assoc_dissoc"},
    {ModelKind::AssocDissocSpin, "assoc_dissoc_spin"},
    {ModelKind::CovalentBond, "covalent_bond"},
    {ModelKind::JCM, "jcm"},
    {ModelKind::TCM, "tcm"},
    {ModelKind::TCHM, "tchm"},
};

struct ParamField {
  std::string_view key;
  double ModelParams::*member;
};

constexpr ParamField kParamFields[] = {
    {"freq_mol_up", &ModelParams::freq_mol_up},   {"freq_mol_down", &ModelParams::freq_mol_down},
    {"freq_at_up", &ModelParams::freq_at_up},     {"freq_at_down", &ModelParams::freq_at_down},
    {"freq_spin", &ModelParams::freq_spin},       {"freq_phonon", &ModelParams::freq_phonon},
    {"g_mol_up", &ModelParams::g_mol_up},         {"g_mol_down", &ModelParams::g_mol_down},
    {"g_at_up", &ModelParams::g_at_up},           {"g_at_down", &ModelParams::g_at_down},
    {"g_spin", &ModelParams::g_spin},             {"g_phonon", &ModelParams::g_phonon},
    {"zeta", &ModelParams::zeta},                 {"zeta0", &ModelParams::zeta0},
    {"zeta1", &ModelParams::zeta1},               {"zeta2", &ModelParams::zeta2},
};

bool is_assoc_dissoc(ModelKind k) {
  return k == ModelKind::AssocDissocNoSpin || k == ModelKind::AssocDissocSpin;
}

bool is_reference(ModelKind k) {
  return k == ModelKind::JCM || k == ModelKind::TCM || k == ModelKind::TCHM;
}

Variant variant_of(ModelKind k) {
  if (is_assoc_dissoc(k)) return Variant::AssocDissoc;
  if (k == ModelKind::CovalentBond) return Variant::CovalentBond;
  return Variant::Reference;
}

// Shortest %g text that reads back to the same double.
std::string exact(double v) {
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

// Rounds to the 12 significant digits used in every emitted file.
double round12(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

long long parse_int(std::string_view s) {
  s = trim(s);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view s) {
  const long long v = parse_int(s);
  if (v < 0) throw std::invalid_argument("expected a non-negative integer: " + std::string(s));
  return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("not a boolean: '" + std::string(s) + "'");
}

ModeId parse_mode(std::string_view s) {
  auto m = ModeId::from_name(trim(s));
  if (!m) throw std::invalid_argument("unknown mode: '" + std::string(s) + "'");
  return *m;
}

void set_channel(ScenarioConfig& c, ChannelSpec spec) {
  for (auto& ch : c.channels) {
    if (ch.mode == spec.mode) {
      ch = spec;
      return;
    }
  }
  c.channels.push_back(spec);
}

std::vector<Term> model_terms(const ScenarioConfig& c) {
  switch (c.model) {
    case ModelKind::AssocDissocNoSpin: return assoc_dissoc_terms(c.params, false);
    case ModelKind::AssocDissocSpin: return assoc_dissoc_terms(c.params, true);
    case ModelKind::CovalentBond: return covalent_bond_terms(c.params);
    case ModelKind::JCM:
    case ModelKind::TCM: return tcm_terms(c.cavities.at(0), c.rwa);
    case ModelKind::TCHM: return tchm_terms(c.cavities, c.hopping, c.rwa);
  }
  return {};
}

std::size_t total_atoms(const ScenarioConfig& c) {
  std::size_t n = 0;
  for (const auto& cav : c.cavities) n += cav.g.size();
  return n;
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  for (const auto& [k, name] : kModelNames) {
    if (k == kind) return name;
  }
  return "?";
}

ModelKind parse_model(std::string_view name) {
  for (const auto& [k, text] : kModelNames) {
    if (text == name) return k;
  }
  throw std::invalid_argument("unknown model: '" + std::string(name) + "'");
}

std::vector<ModeId> model_modes(const ScenarioConfig& c) {
  switch (c.model) {
    case ModelKind::AssocDissocNoSpin:
      return {ModeId::molecular(Spin::Up), ModeId::molecular(Spin::Down), ModeId::atomic(Spin::Up),
              ModeId::atomic(Spin::Down)};
    case ModelKind::AssocDissocSpin: return variant_modes(Variant::AssocDissoc);
    case ModelKind::CovalentBond: return variant_modes(Variant::CovalentBond);
    default: {
      std::vector<ModeId> modes;
      for (std::size_t i = 0; i < c.cavities.size(); ++i) modes.push_back(ModeId::generic(static_cast<int>(i)));
      return modes;
    }
  }
}

void ScenarioConfig::validate() const {
  params.validate();
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");
  if (is_reference(model)) {
    if (cavities.empty()) throw std::invalid_argument("model needs at least one cavity");
    if (model == ModelKind::JCM && (cavities.size() != 1 || cavities[0].g.size() != 1)) {
      throw std::invalid_argument("jcm needs one cavity with one atom");
    }
    if (model == ModelKind::TCM && cavities.size() != 1) throw std::invalid_argument("tcm needs one cavity");
    if (model == ModelKind::TCHM && cavities.size() < 2) throw std::invalid_argument("tchm needs two or more cavities");
    for (const auto& cav : cavities) {
      if (cav.g.empty()) throw std::invalid_argument("every cavity needs at least one atom");
    }
  }
  if (initial.empty()) throw std::invalid_argument("initial state is empty");
  double norm = 0.0;
  for (const auto& comp : initial) {
    if (comp.state.variant() != variant_of(model)) {
      throw std::invalid_argument("initial state " + comp.state.render() + " does not belong to model " +
                                  std::string(model_name(model)));
    }
    if (is_reference(model) &&
        (static_cast<std::size_t>(comp.state.photon_count()) != cavities.size() ||
         static_cast<std::size_t>(comp.state.orbital_slots()) != total_atoms(*this))) {
      throw std::invalid_argument("initial state " + comp.state.render() + " does not match the cavities");
    }
    norm += comp.amplitude * comp.amplitude;
  }
  if (!(norm > 0.0)) throw std::invalid_argument("initial amplitudes are all zero");
  const auto modes = model_modes(*this);
  for (const auto& ch : channels) {
    if (std::find(modes.begin(), modes.end(), ch.mode) == modes.end()) {
      throw std::invalid_argument("channel mode " + ch.mode.name() + " does not exist in model " +
                                  std::string(model_name(model)));
    }
    if (!(ch.gamma_out > 0.0)) throw std::invalid_argument("channel " + ch.mode.name() + ": gamma_out must be positive");
    if (!(ch.mu >= 0.0) || !(ch.mu < 1.0)) {
      throw std::invalid_argument("channel " + ch.mode.name() + ": mu must lie in [0, 1)");
    }
  }
  for (std::size_t i = 0; i < channels.size(); ++i) {
    for (std::size_t j = i + 1; j < channels.size(); ++j) {
      if (channels[i].mode == channels[j].mode) {
        throw std::invalid_argument("duplicate channel for mode " + channels[i].mode.name());
      }
    }
  }
}

Cutoffs resolve_cutoffs(const ScenarioConfig& c) {
  const auto active = model_modes(c);
  // Slots the model never touches (Omega_s without spin) keep their initial
  // occupation.
  std::vector<ModeId> slots = active;
  if (is_assoc_dissoc(c.model)) slots = variant_modes(Variant::AssocDissoc);
  Cutoffs out;
  for (ModeId m : slots) {
    if (c.cutoffs.has(m)) {
      out.set(m, c.cutoffs.of(m));
      continue;
    }
    const bool used = std::find(active.begin(), active.end(), m) != active.end();
    bool pumped = false;
    for (const auto& ch : c.channels) pumped = pumped || (ch.mode == m && ch.mu > 0.0);
    int top = used ? (c.closure_influx && pumped ? 2 : 1) : 0;
    for (const auto& comp : c.initial) top = std::max(top, comp.state.occupation(m));
    out.set(m, top);
  }
  return out;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  bool initial_from_file = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("expected 'key = value'");
      const std::string_view key = trim(line.substr(0, eq));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key == "base") {
        const std::string out = c.output;
        c = builtin_scenario(value);
        if (!out.empty()) c.output = out;
      } else if (key == "name") {
        c.name = std::string(value);
      } else if (key == "model") {
        c.model = parse_model(value);
      } else if (key == "steps") {
        c.steps = parse_count(value);
      } else if (key == "dt") {
        c.dt = parse_double(value);
      } else if (key == "stride") {
        c.stride = parse_count(value);
      } else if (key == "closure_influx") {
        c.closure_influx = parse_bool(value);
      } else if (key == "rwa") {
        c.rwa = parse_bool(value);
      } else if (key == "hopping") {
        c.hopping = parse_double(value);
      } else if (key == "output") {
        c.output = std::string(value);
      } else if (key == "initial") {
        if (!initial_from_file) c.initial.clear();
        initial_from_file = true;
        const auto bar = value.find('|');
        if (bar == std::string_view::npos) throw std::invalid_argument("initial needs a state '|...>'");
        const auto amp = trim(value.substr(0, bar));
        c.initial.push_back({amp.empty() ? 1.0 : parse_double(amp), parse_basis_state(value.substr(bar))});
      } else if (key == "channel") {
        const auto tok = split_ws(value);
        if (tok.size() != 3) throw std::invalid_argument("channel needs '<mode> <gamma_out> <mu>'");
        set_channel(c, {parse_mode(tok[0]), parse_double(tok[1]), parse_double(tok[2])});
      } else if (key == "cavity") {
        const auto tok = split_ws(value);
        if (tok.size() < 3) throw std::invalid_argument("cavity needs '<omega_c> <omega_a> <g1> [g2 ...]'");
        CavityParams cav{parse_double(tok[0]), parse_double(tok[1]), {}};
        for (std::size_t i = 2; i < tok.size(); ++i) cav.g.push_back(parse_double(tok[i]));
        c.cavities.push_back(std::move(cav));
      } else if (key.starts_with("cutoff.")) {
        const long long v = parse_int(value);
        if (v < 0 || v > Cutoffs::kUnbounded) throw std::invalid_argument("cutoff out of range");
        c.cutoffs.set(parse_mode(key.substr(7)), static_cast<int>(v));
      } else if (key == "param.bond_broken_is_excited") {
        c.params.bond_broken_is_excited = parse_bool(value);
      } else if (key.starts_with("param.")) {
        const auto field = key.substr(6);
        auto it = std::find_if(std::begin(kParamFields), std::end(kParamFields),
                               [&](const ParamField& f) { return f.key == field; });
        if (it == std::end(kParamFields)) throw std::invalid_argument("unknown parameter '" + std::string(field) + "'");
        c.params.*(it->member) = parse_double(value);
      } else {
        throw std::invalid_argument("unknown key '" + std::string(key) + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

namespace {

std::string config_body(const ScenarioConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += std::string(key) + " = " + value + "\n";
  };
  line("name", c.name);
  line("model", std::string(model_name(c.model)));
  line("steps", std::to_string(c.steps));
  line("dt", exact(c.dt));
  line("stride", std::to_string(c.stride));
  line("closure_influx", c.closure_influx ? "true" : "false");
  if (is_reference(c.model)) {
    line("rwa", c.rwa ? "true" : "false");
    line("hopping", exact(c.hopping));
    for (const auto& cav : c.cavities) {
      std::string v = exact(cav.omega_c) + " " + exact(cav.omega_a);
      for (double g : cav.g) v += " " + exact(g);
      line("cavity", v);
    }
  } else {
    for (const auto& f : kParamFields) line("param." + std::string(f.key), exact(c.params.*(f.member)));
    line("param.bond_broken_is_excited", c.params.bond_broken_is_excited ? "true" : "false");
  }
  for (const auto& comp : c.initial) line("initial", exact(comp.amplitude) + " " + comp.state.render());
  for (const auto& ch : c.channels) {
    line("channel", ch.mode.name() + " " + exact(ch.gamma_out) + " " + exact(ch.mu));
  }
  for (const auto& [mode, cutoff] : c.cutoffs.limits()) line("cutoff." + mode.name(), std::to_string(cutoff));
  return out;
}

}  // namespace

std::string to_config_text(const ScenarioConfig& c) {
  std::string out = config_body(c);
  if (!c.output.empty()) out += "output = " + c.output + "\n";
  return out;
}

std::uint64_t config_hash(const ScenarioConfig& c) { return fnv1a64(config_body(c)); }

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"fig4a", "fig4b", "fig5", "fig6", "fig7", "fig8", "fig9"};
  return names;
}

ScenarioConfig builtin_scenario(std::string_view name) {
  using namespace orbital;
  ScenarioConfig c;
  c.name = std::string(name);
  const double gamma = 0.1 * c.params.g_at_up;
  const std::uint32_t two_down = (1U << atomic_bit(0, Level::Ground, Spin::Down)) |
                                 (1U << atomic_bit(1, Level::Ground, Spin::Down));

  if (name == "fig9") {
    c.model = ModelKind::CovalentBond;
    // (Phi0 Phi0 + Phi1up Phi0dn - Phi0up Phi1dn - Phi1 Phi1) / 2, no quanta, bond broken, apart.
    c.initial = {
        {0.5, BasisState::covalent_bond(0, 0, 0, false, false, true, true)},
        {0.5, BasisState::covalent_bond(0, 0, 0, true, false, true, true)},
        {-0.5, BasisState::covalent_bond(0, 0, 0, false, true, true, true)},
        {-0.5, BasisState::covalent_bond(0, 0, 0, true, true, true, true)},
    };
    for (ModeId m : variant_modes(Variant::CovalentBond)) c.channels.push_back({m, gamma, 0.0});
    return c;
  }

  const double mu_omega = name == "fig7" ? 0.5 : 0.0;
  c.channels = {
      {ModeId::molecular(Spin::Up), gamma, mu_omega},
      {ModeId::molecular(Spin::Down), gamma, mu_omega},
      {ModeId::atomic(Spin::Up), gamma, 0.5},
      {ModeId::atomic(Spin::Down), gamma, 0.5},
  };
  if (name == "fig4a") {
    c.model = ModelKind::AssocDissocNoSpin;
    c.initial = {{1.0, BasisState::assoc_dissoc({0, 0, 1, 1, 0}, two_down, true)}};
    return c;
  }
  if (name == "fig4b" || name == "fig5" || name == "fig6" || name == "fig7" || name == "fig8") {
    c.model = ModelKind::AssocDissocSpin;
    c.initial = {{1.0, BasisState::assoc_dissoc({0, 0, 1, 1, 1}, two_down, true)}};
    c.channels.push_back({ModeId::spin(), gamma, 0.5});
    return c;
  }
  std::string known;
  for (const auto& n : builtin_names()) known += " " + n;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "' (builtin:" + known + ")");
}

ScenarioConfig resolve_scenario(std::string_view name_or_path) {
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return builtin_scenario(name_or_path);
  }
  const std::filesystem::path path(name_or_path);
  if (std::filesystem::exists(path)) return load_config(path);
  return builtin_scenario(name_or_path);  // throws with the list of names
}

BuiltModel build_model(const ScenarioConfig& c) {
  c.validate();
  BuiltModel m;
  RuleSet rules;
  rules.terms = model_terms(c);
  rules.cutoffs = resolve_cutoffs(c);
  for (const auto& ch : c.channels) rules.channels.push_back({ch.mode, c.closure_influx && ch.mu > 0.0});
  std::vector<BasisState> seeds;
  for (const auto& comp : c.initial) seeds.push_back(comp.state);
  m.basis = generate_basis(seeds, rules);
  m.hamiltonian = assemble(rules.terms, m.basis);

  for (const auto& ch : c.channels) {
    m.channels.push_back({mode_operator(m.basis, ch.mode), ch.gamma_out, ch.gamma_out * ch.mu, ch.mode.name()});
  }

  const auto n = static_cast<Eigen::Index>(m.basis.size());
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
  for (const auto& comp : c.initial) psi[static_cast<Eigen::Index>(*m.basis.index_of(comp.state))] += comp.amplitude;
  psi /= psi.norm();
  m.rho0 = psi * psi.adjoint();

  SparseOperator p_initial(m.basis.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (psi[i] != Complex(0.0) && psi[j] != Complex(0.0)) {
        p_initial.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j), psi[i] * std::conj(psi[j]));
      }
    }
  }
  m.observables.push_back({"P_initial", p_initial.normalize()});

  const Basis& b = m.basis;
  if (is_assoc_dissoc(c.model)) {
    using namespace orbital;
    const int g_up = molecular_bit(Level::Ground, Spin::Up);
    const int g_dn = molecular_bit(Level::Ground, Spin::Down);
    m.observables.push_back({"P_final", projector(b, [&](const BasisState& s) {
                               return !s.nuclei_apart() && s.bit(g_up) && s.bit(g_dn);
                             })});
    m.observables.push_back({"P_A", projector(b, [](const BasisState& s) { return !s.nuclei_apart(); })});
    m.observables.push_back({"P_D", projector(b, [](const BasisState& s) { return s.nuclei_apart(); })});
  } else if (c.model == ModelKind::CovalentBond) {
    m.observables.push_back({"P_final", projector(b, [](const BasisState& s) {
                               return !s.bond_broken() && !s.bit(0) && !s.bit(1);
                             })});
    m.observables.push_back({"P_cb0", projector(b, [](const BasisState& s) { return !s.bond_broken(); })});
    m.observables.push_back({"P_cb1", projector(b, [](const BasisState& s) { return s.bond_broken(); })});
  } else {
    m.observables.push_back({"P_final", projector(b, [](const BasisState& s) {
                               return s.electrons() == 0 &&
                                      std::all_of(s.photons().begin(), s.photons().end(),
                                                  [](std::uint8_t p) { return p == 0; });
                             })});
    m.observables.push_back({"P_exc", projector(b, [](const BasisState& s) { return s.electrons() != 0; })});
    m.observables.push_back({"P_gnd", projector(b, [](const BasisState& s) { return s.electrons() == 0; })});
  }
  return m;
}

double ScenarioResult::final_value(std::string_view label) const {
  for (std::size_t i = 0; i < series.labels.size(); ++i) {
    if (series.labels[i] == label) return series.samples.back().values.at(i);
  }
  throw std::invalid_argument("no observable '" + std::string(label) + "'");
}

ScenarioResult run_scenario(const ScenarioConfig& config, bool track_min_eig) {
  const BuiltModel m = build_model(config);
  ScenarioResult r;
  r.config = config;
  r.basis_size = m.basis.size();
  r.config_hash = config_hash(config);
  EvolveOptions opt;
  opt.steps = config.steps;
  opt.dt = config.dt;
  opt.stride = config.stride;
  opt.track_min_eig = track_min_eig;
  r.series = evolve(m.hamiltonian, m.channels, m.rho0, m.observables, opt);
  return r;
}

std::string hex64(std::uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string render(const ScenarioResult& r, OutputFormat format) {
  if (format == OutputFormat::Csv) return to_csv(r.series);
  nlohmann::ordered_json j;
  j["name"] = r.config.name;
  j["model"] = std::string(model_name(r.config.model));
  j["config_hash"] = hex64(r.config_hash);
  j["basis_size"] = r.basis_size;
  j["steps"] = r.config.steps;
  j["dt"] = round12(r.config.dt);
  j["stride"] = r.config.stride;
  nlohmann::ordered_json fin;
  const Sample& last = r.series.samples.back();
  fin["step"] = last.step;
  for (std::size_t i = 0; i < r.series.labels.size(); ++i) fin[r.series.labels[i]] = round12(last.values[i]);
  j["final"] = fin;
  j["max_step_drift"] = round12(r.series.max_step_drift);
  j["cumulative_drift"] = round12(r.series.cumulative_drift);
  j["max_hermiticity_deviation"] = round12(r.series.max_hermiticity_deviation);
  j["min_eig"] = round12(r.series.min_eig);
  return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void emit(const ScenarioResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "timeseries.csv", render(r, OutputFormat::Csv));
  write_file(dir / "summary.json", render(r, OutputFormat::Json));
  write_file(dir / "basis.json", basis_to_json(build_model(r.config).basis) + "\n");
  write_file(dir / "config.txt", to_config_text(r.config));
}

std::string_view sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::MuOmega: return "mu_omega";
    case SweepParam::MuBigOmega: return "mu_Omega";
    case SweepParam::MuSpin: return "mu_Omega_s";
    case SweepParam::Locked: return "locked";
  }
  return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
  for (SweepParam p : {SweepParam::MuOmega, SweepParam::MuBigOmega, SweepParam::MuSpin, SweepParam::Locked}) {
    if (sweep_param_name(p) == name) return p;
  }
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                              "' (mu_omega, mu_Omega, mu_Omega_s, locked)");
}

std::vector<double> parse_grid(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos) throw std::invalid_argument("grid must be start:stop:n");
  const double start = parse_double(text.substr(0, a));
  const double stop = parse_double(text.substr(a + 1, b - a - 1));
  const long long n = parse_int(text.substr(b + 1));
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> grid;
  for (long long i = 0; i < n; ++i) {
    grid.push_back(n == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return grid;
}

SweepConfig builtin_sweep(std::string_view name) {
  SweepConfig s;
  s.base = builtin_scenario(name);
  if (name == "fig5") {
    s.param = SweepParam::MuBigOmega;
  } else if (name == "fig6") {
    s.param = SweepParam::MuOmega;
  } else if (name == "fig7") {
    s.param = SweepParam::Locked;
  } else if (name == "fig8") {
    s.param = SweepParam::MuSpin;
  } else {
    throw std::invalid_argument("scenario '" + std::string(name) + "' has no default sweep (fig5..fig8)");
  }
  s.grid = parse_grid("0:0.5:51");
  return s;
}

void apply_sweep_value(ScenarioConfig& c, SweepParam param, double value) {
  std::vector<ModeId> modes;
  const std::vector<ModeId> omega{ModeId::molecular(Spin::Up), ModeId::molecular(Spin::Down)};
  const std::vector<ModeId> big{ModeId::atomic(Spin::Up), ModeId::atomic(Spin::Down)};
  switch (param) {
    case SweepParam::MuOmega: modes = omega; break;
    case SweepParam::MuBigOmega: modes = big; break;
    case SweepParam::MuSpin: modes = {ModeId::spin()}; break;
    case SweepParam::Locked:
      modes = omega;
      modes.insert(modes.end(), big.begin(), big.end());
      break;
  }
  for (ModeId m : modes) {
    auto it = std::find_if(c.channels.begin(), c.channels.end(), [&](const ChannelSpec& ch) { return ch.mode == m; });
    if (it == c.channels.end()) {
      throw std::invalid_argument("sweep " + std::string(sweep_param_name(param)) + ": scenario has no channel on " +
                                  m.name());
    }
    it->mu = value;
  }
}

namespace {

double sweep_frequency(const ModelParams& p, SweepParam param) {
  switch (param) {
    case SweepParam::MuOmega: return p.freq_mol_up;
    case SweepParam::MuSpin: return p.freq_spin;
    default: return p.freq_at_up;
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& sweep) {
  if (sweep.grid.empty()) throw std::invalid_argument("sweep grid is empty");
  if (sweep.report_at < 1) throw std::invalid_argument("report-at must be at least 1");
  std::vector<ScenarioConfig> configs;
  for (double v : sweep.grid) {
    ScenarioConfig c = sweep.base;
    apply_sweep_value(c, sweep.param, v);
    c.steps = sweep.report_at;
    c.stride = sweep.report_at;
    c.validate();
    configs.push_back(std::move(c));
  }

  std::vector<SweepRow> rows(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const ScenarioResult r = run_scenario(configs[i], false);
        const double v = sweep.grid[i];
        rows[i] = {v, mu_to_temperature(v, sweep_frequency(configs[i].params, sweep.param)),
                   r.final_value("P_final")};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = sweep.workers != 0 ? sweep.workers : std::max(1U, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, configs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "mu,T,P_final\n";
  for (const auto& r : rows) {
    out += format_number(r.value) + "," + format_number(r.temperature) + "," + format_number(r.p_final) + "\n";
  }
  return out;
}

}  // namespace tchsim
