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

#include "tchsim/fock.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tchsim {

namespace {

constexpr std::array<std::pair<ModeId::Label, std::string_view>, 6> kModeNames{{
    {ModeId::Label::MolecularUp, "omega_up"},
    {ModeId::Label::MolecularDown, "omega_down"},
    {ModeId::Label::AtomicUp, "Omega_up"},
    {ModeId::Label::AtomicDown, "Omega_down"},
    {ModeId::Label::Spin, "Omega_s"},
    {ModeId::Label::Phonon, "Omega_c"},
}};

std::uint8_t checked_occupation(int value) {
  if (value < 0 || value > 255) {
    throw std::invalid_argument("occupation out of range: " + std::to_string(value));
  }
  return static_cast<std::uint8_t>(value);
}

std::string bits_string(std::uint32_t bits, int count) {
  std::string out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(((bits >> i) & 1U) ? '1' : '0');
  return out;
}

std::uint32_t parse_bits(std::string_view text) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= 1U << i;
    } else if (text[i] != '0') {
      throw std::invalid_argument("bad bit string: " + std::string(text));
    }
  }
  return bits;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  text = trim(text);
  while (!text.empty()) {
    auto end = text.find(' ');
    auto token = text.substr(0, end);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw std::invalid_argument("bad integer in state: " + std::string(token));
    }
    out.push_back(value);
    if (end == std::string_view::npos) break;
    text = trim(text.substr(end));
  }
  return out;
}

// Moves the electron in `from` to `to`. Absent unless `from` is occupied and
// `to` is free.
std::optional<TransitionResult> move_bit(const BasisState& s, int from, int to) {
  if (!s.bit(from) || s.bit(to)) return std::nullopt;
  const std::uint32_t e = (s.electrons() & ~(1U << from)) | (1U << to);
  return TransitionResult{+1, s.with_electrons(e)};
}

std::uint32_t atomic_pair(int up_atom) {
  return (1U << orbital::atomic_bit(up_atom, Level::Excited, Spin::Up)) |
         (1U << orbital::atomic_bit(1 - up_atom, Level::Excited, Spin::Down));
}

std::uint32_t molecular_pair(Level up_level, Level down_level) {
  return (1U << orbital::molecular_bit(up_level, Spin::Up)) |
         (1U << orbital::molecular_bit(down_level, Spin::Down));
}

[[noreturn]] void invalid_for(const BasisState& s, TransitionId which) {
  throw std::invalid_argument("transition " + which.describe() + " is not defined for state " +
                              s.render());
}

}  // namespace

std::string ModeId::name() const {
  if (label_ == Label::Generic) return "cavity" + std::to_string(index_);
  for (const auto& [label, name] : kModeNames) {
    if (label == label_) return std::string(name);
  }
  return "?";
}

std::optional<ModeId> ModeId::from_name(std::string_view name) {
  for (const auto& [label, text] : kModeNames) {
    if (text == name) return ModeId(label);
  }
  constexpr std::string_view prefix = "cavity";
  if (name.starts_with(prefix)) {
    int index = 0;
    auto digits = name.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && index >= 0) {
      return ModeId::generic(index);
    }
  }
  return std::nullopt;
}

std::optional<int> photon_slot(Variant variant, ModeId mode) {
  using L = ModeId::Label;
  switch (variant) {
    case Variant::AssocDissoc:
      switch (mode.label()) {
        case L::MolecularUp: return 0;
        case L::MolecularDown: return 1;
        case L::AtomicUp: return 2;
        case L::AtomicDown: return 3;
        case L::Spin: return 4;
        default: return std::nullopt;
      }
    case Variant::CovalentBond:
      switch (mode.label()) {
        case L::MolecularUp: return 0;
        case L::MolecularDown: return 1;
        case L::Phonon: return 2;
        default: return std::nullopt;
      }
    case Variant::Reference:
      if (mode.label() == L::Generic) return mode.index();
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<ModeId> variant_modes(Variant variant, int generic_modes) {
  switch (variant) {
    case Variant::AssocDissoc:
      return {ModeId::molecular(Spin::Up), ModeId::molecular(Spin::Down),
              ModeId::atomic(Spin::Up), ModeId::atomic(Spin::Down), ModeId::spin()};
    case Variant::CovalentBond:
      return {ModeId::molecular(Spin::Up), ModeId::molecular(Spin::Down), ModeId::phonon()};
    case Variant::Reference: {
      std::vector<ModeId> out;
      for (int i = 0; i < generic_modes; ++i) out.push_back(ModeId::generic(i));
      return out;
    }
  }
  return {};
}

BasisState BasisState::assoc_dissoc(std::array<int, 5> photons, std::uint32_t electrons,
                                    bool nuclei_apart) {
  BasisState s;
  s.variant_ = Variant::AssocDissoc;
  s.nuclei_apart_ = nuclei_apart;
  for (int p : photons) s.photons_.push_back(checked_occupation(p));
  const int slots = nuclei_apart ? orbital::kAtomicSlots : orbital::kMolecularSlots;
  if (electrons >> slots) {
    throw std::invalid_argument("electron bits exceed the sector layout");
  }
  s.electrons_ = electrons;
  return s;
}

BasisState BasisState::covalent_bond(int p_up, int p_down, int phonons, bool l_up, bool l_down,
                                     bool bond_broken, bool nuclei_apart) {
  BasisState s;
  s.variant_ = Variant::CovalentBond;
  s.photons_ = {checked_occupation(p_up), checked_occupation(p_down), checked_occupation(phonons)};
  s.electrons_ = (l_up ? 1U : 0U) | (l_down ? 2U : 0U);
  s.bond_broken_ = bond_broken;
  s.nuclei_apart_ = nuclei_apart;
  return s;
}

BasisState BasisState::reference(std::vector<int> photons, std::uint32_t atoms, int atom_count) {
  if (atom_count < 0 || atom_count > 32) throw std::invalid_argument("atom count out of range");
  if (atom_count < 32 && (atoms >> atom_count)) {
    throw std::invalid_argument("atom bits exceed atom count");
  }
  BasisState s;
  s.variant_ = Variant::Reference;
  s.atom_count_ = static_cast<std::uint8_t>(atom_count);
  for (int p : photons) s.photons_.push_back(checked_occupation(p));
  s.electrons_ = atoms;
  return s;
}

ElectronSector BasisState::sector() const {
  if (variant_ != Variant::AssocDissoc) return ElectronSector::None;
  return nuclei_apart_ ? ElectronSector::Atomic : ElectronSector::Molecular;
}

int BasisState::occupation(ModeId mode) const {
  auto slot = photon_slot(variant_, mode);
  if (!slot || *slot >= photon_count()) {
    throw std::invalid_argument("mode " + mode.name() + " not present in " + render());
  }
  return photons_[*slot];
}

int BasisState::orbital_slots() const {
  switch (variant_) {
    case Variant::AssocDissoc:
      return nuclei_apart_ ? orbital::kAtomicSlots : orbital::kMolecularSlots;
    case Variant::CovalentBond: return orbital::kCovalentSlots;
    case Variant::Reference: return atom_count_;
  }
  return 0;
}

int BasisState::electron_count() const {
  // In the covalent-bond layout each bit selects Phi1 vs Phi0 for a fixed
  // electron, so the count is always two.
  if (variant_ == Variant::CovalentBond) return 2;
  return std::popcount(electrons_);
}

BasisState BasisState::with_occupation(int slot, int value) const {
  BasisState s = *this;
  s.photons_.at(slot) = checked_occupation(value);
  return s;
}

BasisState BasisState::with_electrons(std::uint32_t electrons) const {
  BasisState s = *this;
  s.electrons_ = electrons;
  return s;
}

BasisState BasisState::with_nuclei_apart(bool apart) const {
  BasisState s = *this;
  s.nuclei_apart_ = apart;
  return s;
}

BasisState BasisState::with_bond_broken(bool broken) const {
  BasisState s = *this;
  s.bond_broken_ = broken;
  return s;
}

std::string BasisState::render() const {
  std::ostringstream out;
  out << '|';
  for (std::size_t i = 0; i < photons_.size(); ++i) {
    if (i) out << ' ';
    out << static_cast<int>(photons_[i]);
  }
  switch (variant_) {
    case Variant::AssocDissoc:
      out << "; " << (nuclei_apart_ ? "e:" : "m:") << bits_string(electrons_, orbital_slots())
          << '|' << (nuclei_apart_ ? 1 : 0) << '>';
      break;
    case Variant::CovalentBond:
      out << "; " << (bit(0) ? 1 : 0) << ' ' << (bit(1) ? 1 : 0) << "; " << (bond_broken_ ? 1 : 0)
          << ' ' << (nuclei_apart_ ? 1 : 0) << '>';
      break;
    case Variant::Reference:
      out << "; a:" << bits_string(electrons_, atom_count_) << '>';
      break;
  }
  return out.str();
}

std::size_t BasisState::hash() const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(variant_));
  mix(atom_count_);
  mix(nuclei_apart_);
  mix(bond_broken_);
  mix(electrons_);
  for (auto p : photons_) mix(p);
  return h;
}

BasisState parse_basis_state(std::string_view text) {
  text = trim(text);
  if (text.size() < 3 || text.front() != '|' || text.back() != '>') {
    throw std::invalid_argument("state must look like |...>: " + std::string(text));
  }
  std::string_view body = text.substr(1, text.size() - 2);
  auto semi = body.find(';');
  if (semi == std::string_view::npos) {
    throw std::invalid_argument("state is missing ';': " + std::string(text));
  }
  std::vector<int> photons = parse_ints(body.substr(0, semi));
  std::string_view rest = trim(body.substr(semi + 1));

  if (rest.starts_with("e:") || rest.starts_with("m:")) {
    const bool atomic = rest[0] == 'e';
    auto bar = rest.find('|');
    if (bar == std::string_view::npos) throw std::invalid_argument("missing nucleus field");
    std::string_view bits = rest.substr(2, bar - 2);
    auto nucleus = parse_ints(rest.substr(bar + 1));
    const std::size_t expected = atomic ? orbital::kAtomicSlots : orbital::kMolecularSlots;
    if (photons.size() != 5 || bits.size() != expected || nucleus.size() != 1 ||
        nucleus[0] != (atomic ? 1 : 0)) {
      throw std::invalid_argument("malformed association-dissociation state: " +
                                  std::string(text));
    }
    return BasisState::assoc_dissoc({photons[0], photons[1], photons[2], photons[3], photons[4]},
                                    parse_bits(bits), atomic);
  }
  if (rest.starts_with("a:")) {
    std::string_view bits = trim(rest.substr(2));
    return BasisState::reference(photons, parse_bits(bits), static_cast<int>(bits.size()));
  }
  auto semi2 = rest.find(';');
  if (semi2 == std::string_view::npos || photons.size() != 3) {
    throw std::invalid_argument("unrecognised state layout: " + std::string(text));
  }
  auto orbitals = parse_ints(rest.substr(0, semi2));
  auto tail = parse_ints(rest.substr(semi2 + 1));
  auto is_bit = [](int v) { return v == 0 || v == 1; };
  if (orbitals.size() != 2 || tail.size() != 2 || !is_bit(orbitals[0]) || !is_bit(orbitals[1]) ||
      !is_bit(tail[0]) || !is_bit(tail[1])) {
    throw std::invalid_argument("malformed covalent-bond state: " + std::string(text));
  }
  return BasisState::covalent_bond(photons[0], photons[1], photons[2], orbitals[0] == 1,
                                   orbitals[1] == 1, tail[0] == 1, tail[1] == 1);
}

std::optional<LadderResult> apply_annihilate(const BasisState& state, ModeId mode) {
  auto slot = photon_slot(state.variant(), mode);
  if (!slot || *slot >= state.photon_count()) {
    throw std::invalid_argument("mode " + mode.name() + " not present in " + state.render());
  }
  const int p = state.occupation(*slot);
  if (p == 0) return std::nullopt;
  return LadderResult{std::sqrt(static_cast<double>(p)), state.with_occupation(*slot, p - 1)};
}

std::optional<LadderResult> apply_create(const BasisState& state, ModeId mode, int cutoff) {
  auto slot = photon_slot(state.variant(), mode);
  if (!slot || *slot >= state.photon_count()) {
    throw std::invalid_argument("mode " + mode.name() + " not present in " + state.render());
  }
  const int p = state.occupation(*slot);
  if (p >= cutoff) return std::nullopt;
  return LadderResult{std::sqrt(static_cast<double>(p + 1)), state.with_occupation(*slot, p + 1)};
}

TransitionId TransitionId::atomic_relax(int atom, Spin spin) {
  TransitionId t;
  t.kind = TransitionKind::AtomicRelax;
  t.atom = atom;
  t.spin = spin;
  return t;
}

TransitionId TransitionId::spin_relax(int atom, Level level) {
  TransitionId t;
  t.kind = TransitionKind::SpinRelax;
  t.atom = atom;
  t.level = level;
  return t;
}

TransitionId TransitionId::molecular_relax(Spin spin) {
  TransitionId t;
  t.kind = TransitionKind::MolecularRelax;
  t.spin = spin;
  return t;
}

TransitionId TransitionId::bond_form() {
  TransitionId t;
  t.kind = TransitionKind::BondForm;
  return t;
}

TransitionId TransitionId::nucleus_together() {
  TransitionId t;
  t.kind = TransitionKind::NucleusTogether;
  return t;
}

TransitionId TransitionId::hybridize(Level up_level, Level down_level, int up_atom) {
  TransitionId t;
  t.kind = TransitionKind::Hybridize;
  t.up_level = up_level;
  t.down_level = down_level;
  t.atom = up_atom;
  return t;
}

TransitionId TransitionId::reference_relax(int atom) {
  TransitionId t;
  t.kind = TransitionKind::ReferenceRelax;
  t.atom = atom;
  return t;
}

TransitionId TransitionId::adjoint() const {
  TransitionId t = *this;
  using K = TransitionKind;
  switch (kind) {
    case K::AtomicRelax: t.kind = K::AtomicExcite; break;
    case K::AtomicExcite: t.kind = K::AtomicRelax; break;
    case K::SpinRelax: t.kind = K::SpinExcite; break;
    case K::SpinExcite: t.kind = K::SpinRelax; break;
    case K::MolecularRelax: t.kind = K::MolecularExcite; break;
    case K::MolecularExcite: t.kind = K::MolecularRelax; break;
    case K::BondForm: t.kind = K::BondBreak; break;
    case K::BondBreak: t.kind = K::BondForm; break;
    case K::NucleusTogether: t.kind = K::NucleusApart; break;
    case K::NucleusApart: t.kind = K::NucleusTogether; break;
    case K::Hybridize: t.kind = K::Dehybridize; break;
    case K::Dehybridize: t.kind = K::Hybridize; break;
    case K::ReferenceRelax: t.kind = K::ReferenceExcite; break;
    case K::ReferenceExcite: t.kind = K::ReferenceRelax; break;
  }
  return t;
}

std::string TransitionId::describe() const {
  using K = TransitionKind;
  auto spin_s = [](Spin s) { return s == Spin::Up ? "up" : "down"; };
  auto level_s = [](Level l) { return l == Level::Excited ? "1" : "0"; };
  switch (kind) {
    case K::AtomicRelax: return "atomic_relax(atom" + std::to_string(atom + 1) + "," + spin_s(spin) + ")";
    case K::AtomicExcite: return "atomic_excite(atom" + std::to_string(atom + 1) + "," + spin_s(spin) + ")";
    case K::SpinRelax: return "spin_relax(atom" + std::to_string(atom + 1) + ",level" + (level == Level::Excited ? "0" : "-1") + ")";
    case K::SpinExcite: return "spin_excite(atom" + std::to_string(atom + 1) + ",level" + (level == Level::Excited ? "0" : "-1") + ")";
    case K::MolecularRelax: return std::string("molecular_relax(") + spin_s(spin) + ")";
    case K::MolecularExcite: return std::string("molecular_excite(") + spin_s(spin) + ")";
    case K::BondForm: return "bond_form";
    case K::BondBreak: return "bond_break";
    case K::NucleusTogether: return "nucleus_together";
    case K::NucleusApart: return "nucleus_apart";
    case K::Hybridize:
      return std::string("hybridize(Phi") + level_s(up_level) + "up,Phi" + level_s(down_level) +
             "down,up_on_atom" + std::to_string(atom + 1) + ")";
    case K::Dehybridize:
      return std::string("dehybridize(Phi") + level_s(up_level) + "up,Phi" + level_s(down_level) +
             "down,up_on_atom" + std::to_string(atom + 1) + ")";
    case K::ReferenceRelax: return "relax(atom" + std::to_string(atom) + ")";
    case K::ReferenceExcite: return "excite(atom" + std::to_string(atom) + ")";
  }
  return "?";
}

std::optional<TransitionResult> apply_transition(const BasisState& s, TransitionId which) {
  using K = TransitionKind;
  using orbital::atomic_bit;
  using orbital::molecular_bit;
  const Variant v = s.variant();
  const bool atom_ok = which.atom == 0 || which.atom == 1;

  switch (which.kind) {
    case K::AtomicRelax:
    case K::AtomicExcite: {
      if (v != Variant::AssocDissoc || !atom_ok) invalid_for(s, which);
      if (!s.nuclei_apart()) return std::nullopt;
      const int excited = atomic_bit(which.atom, Level::Excited, which.spin);
      const int ground = atomic_bit(which.atom, Level::Ground, which.spin);
      return which.kind == K::AtomicRelax ? move_bit(s, excited, ground)
                                          : move_bit(s, ground, excited);
    }
    case K::SpinRelax:
    case K::SpinExcite: {
      if (v != Variant::AssocDissoc || !atom_ok) invalid_for(s, which);
      if (!s.nuclei_apart()) return std::nullopt;
      const int up = atomic_bit(which.atom, which.level, Spin::Up);
      const int down = atomic_bit(which.atom, which.level, Spin::Down);
      return which.kind == K::SpinRelax ? move_bit(s, up, down) : move_bit(s, down, up);
    }
    case K::MolecularRelax:
    case K::MolecularExcite: {
      const bool relax = which.kind == K::MolecularRelax;
      if (v == Variant::AssocDissoc) {
        if (s.nuclei_apart()) return std::nullopt;
        const int anti = molecular_bit(Level::Excited, which.spin);
        const int bond = molecular_bit(Level::Ground, which.spin);
        return relax ? move_bit(s, anti, bond) : move_bit(s, bond, anti);
      }
      if (v == Variant::CovalentBond) {
        const int b = orbital::covalent_bit(which.spin);
        if (s.bit(b) != relax) return std::nullopt;
        return TransitionResult{+1, s.with_electrons(s.electrons() ^ (1U << b))};
      }
      invalid_for(s, which);
    }
    case K::BondForm:
    case K::BondBreak: {
      if (v != Variant::CovalentBond) invalid_for(s, which);
      const bool forming = which.kind == K::BondForm;
      if (s.bond_broken() != forming) return std::nullopt;
      return TransitionResult{+1, s.with_bond_broken(!forming)};
    }
    case K::NucleusTogether:
    case K::NucleusApart: {
      if (v != Variant::CovalentBond) invalid_for(s, which);
      const bool together = which.kind == K::NucleusTogether;
      if (s.nuclei_apart() != together) return std::nullopt;
      return TransitionResult{+1, s.with_nuclei_apart(!together)};
    }
    case K::Hybridize:
    case K::Dehybridize: {
      if (v != Variant::AssocDissoc || !atom_ok) invalid_for(s, which);
      const std::uint32_t atomic = atomic_pair(which.atom);
      const std::uint32_t molecular = molecular_pair(which.up_level, which.down_level);
      if (which.kind == K::Hybridize) {
        if (!s.nuclei_apart() || s.electrons() != atomic) return std::nullopt;
        return TransitionResult{+1, s.with_nuclei_apart(false).with_electrons(molecular)};
      }
      if (s.nuclei_apart() || s.electrons() != molecular) return std::nullopt;
      return TransitionResult{+1, s.with_electrons(atomic).with_nuclei_apart(true)};
    }
    case K::ReferenceRelax:
    case K::ReferenceExcite: {
      if (v != Variant::Reference || which.atom < 0 || which.atom >= s.orbital_slots()) {
        invalid_for(s, which);
      }
      const bool relax = which.kind == K::ReferenceRelax;
      if (s.bit(which.atom) != relax) return std::nullopt;
      return TransitionResult{+1, s.with_electrons(s.electrons() ^ (1U << which.atom))};
    }
  }
  invalid_for(s, which);
}

}  // namespace tchsim
