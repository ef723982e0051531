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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tchsim {

/// Which occupation-number layout a state uses.
///
///  - AssocDissoc: five photon modes, electrons in atomic orbitals (nuclei
///    apart) or molecular orbitals (nuclei together), nucleus bit.
///  - CovalentBond: two molecular photon modes, one phonon mode, two
///    orbital bits, covalent-bond bit, nucleus bit.
///  - Reference: generic cavities with two-level atoms (JCM/TCM/TCHM).
enum class Variant : std::uint8_t { AssocDissoc, CovalentBond, Reference };

enum class Spin : std::uint8_t { Up, Down };

/// Atomic levels: Excited is orbital 0, Ground is orbital -1.
/// Molecular levels: Excited is the antibonding Phi_1, Ground is Phi_0.
enum class Level : std::uint8_t { Excited, Ground };

class ModeId {
 public:
  enum class Label : std::uint8_t {
    MolecularUp,    // omega up
    MolecularDown,  // omega down
    AtomicUp,       // Omega up
    AtomicDown,     // Omega down
    Spin,           // Omega s
    Phonon,         // Omega c
    Generic,
  };

  constexpr ModeId() = default;
  constexpr explicit ModeId(Label label) : label_(label) {}

  static constexpr ModeId molecular(Spin s) {
    return ModeId(s == Spin::Up ? Label::MolecularUp : Label::MolecularDown);
  }
  static constexpr ModeId atomic(Spin s) {
    return ModeId(s == Spin::Up ? Label::AtomicUp : Label::AtomicDown);
  }
  static constexpr ModeId spin() { return ModeId(Label::Spin); }
  static constexpr ModeId phonon() { return ModeId(Label::Phonon); }
  static constexpr ModeId generic(int index) {
    ModeId m(Label::Generic);
    m.index_ = index;
    return m;
  }

  constexpr Label label() const { return label_; }
  constexpr int index() const { return index_; }

  /// Stable identifier used in config files and CSV headers:
  /// omega_up, omega_down, Omega_up, Omega_down, Omega_s, Omega_c, cavity<i>.
  std::string name() const;
  static std::optional<ModeId> from_name(std::string_view name);

  friend constexpr bool operator==(ModeId a, ModeId b) {
    return a.label_ == b.label_ && a.index_ == b.index_;
  }
  friend constexpr bool operator<(ModeId a, ModeId b) {
    return a.label_ != b.label_ ? a.label_ < b.label_ : a.index_ < b.index_;
  }

 private:
  Label label_ = Label::Generic;
  int index_ = 0;
};

/// Photon slot of `mode` in the given variant, or nullopt if the variant has
/// no such mode. Generic modes map to their index (bounded by the state).
std::optional<int> photon_slot(Variant variant, ModeId mode);

/// The named modes carried by a variant, in slot order.
std::vector<ModeId> variant_modes(Variant variant, int generic_modes = 0);

namespace orbital {

// Atomic sector: at1 0up, at1 0dn, at1 -1up, at1 -1dn, then the same for atom 2.
constexpr int atomic_bit(int atom, Level level, Spin spin) {
  return atom * 4 + (level == Level::Ground ? 2 : 0) + (spin == Spin::Down ? 1 : 0);
}

// Molecular sector: Phi1 up, Phi1 dn, Phi0 up, Phi0 dn.
constexpr int molecular_bit(Level level, Spin spin) {
  return (level == Level::Ground ? 2 : 0) + (spin == Spin::Down ? 1 : 0);
}

// Covalent-bond variant: l1 (up electron on Phi1), l2 (down electron on Phi1).
constexpr int covalent_bit(Spin spin) { return spin == Spin::Up ? 0 : 1; }

constexpr int kAtomicSlots = 8;
constexpr int kMolecularSlots = 4;
constexpr int kCovalentSlots = 2;

}  // namespace orbital

enum class ElectronSector : std::uint8_t { Atomic, Molecular, None };

/// One pure occupation-number configuration.
///
/// Electrons are stored as a bitmask whose meaning depends on the variant
/// (and, for AssocDissoc, on the nucleus bit): the atomic-orbital layout is
/// used when the nuclei are apart and the molecular-orbital layout when they
/// are together. Equality and hashing are structural.
class BasisState {
 public:
  static BasisState assoc_dissoc(std::array<int, 5> photons, std::uint32_t electrons,
                                 bool nuclei_apart);
  static BasisState covalent_bond(int p_up, int p_down, int phonons, bool l_up, bool l_down,
                                  bool bond_broken, bool nuclei_apart);
  static BasisState reference(std::vector<int> photons, std::uint32_t atoms, int atom_count);

  Variant variant() const { return variant_; }
  ElectronSector sector() const;

  int photon_count() const { return static_cast<int>(photons_.size()); }
  int occupation(int slot) const { return photons_.at(slot); }
  int occupation(ModeId mode) const;
  const std::vector<std::uint8_t>& photons() const { return photons_; }

  std::uint32_t electrons() const { return electrons_; }
  bool bit(int index) const { return (electrons_ >> index) & 1U; }
  int orbital_slots() const;
  int electron_count() const;

  bool nuclei_apart() const { return nuclei_apart_; }
  bool bond_broken() const { return bond_broken_; }

  BasisState with_occupation(int slot, int value) const;
  BasisState with_electrons(std::uint32_t electrons) const;
  BasisState with_nuclei_apart(bool apart) const;
  BasisState with_bond_broken(bool broken) const;

  /// Canonical text: `|p1 p2 p3 p4 p5; e:b0..b7|k>` (atomic sector),
  /// `|p1 p2 p3 p4 p5; m:b0..b3|k>` (molecular sector),
  /// `|p1 p2 m; l1 l2; L k>` (covalent bond), `|n1 .. nM; a:b0..|>` (reference).
  std::string render() const;

  std::size_t hash() const;

  friend bool operator==(const BasisState& a, const BasisState& b) = default;

 private:
  Variant variant_ = Variant::Reference;
  std::uint8_t atom_count_ = 0;  // reference variant only
  bool nuclei_apart_ = false;
  bool bond_broken_ = false;
  std::uint32_t electrons_ = 0;
  std::vector<std::uint8_t> photons_;
};

/// Parses the canonical rendering back into a state.
BasisState parse_basis_state(std::string_view text);

struct BasisStateHash {
  std::size_t operator()(const BasisState& s) const { return s.hash(); }
};

struct LadderResult {
  double amplitude;
  BasisState state;
};

/// a|p> = sqrt(p)|p-1>; absent on the vacuum.
std::optional<LadderResult> apply_annihilate(const BasisState& state, ModeId mode);

/// a^dagger|p> = sqrt(p+1)|p+1>; absent when p is already at `cutoff`.
std::optional<LadderResult> apply_create(const BasisState& state, ModeId mode, int cutoff);

enum class TransitionKind : std::uint8_t {
  AtomicRelax,      // 0 -> -1, same atom, same spin
  AtomicExcite,
  SpinRelax,        // up -> down, same atom, same level
  SpinExcite,
  MolecularRelax,   // Phi1 -> Phi0, same spin
  MolecularExcite,
  BondForm,         // cb 1 -> 0
  BondBreak,
  NucleusTogether,  // k 1 -> 0 (covalent-bond variant)
  NucleusApart,
  Hybridize,        // atomic excited pair (nuclei apart) -> molecular pattern
  Dehybridize,
  ReferenceRelax,   // generic two-level atom 1 -> 0
  ReferenceExcite,
};

/// Identifies one directed fermionic transition. Fields not used by a kind
/// are ignored.
struct TransitionId {
  TransitionKind kind = TransitionKind::ReferenceRelax;
  int atom = 0;
  Spin spin = Spin::Up;
  Level level = Level::Excited;
  // Hybridization pattern: molecular level of the up and down electrons, and
  // which atom holds the up electron in the atomic image.
  Level up_level = Level::Excited;
  Level down_level = Level::Excited;

  static TransitionId atomic_relax(int atom, Spin spin);
  static TransitionId spin_relax(int atom, Level level);
  static TransitionId molecular_relax(Spin spin);
  static TransitionId bond_form();
  static TransitionId nucleus_together();
  static TransitionId hybridize(Level up_level, Level down_level, int up_atom);
  static TransitionId reference_relax(int atom);

  /// The Hermitian-conjugate transition.
  TransitionId adjoint() const;

  std::string describe() const;

  friend bool operator==(const TransitionId&, const TransitionId&) = default;
};

struct TransitionResult {
  int sign;
  BasisState state;
};

/// Moves one electron (or flips the bond / nucleus bit). Returns absent when
/// the source is empty or the target already occupied. Throws
/// std::invalid_argument if `which` does not exist for the state's variant.
std::optional<TransitionResult> apply_transition(const BasisState& state, TransitionId which);

}  // namespace tchsim

template <>
struct std::hash<tchsim::BasisState> {
  std::size_t operator()(const tchsim::BasisState& s) const { return s.hash(); }
};
