#pragma once

#include <optional>

#include "substab/exec.hpp"
#include "substab/rational.hpp"
#include "substab/systems.hpp"

namespace substab {

struct SystemProfile {
  Rational p_system;
  /// Smallest integer p that works, or empty when none up to the cap does.
  std::optional<int> p_extendible;
  /// Empty when the ground set exceeds the hereditary cap.
  std::optional<Rational> p_hereditary;
  bool downward_closed = true;
};

/// max over Y of (largest base of Y) / (smallest base of Y). Sets Y whose
/// only base is empty count as ratio 1. Capped by enumeration_cap().
Rational p_system_parameter(const IndependenceSystem& sys, Exec exec = Exec::parallel);

/// Smallest p <= cap such that for all independent A ⊆ B and A+e independent
/// some Z ⊆ B\A with |Z| <= p has (B\Z)+e independent. cap defaults to the
/// ground size (at least 1).
std::optional<int> p_extendibility(const IndependenceSystem& sys,
                                   std::optional<int> cap = {},
                                   Exec exec = Exec::parallel);

/// max of p_system_parameter over all deletions and all contractions by an
/// independent set. Capped by hereditary_cap().
Rational hereditary_parameter(const IndependenceSystem& sys, Exec exec = Exec::parallel);

/// floor(hereditary_parameter) == p_extendibility.
bool verify_hereditary_extendible_equivalence(const IndependenceSystem& sys,
                                              Exec exec = Exec::parallel);

/// Fills every field that fits under the caps; p_system and p_extendible are
/// required to fit.
SystemProfile profile_system(const IndependenceSystem& sys, Exec exec = Exec::parallel);

}  // namespace substab
