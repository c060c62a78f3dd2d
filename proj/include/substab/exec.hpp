#pragma once

#include <string_view>

namespace substab {

/// Selects the OpenMP kernel or the serial reference for the subset scans.
/// Both produce identical results; the serial path is the one the tests
/// treat as ground truth.
enum class Exec { serial, parallel };

inline constexpr int kDefaultEnumerationCap = 20;
inline constexpr int kDefaultHereditaryCap = 10;
/// Hard ceiling: tables are indexed by 32-bit-sized masks.
inline constexpr int kMaxEnumerationCap = 26;

/// Enumeration cap, overridable through SUBSTAB_ENUMERATION_CAP.
int enumeration_cap();
/// Cap for the doubly exponential hereditary scan, overridable through
/// SUBSTAB_HEREDITARY_CAP.
int hereditary_cap();

/// Throws CapExceeded when ground_size > cap.
void require_cap(int ground_size, int cap, std::string_view operation);

}  // namespace substab
