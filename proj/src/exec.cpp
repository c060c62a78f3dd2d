#include "substab/exec.hpp"

#include <cstdlib>
#include <string>

#include "substab/errors.hpp"

namespace substab {
namespace {

int cap_from_env(const char* name, int fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 0 || v > kMaxEnumerationCap)
    throw InvalidArgument(std::string(name) + " must be an integer in [0, " +
                          std::to_string(kMaxEnumerationCap) + "]");
  return static_cast<int>(v);
}

}  // namespace

int enumeration_cap() {
  return cap_from_env("SUBSTAB_ENUMERATION_CAP", kDefaultEnumerationCap);
}

int hereditary_cap() {
  return cap_from_env("SUBSTAB_HEREDITARY_CAP", kDefaultHereditaryCap);
}

void require_cap(int ground_size, int cap, std::string_view operation) {
  if (ground_size > cap) throw CapExceeded(ground_size, cap, std::string(operation));
}

}  // namespace substab
