#include "substab/element_set.hpp"

namespace substab {

ElementSet ElementSet::of(std::initializer_list<ElementId> ids) {
  ElementSet s;
  for (ElementId e : ids) s = s.with(e);
  return s;
}

ElementSet ElementSet::from_ids(std::span<const ElementId> ids) {
  ElementSet s;
  for (ElementId e : ids) s = s.with(e);
  return s;
}

std::vector<ElementId> ElementSet::ids() const { return {begin(), end()}; }

std::string ElementSet::to_string() const {
  std::string out = "{";
  bool first_item = true;
  for (ElementId e : *this) {
    if (!first_item) out += ',';
    out += std::to_string(e);
    first_item = false;
  }
  return out + "}";
}

ElementSet::Bits compress(ElementSet s, ElementSet block) {
  ElementSet::Bits local = 0;
  int pos = 0;
  for (ElementId e : block) {
    if (s.contains(e)) local |= ElementSet::Bits{1} << pos;
    ++pos;
  }
  return local;
}

ElementSet expand(ElementSet::Bits local, ElementSet block) {
  ElementSet out;
  int pos = 0;
  for (ElementId e : block) {
    if ((local >> pos) & 1U) out = out.with(e);
    ++pos;
  }
  return out;
}

}  // namespace substab
