#include "causeway/domain.hpp"

#include "causeway/error.hpp"

namespace causeway {

Domain::Domain(int modulus, bool with_bottom, bool is_boolean)
    : modulus_(modulus), has_bottom_(with_bottom), is_boolean_(is_boolean) {
  elements_.reserve(static_cast<std::size_t>(modulus) + (with_bottom ? 1 : 0));
  for (int i = 0; i < modulus; ++i) elements_.push_back(Value::of(i));
  if (with_bottom) elements_.push_back(Value::bottom());
}

Domain Domain::boolean(bool with_bottom) { return Domain(2, with_bottom, true); }

Domain Domain::modular(int modulus, bool with_bottom) {
  if (modulus < 2) throw Error("domain modulus must be at least 2");
  return Domain(modulus, with_bottom, false);
}

bool Domain::contains(Value v) const {
  if (v.is_bottom()) return has_bottom_;
  return v.ordinary() >= 0 && v.ordinary() < modulus_;
}

int Domain::ordinal(Value v) const {
  if (!contains(v)) throw Error("value " + v.str() + " not in domain " + str());
  return v.is_bottom() ? modulus_ : v.ordinary();
}

std::string Domain::str() const {
  std::string base = is_boolean_ ? "bool" : "mod " + std::to_string(modulus_);
  if (has_bottom_) base += " with bottom";
  return base;
}

}  // namespace causeway
