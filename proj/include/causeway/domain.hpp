#ifndef CAUSEWAY_DOMAIN_HPP
#define CAUSEWAY_DOMAIN_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace causeway {

// A single datum. Ordinary values are the canonical representatives 0..m-1 of
// a modular domain (booleans are mod 2); bottom is the distinguished error
// element available in domains declared "with bottom".
class Value {
 public:
  constexpr Value() = default;

  static constexpr Value of(int v) { return Value(v); }
  static constexpr Value bottom() { return Value(kBottomRaw); }

  constexpr bool is_bottom() const { return raw_ == kBottomRaw; }

  // Canonical representative; only meaningful when !is_bottom().
  constexpr int ordinary() const { return raw_; }

  std::string str() const { return is_bottom() ? "bot" : std::to_string(raw_); }

  friend constexpr bool operator==(Value, Value) = default;

  // Bottom sorts after every ordinary value, matching enumeration order.
  friend constexpr std::strong_ordering operator<=>(Value a, Value b) {
    if (a.is_bottom() != b.is_bottom()) return a.is_bottom() <=> b.is_bottom();
    return a.raw_ <=> b.raw_;
  }

 private:
  static constexpr int kBottomRaw = -1;
  explicit constexpr Value(int raw) : raw_(raw) {}
  int raw_ = 0;
};

// A finite value domain: booleans, or integers mod m, optionally extended
// with bottom. Element order (used everywhere tuples are enumerated) is
// 0, 1, ..., m-1, then bottom if present.
class Domain {
 public:
  Domain() : Domain(boolean()) {}

  static Domain boolean(bool with_bottom = false);
  static Domain modular(int modulus, bool with_bottom = false);

  int modulus() const { return modulus_; }
  bool has_bottom() const { return has_bottom_; }
  bool is_boolean() const { return is_boolean_; }

  const std::vector<Value>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Value v) const;

  // Position of v in elements(); bottom comes last.
  int ordinal(Value v) const;

  std::string str() const;  // "bool" | "mod 7" | "mod 7 with bottom"

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.modulus_ == b.modulus_ && a.has_bottom_ == b.has_bottom_ &&
           a.is_boolean_ == b.is_boolean_;
  }

 private:
  Domain(int modulus, bool with_bottom, bool is_boolean);

  int modulus_ = 2;
  bool has_bottom_ = false;
  bool is_boolean_ = true;
  std::vector<Value> elements_;
};

}  // namespace causeway

#endif
