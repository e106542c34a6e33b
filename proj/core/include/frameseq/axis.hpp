#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace frameseq {

// Signed coordinate axis of a toggling frame. Encoded 1..6 for
// +x,+y,+z,-x,-y,-z so that negation is the mod-6 pairing k <-> k+-3.
class Axis {
 public:
  Axis() : code_(3) {}  // +z
  explicit Axis(int code) : code_(static_cast<std::int8_t>(code)) {
    if (code < 1 || code > 6) throw std::invalid_argument("axis code out of range 1..6");
  }

  static Axis plus_x() { return Axis(1); }
  static Axis plus_y() { return Axis(2); }
  static Axis plus_z() { return Axis(3); }
  static Axis minus_x() { return Axis(4); }
  static Axis minus_y() { return Axis(5); }
  static Axis minus_z() { return Axis(6); }

  int code() const { return code_; }

  // 0,1,2 for x,y,z
  int component() const { return (code_ - 1) % 3; }
  int sign() const { return code_ <= 3 ? +1 : -1; }

  Axis negated() const { return Axis(code_ <= 3 ? code_ + 3 : code_ - 3); }

  // Coefficient F_mu of this frame along component mu (0..2); +-1 or 0.
  double coefficient(int mu) const { return component() == mu ? sign() : 0.0; }

  std::array<double, 3> unit_vector() const {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    v[static_cast<std::size_t>(component())] = sign();
    return v;
  }

  bool operator==(const Axis& o) const { return code_ == o.code_; }
  bool operator!=(const Axis& o) const { return code_ != o.code_; }

  bool is_parallel(const Axis& o) const { return component() == o.component(); }
  bool is_perpendicular(const Axis& o) const { return component() != o.component(); }
  bool is_antipodal(const Axis& o) const { return o == negated(); }

  std::string label() const {
    static const char* names[] = {"+x", "+y", "+z", "-x", "-y", "-z"};
    return names[code_ - 1];
  }

  static std::optional<Axis> parse(const std::string& token) {
    static const std::array<std::string, 6> names = {"+x", "+y", "+z", "-x", "-y", "-z"};
    for (int i = 0; i < 6; ++i) {
      if (token == names[static_cast<std::size_t>(i)]) return Axis(i + 1);
    }
    if (token == "x") return plus_x();
    if (token == "y") return plus_y();
    if (token == "z") return plus_z();
    return std::nullopt;
  }

  // Relabels components cyclically x->y->z->x, preserving sign.
  Axis cycled() const {
    int c = (component() + 1) % 3;
    return Axis(1 + c + (sign() > 0 ? 0 : 3));
  }

 private:
  std::int8_t code_;
};

inline const char* component_name(int mu) {
  static const char* names[] = {"x", "y", "z"};
  if (mu < 0 || mu > 2) throw std::invalid_argument("component out of range");
  return names[mu];
}

}  // namespace frameseq
