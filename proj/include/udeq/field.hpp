#pragma once

#include <cstdint>
#include <string>

#include "udeq/matrix.hpp"

namespace udeq {

/// Coefficient field for the linear algebra. Complexes are stored with integer
/// entries and read in the field through the canonical map from Z, so one
/// diagram can be examined over Q and over F_p without regeneration.
class Field {
 public:
  static Field rationals() { return Field(0); }
  /// Throws InvalidField unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);
  /// "q" or "p:<prime>".
  static Field parse(const std::string& spec);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t modulus() const { return p_; }
  std::string name() const;

  std::size_t rank(const IntMatrix& m) const;
  /// Basis of the kernel as matrix columns (integer representatives).
  IntMatrix nullspace(const IntMatrix& m) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace udeq
