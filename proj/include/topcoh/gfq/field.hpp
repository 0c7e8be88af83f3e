#pragma once

#include <cstdint>

namespace topcoh::gfq {

using Residue = std::uint32_t;

/// Deterministic primality test, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// The prime field F_p. Elements are residues in [0, p); the descriptor is
/// the only place the modulus lives, so it is passed alongside every vector.
class Field {
 public:
  /// Throws DomainError unless p is prime.
  explicit Field(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  Residue reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const;
  /// Throws DomainError on zero.
  Residue inv(Residue a) const;

  /// |F_p^x / {+-1}|: (p-1)/2 for odd p, 1 for p = 2.
  std::uint32_t sign_classes() const { return p_ == 2 ? 1 : (p_ - 1) / 2; }

  /// Representative of {a, -a} in [1, (p-1)/2]; a must be nonzero.
  Residue sign_class(Residue a) const {
    if (p_ == 2) return a;
    return a > (p_ - 1) / 2 ? p_ - a : a;
  }

  bool is_plus_minus_one(Residue a) const { return a == 1 || a == p_ - 1; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace topcoh::gfq
