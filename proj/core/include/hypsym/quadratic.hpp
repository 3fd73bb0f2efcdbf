#pragma once

// Arithmetic in Z and in the rings of integers O_K of the class-number-one,
// norm-Euclidean imaginary quadratic fields. Elements are x + y*omega with
// omega^2 = trace*omega - norm; for Z the y component is always zero.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace hypsym {

struct QuadInt {
  std::int64_t x = 0;
  std::int64_t y = 0;

  QuadInt() = default;
  constexpr QuadInt(std::int64_t x_, std::int64_t y_ = 0) : x(x_), y(y_) {}

  bool is_zero() const { return x == 0 && y == 0; }
  friend bool operator==(const QuadInt&, const QuadInt&) = default;
  friend auto operator<=>(const QuadInt&, const QuadInt&) = default;
};

class QuadraticRing {
 public:
  // The rational integers.
  static QuadraticRing integers();
  // O_K for D in {-3, -4, -7, -8, -11}; other discriminants are rejected.
  static QuadraticRing imaginary(int discriminant);

  bool is_integers() const { return discriminant_ == 1; }
  int discriminant() const { return discriminant_; }
  // Real rank of the ring as a lattice (1 for Z, 2 for O_K).
  int rank() const { return is_integers() ? 1 : 2; }
  std::complex<double> omega() const;

  QuadInt add(QuadInt a, QuadInt b) const { return {a.x + b.x, a.y + b.y}; }
  QuadInt sub(QuadInt a, QuadInt b) const { return {a.x - b.x, a.y - b.y}; }
  QuadInt neg(QuadInt a) const { return {-a.x, -a.y}; }
  QuadInt mul(QuadInt a, QuadInt b) const;
  QuadInt conj(QuadInt a) const;
  std::int64_t norm(QuadInt a) const;
  std::complex<double> to_complex(QuadInt a) const;
  // Coordinates in R^rank (real line or complex plane).
  std::vector<double> to_real_vector(QuadInt a) const;

  bool is_unit(QuadInt a) const { return norm(a) == 1; }
  std::vector<QuadInt> units() const;

  // a = q*b + r with norm(r) < norm(b). b must be nonzero.
  void divmod(QuadInt a, QuadInt b, QuadInt& q, QuadInt& r) const;
  // Exact quotient a / b; throws if b does not divide a.
  QuadInt exact_div(QuadInt a, QuadInt b) const;
  bool divides(QuadInt b, QuadInt a) const;

  // g = s*a + t*b with g a gcd of a and b.
  QuadInt xgcd(QuadInt a, QuadInt b, QuadInt& s, QuadInt& t) const;

  // Complete residue system of O/(c): elements i + j*omega with 0 <= i < box_a,
  // 0 <= j < box_c, and box_a * box_c = norm(c).
  struct ResidueBox {
    std::int64_t box_a = 1;
    std::int64_t box_c = 1;
    std::int64_t shift_b = 0;  // lattice vector (shift_b, box_c) in cO
  };
  ResidueBox residue_box(QuadInt c) const;
  // Canonical representative of a modulo c inside residue_box(c).
  QuadInt reduce(QuadInt a, QuadInt c) const;
  QuadInt reduce(QuadInt a, QuadInt c, const ResidueBox& box) const;

  std::string to_string(QuadInt a) const;

 private:
  QuadraticRing(int discriminant, int trace, std::int64_t norm_const)
      : discriminant_(discriminant), trace_(trace), norm_const_(norm_const) {}

  int discriminant_;         // 1 stands for Z
  int trace_ = 0;            // omega^2 = trace*omega - norm_const
  std::int64_t norm_const_ = 0;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t pos_mod(std::int64_t a, std::int64_t m);
std::int64_t gcd_int(std::int64_t a, std::int64_t b);
// a^{-1} mod m for gcd(a, m) = 1, result in [0, m).
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
std::int64_t euler_phi(std::int64_t n);
bool is_prime(std::int64_t n);
std::int64_t smallest_primitive_root(std::int64_t p);

}  // namespace hypsym
