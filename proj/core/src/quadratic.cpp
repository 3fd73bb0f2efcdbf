#include "hypsym/quadratic.hpp"

#include "hypsym/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace hypsym {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + (m < 0 ? -m : m) : r;
}

std::int64_t gcd_int(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = pos_mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw NonCoprime("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return pos_mod(old_s, m);
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::int64_t smallest_primitive_root(std::int64_t p) {
  if (!is_prime(p)) throw DomainError("primitive roots are only computed for primes");
  if (p == 2) return 1;
  std::vector<std::int64_t> factors;
  std::int64_t m = p - 1;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  auto pow_mod = [p](std::int64_t base, std::int64_t e) {
    std::int64_t r = 1;
    base %= p;
    while (e > 0) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors)
      if (pow_mod(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw DomainError("no primitive root found");
}

QuadraticRing QuadraticRing::integers() { return QuadraticRing(1, 0, 0); }

QuadraticRing QuadraticRing::imaginary(int d) {
  switch (d) {
    case -4: return QuadraticRing(-4, 0, 1);
    case -8: return QuadraticRing(-8, 0, 2);
    case -3: return QuadraticRing(-3, 1, 1);
    case -7: return QuadraticRing(-7, 1, 2);
    case -11: return QuadraticRing(-11, 1, 3);
    default:
      throw InvalidDescriptor("unsupported discriminant " + std::to_string(d) +
                              " (need one of -3, -4, -7, -8, -11)");
  }
}

std::complex<double> QuadraticRing::omega() const {
  if (is_integers()) return {0.0, 0.0};
  const double t = trace_;
  const double im = std::sqrt(4.0 * static_cast<double>(norm_const_) - t * t) / 2.0;
  return {t / 2.0, im};
}

QuadInt QuadraticRing::mul(QuadInt a, QuadInt b) const {
  if (is_integers()) return {a.x * b.x, 0};
  return {a.x * b.x - norm_const_ * a.y * b.y, a.x * b.y + a.y * b.x + trace_ * a.y * b.y};
}

QuadInt QuadraticRing::conj(QuadInt a) const {
  if (is_integers()) return a;
  return {a.x + a.y * trace_, -a.y};
}

std::int64_t QuadraticRing::norm(QuadInt a) const {
  if (is_integers()) return a.x * a.x;
  return a.x * a.x + trace_ * a.x * a.y + norm_const_ * a.y * a.y;
}

std::complex<double> QuadraticRing::to_complex(QuadInt a) const {
  return static_cast<double>(a.x) + static_cast<double>(a.y) * omega();
}

std::vector<double> QuadraticRing::to_real_vector(QuadInt a) const {
  if (is_integers()) return {static_cast<double>(a.x)};
  const auto z = to_complex(a);
  return {z.real(), z.imag()};
}

std::vector<QuadInt> QuadraticRing::units() const {
  if (discriminant_ == -4) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  if (discriminant_ == -3) return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  return {{1, 0}, {-1, 0}};
}

void QuadraticRing::divmod(QuadInt a, QuadInt b, QuadInt& q, QuadInt& r) const {
  if (b.is_zero()) throw DomainError("division by zero in quadratic ring");
  if (is_integers()) {
    q = {floor_div(a.x, b.x), 0};
    r = {a.x - q.x * b.x, 0};
    return;
  }
  const QuadInt z = mul(a, conj(b));
  const std::int64_t n = norm(b);
  const std::int64_t qx0 = static_cast<std::int64_t>(std::llround(static_cast<double>(z.x) / n));
  const std::int64_t qy0 = static_cast<std::int64_t>(std::llround(static_cast<double>(z.y) / n));
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t dy = -1; dy <= 1; ++dy) {
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      const QuadInt cand{qx0 + dx, qy0 + dy};
      const QuadInt rem = sub(a, mul(cand, b));
      const std::int64_t nr = norm(rem);
      if (nr < best) {
        best = nr;
        q = cand;
        r = rem;
      }
    }
  }
  if (best >= n) throw DomainError("Euclidean division failed to reduce the norm");
}

QuadInt QuadraticRing::exact_div(QuadInt a, QuadInt b) const {
  if (b.is_zero()) throw DomainError("division by zero in quadratic ring");
  if (is_integers()) {
    if (a.x % b.x != 0) throw DomainError("inexact division in Z");
    return {a.x / b.x, 0};
  }
  const QuadInt z = mul(a, conj(b));
  const std::int64_t n = norm(b);
  if (z.x % n != 0 || z.y % n != 0) throw DomainError("inexact division in O_K");
  return {z.x / n, z.y / n};
}

bool QuadraticRing::divides(QuadInt b, QuadInt a) const {
  if (b.is_zero()) return a.is_zero();
  if (is_integers()) return a.x % b.x == 0;
  const QuadInt z = mul(a, conj(b));
  const std::int64_t n = norm(b);
  return z.x % n == 0 && z.y % n == 0;
}

QuadInt QuadraticRing::xgcd(QuadInt a, QuadInt b, QuadInt& s, QuadInt& t) const {
  QuadInt r0 = a, r1 = b;
  QuadInt s0{1, 0}, s1{0, 0};
  QuadInt t0{0, 0}, t1{1, 0};
  while (!r1.is_zero()) {
    QuadInt q, r;
    divmod(r0, r1, q, r);
    r0 = r1;
    r1 = r;
    QuadInt tmp = sub(s0, mul(q, s1));
    s0 = s1;
    s1 = tmp;
    tmp = sub(t0, mul(q, t1));
    t0 = t1;
    t1 = tmp;
  }
  s = s0;
  t = t0;
  return r0;
}

QuadraticRing::ResidueBox QuadraticRing::residue_box(QuadInt c) const {
  if (c.is_zero()) throw DomainError("residue ring modulo zero");
  ResidueBox box;
  if (is_integers()) {
    box.box_a = c.x < 0 ? -c.x : c.x;
    return box;
  }
  // cO is spanned by c*1 = (c.x, c.y) and c*omega = (-c.y*N, c.x + c.y*T).
  const std::int64_t p1 = c.x, q1 = c.y;
  const std::int64_t p2 = -c.y * norm_const_, q2 = c.x + c.y * trace_;
  // Extended gcd on the omega-coordinates.
  std::int64_t old_r = q1, r = q2, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  box.box_c = old_r;
  box.box_a = norm(c) / box.box_c;
  box.shift_b = pos_mod(old_s * p1 + old_t * p2, box.box_a);
  return box;
}

QuadInt QuadraticRing::reduce(QuadInt a, QuadInt c, const ResidueBox& box) const {
  if (is_integers()) return {pos_mod(a.x, box.box_a), 0};
  const std::int64_t k = floor_div(a.y, box.box_c);
  const std::int64_t i = a.x - k * box.shift_b;
  const std::int64_t j = a.y - k * box.box_c;
  (void)c;
  return {pos_mod(i, box.box_a), j};
}

QuadInt QuadraticRing::reduce(QuadInt a, QuadInt c) const { return reduce(a, c, residue_box(c)); }

std::string QuadraticRing::to_string(QuadInt a) const {
  if (is_integers()) return std::to_string(a.x);
  const char* w = discriminant_ == -4 ? "i" : "w";
  if (a.y == 0) return std::to_string(a.x);
  std::string out;
  if (a.x != 0) out = std::to_string(a.x) + (a.y < 0 ? "-" : "+");
  else if (a.y < 0) out = "-";
  const std::int64_t ay = std::llabs(a.y);
  if (ay != 1) out += std::to_string(ay) + "*";
  return out + w;
}

}  // namespace hypsym
