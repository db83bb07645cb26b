#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tksub/graph.hpp"

namespace tksub {

struct BadFieldError : GraphError {
  explicit BadFieldError(const std::string& what) : GraphError(what) {}
};

// GF(q) with full add/mul/neg/inv tables. Prime q uses modular arithmetic;
// the prime powers we support use a fixed irreducible polynomial each, so
// element encodings (base-p digit vectors packed as integers) are stable
// across runs and platforms.
class FiniteField {
 public:
  static bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0) return false;
    return true;
  }

  static FiniteField make(int q) {
    if (q >= 2 && q <= 97 && is_prime(q)) return prime_field(q);
    switch (q) {
      case 4:  return poly_field(2, {1, 1, 1});        // x^2+x+1
      case 8:  return poly_field(2, {1, 1, 0, 1});     // x^3+x+1
      case 9:  return poly_field(3, {1, 0, 1});        // x^2+1
      case 16: return poly_field(2, {1, 1, 0, 0, 1});  // x^4+x+1
      case 25: return poly_field(5, {2, 0, 1});        // x^2+2
      case 27: return poly_field(3, {1, 2, 0, 1});     // x^3+2x+1
      case 32: return poly_field(2, {1, 0, 1, 0, 0, 1});  // x^5+x^2+1
      default:
        throw BadFieldError("no field of order " + std::to_string(q) +
                            " (supported: primes up to 97 and 4, 8, 9, 16, 25, 27, 32)");
    }
  }

  int q() const { return q_; }
  int p() const { return p_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[check(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int inv(int a) const {
    if (a == 0) throw BadFieldError("inverse of zero");
    return inv_[check(a)];
  }

  // Thorough axiom sweep; O(q^3). Used by the test suite on small fields.
  bool verify_axioms() const {
    for (int a = 0; a < q_; ++a) {
      if (add(a, 0) != a || mul(a, 1) != a || mul(a, 0) != 0) return false;
      if (add(a, neg(a)) != 0) return false;
      if (a != 0 && mul(a, inv(a)) != 1) return false;
      for (int b = 0; b < q_; ++b) {
        if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) return false;
        for (int c = 0; c < q_; ++c) {
          if (add(add(a, b), c) != add(a, add(b, c))) return false;
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
          if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
        }
      }
    }
    return true;
  }

 private:
  FiniteField() = default;

  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(check(a)) * static_cast<std::size_t>(q_) +
           static_cast<std::size_t>(check(b));
  }
  int check(int a) const {
    if (a < 0 || a >= q_) throw BadFieldError("element out of range");
    return a;
  }

  static FiniteField prime_field(int p) {
    FiniteField f;
    f.q_ = p;
    f.p_ = p;
    f.fill_tables([p](int a, int b) { return (a + b) % p; },
                  [p](int a, int b) { return (a * b) % p; });
    return f;
  }

  // Elements are digit vectors base p of length deg, packed little-endian:
  // value = c0 + c1*p + c2*p^2 + ...
  static FiniteField poly_field(int p, std::vector<int> irreducible) {
    FiniteField f;
    int deg = static_cast<int>(irreducible.size()) - 1;
    int q = 1;
    for (int i = 0; i < deg; ++i) q *= p;
    f.q_ = q;
    f.p_ = p;
    auto digits = [p, deg](int a) {
      std::vector<int> d(static_cast<std::size_t>(deg), 0);
      for (int i = 0; i < deg; ++i) {
        d[static_cast<std::size_t>(i)] = a % p;
        a /= p;
      }
      return d;
    };
    auto pack = [p, deg](const std::vector<int>& d) {
      int a = 0;
      for (int i = deg - 1; i >= 0; --i) a = a * p + d[static_cast<std::size_t>(i)];
      return a;
    };
    auto addf = [&](int a, int b) {
      auto da = digits(a), db = digits(b);
      for (int i = 0; i < deg; ++i)
        da[static_cast<std::size_t>(i)] =
            (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;
      return pack(da);
    };
    auto mulf = [&](int a, int b) {
      auto da = digits(a), db = digits(b);
      std::vector<int> prod(static_cast<std::size_t>(2 * deg - 1), 0);
      for (int i = 0; i < deg; ++i)
        for (int j = 0; j < deg; ++j)
          prod[static_cast<std::size_t>(i + j)] =
              (prod[static_cast<std::size_t>(i + j)] +
               da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) %
              p;
      // reduce modulo the irreducible polynomial (monic by construction)
      for (int i = 2 * deg - 2; i >= deg; --i) {
        int coef = prod[static_cast<std::size_t>(i)];
        if (coef == 0) continue;
        prod[static_cast<std::size_t>(i)] = 0;
        for (int j = 0; j < deg; ++j) {
          int k = i - deg + j;
          prod[static_cast<std::size_t>(k)] =
              ((prod[static_cast<std::size_t>(k)] -
                coef * irreducible[static_cast<std::size_t>(j)]) %
                   p +
               p) %
              p;
        }
      }
      prod.resize(static_cast<std::size_t>(deg));
      return pack(prod);
    };
    f.fill_tables(addf, mulf);
    return f;
  }

  template <typename Add, typename Mul>
  void fill_tables(Add addf, Mul mulf) {
    std::size_t qq = static_cast<std::size_t>(q_);
    add_.resize(qq * qq);
    mul_.resize(qq * qq);
    neg_.assign(qq, -1);
    inv_.assign(qq, -1);
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) {
        add_[static_cast<std::size_t>(a) * qq + static_cast<std::size_t>(b)] = addf(a, b);
        mul_[static_cast<std::size_t>(a) * qq + static_cast<std::size_t>(b)] = mulf(a, b);
      }
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) {
        if (add_[static_cast<std::size_t>(a) * qq + static_cast<std::size_t>(b)] == 0)
          neg_[static_cast<std::size_t>(a)] = b;
        if (mul_[static_cast<std::size_t>(a) * qq + static_cast<std::size_t>(b)] == 1)
          inv_[static_cast<std::size_t>(a)] = b;
      }
    for (int a = 0; a < q_; ++a)
      if (neg_[static_cast<std::size_t>(a)] < 0)
        throw BadFieldError("field table construction failed (negation)");
    for (int a = 1; a < q_; ++a)
      if (inv_[static_cast<std::size_t>(a)] < 0)
        throw BadFieldError("field table construction failed (inverse); polynomial not irreducible?");
  }

  int q_ = 0;
  int p_ = 0;
  std::vector<int> add_, mul_, neg_, inv_;
};

}  // namespace tksub
