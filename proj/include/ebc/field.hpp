#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ebc/errors.hpp"
#include "ebc/op_count.hpp"

namespace ebc {

// Canonical representative of a field element: an integer in [0, q).
using Elem = std::uint16_t;
using Vec = std::vector<Elem>;

// GF(q) for q prime (q <= 257) or q = 2^m (m <= 8).
//
// A Field is a cheap handle: the log/exp/inverse tables are built once and
// shared between copies. All arithmetic is const and thread-safe.
class Field {
 public:
  // Default: GF(2).
  Field();

  // Throws BadParams for unsupported orders or a reducible polynomial.
  // `poly == 0` selects the default reduction polynomial for GF(2^m).
  explicit Field(unsigned q, unsigned poly = 0);

  // Parses "q=<int>[,poly=<hex>]".
  static Field parse(std::string_view text);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  // Bitmask of the reduction polynomial (0 for prime fields).
  unsigned poly() const noexcept { return poly_; }
  bool binary_characteristic() const noexcept { return p_ == 2; }

  std::string to_string() const;

  Elem add(Elem a, Elem b) const noexcept {
    ++thread_op_counts().add;
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    const unsigned s = unsigned{a} + b;
    return static_cast<Elem>(s >= q_ ? s - q_ : s);
  }

  Elem sub(Elem a, Elem b) const noexcept {
    ++thread_op_counts().add;
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    return static_cast<Elem>(a >= b ? a - b : a + q_ - b);
  }

  Elem neg(Elem a) const noexcept {
    if (p_ == 2 || a == 0) return a;
    return static_cast<Elem>(q_ - a);
  }

  Elem mul(Elem a, Elem b) const noexcept {
    ++thread_op_counts().mul;
    if (a == 0 || b == 0) return 0;
    return tables_->exp[tables_->log[a] + tables_->log[b]];
  }

  // Throws ZeroInverse for a == 0.
  Elem inv(Elem a) const {
    if (a == 0) throw ZeroInverse();
    ++thread_op_counts().mul;
    return tables_->inv[a];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  // a + c*b, the inner step of every elimination.
  Elem mul_add(Elem a, Elem c, Elem b) const noexcept { return add(a, mul(c, b)); }

  // Definitional product: integer product mod p, or carry-less product
  // reduced by the polynomial. Independent of the tables; not counted.
  Elem mul_reference(Elem a, Elem b) const noexcept;

  bool valid(unsigned v) const noexcept { return v < q_; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.q_ == b.q_ && a.poly_ == b.poly_;
  }

 private:
  struct Tables {
    std::vector<Elem> exp;  // length 2(q-1), so log[a] + log[b] needs no reduction
    std::vector<std::uint16_t> log;
    std::vector<Elem> inv;
  };

  unsigned q_ = 2;
  unsigned p_ = 2;
  unsigned m_ = 1;
  unsigned poly_ = 0;
  std::shared_ptr<const Tables> tables_;
};

// Irreducibility of a GF(2) polynomial given as a bitmask, by trial division
// with every polynomial of degree 1..deg/2.
bool is_irreducible_gf2(unsigned poly);

// Default reduction polynomial for GF(2^m); 0x11D for m = 8.
unsigned default_poly(unsigned m);

bool is_prime(unsigned n);

}  // namespace ebc
