#include "ebc/field.hpp"

#include <bit>
#include <charconv>
#include <sstream>

namespace ebc {

namespace {

int poly_degree(unsigned poly) { return poly == 0 ? -1 : std::bit_width(poly) - 1; }

// Remainder of a by b over GF(2).
unsigned poly_mod(unsigned a, unsigned b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

unsigned parse_uint(std::string_view s, int base) {
  if (base == 16 && (s.starts_with("0x") || s.starts_with("0X"))) s.remove_prefix(2);
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_gf2(unsigned poly) {
  const int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (unsigned d = 2; poly_degree(d) <= deg / 2; ++d)
    if (poly_mod(poly, d) == 0) return false;
  return true;
}

unsigned default_poly(unsigned m) {
  switch (m) {
    case 1: return 0;
    case 2: return 0x7;
    case 3: return 0xB;
    case 4: return 0x13;
    case 5: return 0x25;
    case 6: return 0x43;
    case 7: return 0x89;
    case 8: return 0x11D;
    default: throw BadParams("no default polynomial for GF(2^" + std::to_string(m) + ")");
  }
}

Field::Field() : Field(2) {}

Field::Field(unsigned q, unsigned poly) : q_(q) {
  if (is_prime(q) && q <= 257) {
    p_ = q;
    m_ = 1;
    if (poly != 0) throw BadParams("reduction polynomial given for prime field GF(" + std::to_string(q) + ")");
  } else if (std::has_single_bit(q) && q >= 4 && q <= 256) {
    p_ = 2;
    m_ = static_cast<unsigned>(std::countr_zero(q));
    poly_ = poly == 0 ? default_poly(m_) : poly;
    if (poly_degree(poly_) != static_cast<int>(m_) || !is_irreducible_gf2(poly_)) {
      std::ostringstream os;
      os << "polynomial 0x" << std::hex << poly_ << " is not irreducible of degree " << std::dec << m_;
      throw BadParams(os.str());
    }
  } else {
    throw BadParams("unsupported field order " + std::to_string(q));
  }

  // Find a generator of the multiplicative group with the reference product,
  // then build log/exp tables from its powers.
  auto tables = std::make_shared<Tables>();
  const unsigned order = q_ - 1;
  tables->exp.assign(2 * order + 1, 0);
  tables->log.assign(q_, 0);
  tables->inv.assign(q_, 0);
  for (unsigned g = (q_ == 2 ? 1 : 2); g < q_; ++g) {
    Elem x = 1;
    unsigned k = 0;
    bool full = true;
    for (; k < order; ++k) {
      tables->exp[k] = x;
      x = mul_reference(x, static_cast<Elem>(g));
      if (x == 1 && k + 1 < order) {
        full = false;
        break;
      }
    }
    if (full) break;
  }
  for (unsigned k = 0; k < order; ++k) {
    tables->exp[k + order] = tables->exp[k];
    tables->log[tables->exp[k]] = static_cast<std::uint16_t>(k);
  }
  for (unsigned a = 1; a < q_; ++a) tables->inv[a] = tables->exp[(order - tables->log[a]) % order];
  tables_ = std::move(tables);
}

Elem Field::mul_reference(Elem a, Elem b) const noexcept {
  if (m_ == 1) return static_cast<Elem>((unsigned{a} * b) % p_);
  unsigned acc = 0;
  for (unsigned bits = b, shifted = a; bits != 0; bits >>= 1, shifted <<= 1)
    if (bits & 1u) acc ^= shifted;
  return static_cast<Elem>(poly_mod(acc, poly_));
}

Field Field::parse(std::string_view text) {
  unsigned q = 0;
  unsigned poly = 0;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.starts_with("q=")) {
      q = parse_uint(item.substr(2), 10);
    } else if (item.starts_with("poly=")) {
      poly = parse_uint(item.substr(5), 16);
    } else {
      throw ParseError("bad field spec item '" + std::string(item) + "'");
    }
  }
  if (q == 0) throw ParseError("field spec lacks q=");
  return Field(q, poly);
}

std::string Field::to_string() const {
  std::ostringstream os;
  os << "q=" << q_;
  if (m_ > 1) os << ",poly=0x" << std::hex << poly_;
  return os.str();
}

}  // namespace ebc
