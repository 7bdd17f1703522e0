#include "ebc/scenario.hpp"

#include <istream>
#include <ostream>

#include "text_io.hpp"

namespace ebc {

namespace {

std::vector<std::uint8_t> column_mask(const Matrix& b) {
  std::vector<std::uint8_t> mask(b.cols(), 0);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b(i, j) != 0) mask[j] = 1;
  return mask;
}

}  // namespace

UserState::UserState(Matrix received, Matrix basis)
    : received_(std::move(received)), basis_(std::move(basis)), btilde_(column_mask(basis_)) {}

UserState UserState::from_received(const Matrix& c) {
  Matrix rows = independent_rows(c);
  Matrix b = null_space_basis(rows);
  return UserState(std::move(rows), std::move(b));
}

UserState UserState::from_basis(const Matrix& b) {
  Matrix rows = independent_rows(b);
  Matrix c = null_space_basis(rows);
  return UserState(std::move(c), std::move(rows));
}

UserState UserState::from_tracker(const NullTracker& t) { return UserState(t.received(), t.null_basis()); }

void UserState::validate() const {
  if (basis_.cols() != received_.cols()) throw DimensionMismatch("basis and received rows differ in length");
  if (rank() + basis_.rows() != n()) throw DimensionMismatch("rank of C_k plus rows of B_k differs from N");
  if (ebc::rank(received_) != received_.rows()) throw DimensionMismatch("received rows are dependent");
  if (ebc::rank(basis_) != basis_.rows()) throw DimensionMismatch("basis rows are dependent");
  if (!(received_ * basis_.transpose()).is_zero()) throw DimensionMismatch("basis is not orthogonal to C_k");
  if (column_mask(basis_) != btilde_) throw DimensionMismatch("support mask out of date");
}

void Scenario::add(UserState u) {
  if (u.n() != n || !(u.field() == field)) throw DimensionMismatch("user does not match scenario field or length");
  if (!u.finished()) users.push_back(std::move(u));
}

Scenario read_scenario(std::istream& in) {
  detail::LineReader reader(in);
  auto head = reader.expect("scenario header");
  if (head.size() < 3 || head.size() > 4) reader.fail("scenario header must be 'q N K [poly=<hex>]'");
  std::string spec = "q=" + head[0];
  if (head.size() == 4) {
    if (!head[3].starts_with("poly=")) reader.fail("expected poly=<hex>");
    spec += "," + head[3];
  }
  Scenario s;
  try {
    s.field = Field::parse(spec);
  } catch (const Error& e) {
    reader.fail(e.what());
  }
  s.n = reader.number<std::size_t>(head[1]);
  const auto k = reader.number<std::size_t>(head[2]);
  if (s.n == 0) reader.fail("N must be positive");
  for (std::size_t u = 0; u < k; ++u) {
    auto rl = reader.expect("user rank line");
    if (rl.size() != 1) reader.fail("expected a single integer r_k");
    const auto r = reader.number<std::size_t>(rl[0]);
    if (r > s.n) reader.fail("r_k exceeds N");
    Matrix c(s.field, 0, s.n);
    for (std::size_t i = 0; i < r; ++i) {
      auto t = reader.expect("encoding vector");
      if (t.size() != s.n) reader.fail("expected " + std::to_string(s.n) + " entries");
      Vec row;
      for (const auto& tok : t) {
        const auto v = reader.number<unsigned>(tok);
        if (!s.field.valid(v)) reader.fail("entry " + tok + " outside the field");
        row.push_back(static_cast<Elem>(v));
      }
      c.append_row(row);
    }
    s.add(UserState::from_received(c));
  }
  return s;
}

void write_scenario(std::ostream& out, const Scenario& s) {
  out << s.field.order() << ' ' << s.n << ' ' << s.k();
  if (s.field.degree() > 1) out << " poly=0x" << std::hex << s.field.poly() << std::dec;
  out << '\n';
  for (const auto& u : s.users) {
    out << u.rank() << '\n';
    for (std::size_t i = 0; i < u.rank(); ++i) {
      const auto r = u.received().row(i);
      for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << r[j];
      out << '\n';
    }
  }
}

void LinearForms::validate() const {
  for (std::size_t i = 0; i < coeffs.rows(); ++i)
    if (coeffs.row_is_zero(i)) throw ZeroRow("linear form " + std::to_string(i + 1) + " is identically zero");
}

}  // namespace ebc
