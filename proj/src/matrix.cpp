#include "ebc/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <utility>

#include "text_io.hpp"

namespace ebc {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(Field field, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(std::move(field), 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vec(i));
  return out;
}

void Matrix::append_row(std::span<const Elem> r) {
  if (r.size() != cols_)
    throw DimensionMismatch("row of length " + std::to_string(r.size()) + " appended to matrix with " +
                            std::to_string(cols_) + " columns");
  for (Elem v : r)
    if (!field_.valid(v)) throw DimensionMismatch("entry " + std::to_string(v) + " outside " + field_.to_string());
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

void Matrix::truncate_rows(std::size_t n) {
  if (n >= rows_) return;
  rows_ = n;
  data_.resize(rows_ * cols_);
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix s(field_, rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(i, cols[j]);
  return s;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix s(field_, 0, cols_);
  for (std::size_t i : rows) s.append_row(row(i));
  return s;
}

Vec Matrix::apply(std::span<const Elem> x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector product with mismatched length");
  Vec y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) y[i] = inner(field_, row(i), x);
  return y;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product with mismatched inner dimension");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) = field_.mul_add(out(i, j), a, rhs(k, j));
    }
  return out;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Elem v) { return v == 0; });
}

bool Matrix::row_is_zero(std::size_t i) const noexcept {
  const auto r = row(i);
  return std::all_of(r.begin(), r.end(), [](Elem v) { return v == 0; });
}

std::size_t hamming_weight(std::span<const Elem> v) noexcept {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem e) { return e != 0; }));
}

std::vector<std::size_t> support(std::span<const Elem> v) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back(i);
  return s;
}

Elem inner(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner product of vectors with different lengths");
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

namespace {

// In-place Gauss-Jordan elimination of `a`, mirroring every row operation on
// `rhs` when given. Pivots are searched only in the columns of `a`.
std::vector<std::size_t> gauss_jordan(Matrix& a, Matrix* rhs) {
  const Field& f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    if (rhs) rhs->swap_rows(r, p);

    const Elem scale = f.inv(a(r, c));
    if (scale != 1) {
      for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(scale, a(r, j));
      if (rhs)
        for (auto& v : rhs->row(r)) v = f.mul(scale, v);
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Elem factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
      if (rhs)
        for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(i, j) = f.sub((*rhs)(i, j), f.mul(factor, (*rhs)(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RrefResult rref(const Matrix& m) {
  RrefResult res{m, 0, {}, {}};
  res.pivot_cols = gauss_jordan(res.rref, nullptr);
  res.rank = res.pivot_cols.size();
  res.col_perm = res.pivot_cols;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : res.pivot_cols) is_pivot[c] = true;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) res.col_perm.push_back(c);
  return res;
}

std::size_t rank(const Matrix& m) {
  Matrix copy = m;
  return gauss_jordan(copy, nullptr).size();
}

Matrix independent_rows(const Matrix& m) {
  const Field& f = m.field();
  Matrix out(f, 0, m.cols());
  // Reduced copies of the kept rows, each normalized at its pivot.
  std::vector<std::pair<std::size_t, Vec>> basis;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec r = m.row_vec(i);
    for (const auto& [pc, b] : basis) {
      const Elem factor = r[pc];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < r.size(); ++j)
        if (b[j] != 0) r[j] = f.sub(r[j], f.mul(factor, b[j]));
    }
    auto lead = std::find_if(r.begin(), r.end(), [](Elem v) { return v != 0; });
    if (lead == r.end()) continue;
    const Elem scale = f.inv(*lead);
    for (auto& v : r) v = f.mul(scale, v);
    basis.emplace_back(static_cast<std::size_t>(lead - r.begin()), std::move(r));
    out.append_row(m.row(i));
  }
  return out;
}

Matrix null_space_basis(const Matrix& c) {
  const Field& f = c.field();
  const RrefResult rr = rref(c);
  const std::size_t n = c.cols();
  Matrix b(f, n - rr.rank, n);
  for (std::size_t k = rr.rank; k < n; ++k) {
    const std::size_t free_col = rr.col_perm[k];
    const std::size_t row = k - rr.rank;
    b(row, free_col) = 1;
    for (std::size_t i = 0; i < rr.rank; ++i) b(row, rr.pivot_cols[i]) = f.neg(rr.rref(i, free_col));
  }
  return b;
}

bool in_row_space(std::span<const Elem> x, const Matrix& c) {
  if (x.size() != c.cols()) throw DimensionMismatch("membership test with mismatched length");
  Matrix ext = c;
  ext.append_row(x);
  return rank(ext) == rank(c);
}

bool in_row_space_dual(std::span<const Elem> x, const Matrix& c) {
  if (x.size() != c.cols()) throw DimensionMismatch("membership test with mismatched length");
  const Vec y = null_space_basis(c).apply(x);
  return std::all_of(y.begin(), y.end(), [](Elem v) { return v == 0; });
}

std::optional<LinearSolution> solve_dense(const Matrix& a, const Matrix& rhs) {
  if (rhs.rows() != a.rows()) throw DimensionMismatch("right-hand side row count differs from system");
  Matrix work = a;
  Matrix b = rhs;
  auto pivots = gauss_jordan(work, &b);
  for (std::size_t i = pivots.size(); i < b.rows(); ++i)
    if (!b.row_is_zero(i)) return std::nullopt;
  LinearSolution sol{Matrix(a.field(), a.cols(), rhs.cols()), pivots.size(), std::move(pivots)};
  for (std::size_t i = 0; i < sol.rank; ++i)
    std::copy(b.row(i).begin(), b.row(i).end(), sol.x.row(sol.pivot_cols[i]).begin());
  return sol;
}

namespace {

struct Entry {
  std::uint32_t col;
  Elem val;
};
using SparseRow = std::vector<Entry>;

// r - factor * p, where p is normalized with its leading entry at column
// `lead` and r holds `factor` at that column. Both are sorted by column.
SparseRow eliminate(const Field& f, const SparseRow& r, const SparseRow& p, Elem factor) {
  SparseRow out;
  out.reserve(r.size() + p.size());
  const std::uint32_t lead = p.front().col;
  std::size_t i = 0;
  std::size_t j = 1;
  while (i < r.size() || j < p.size()) {
    if (i < r.size() && r[i].col == lead) {
      ++i;
      continue;
    }
    if (j >= p.size() || (i < r.size() && r[i].col < p[j].col)) {
      out.push_back(r[i++]);
    } else if (i >= r.size() || p[j].col < r[i].col) {
      out.push_back({p[j].col, f.neg(f.mul(factor, p[j].val))});
      ++thread_op_counts().add;
      ++j;
    } else {
      const Elem v = f.sub(r[i].val, f.mul(factor, p[j].val));
      if (v != 0) out.push_back({r[i].col, v});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

std::optional<LinearSolution> solve_sparse(const Matrix& a, const Matrix& rhs, std::size_t weight_bound) {
  if (rhs.rows() != a.rows()) throw DimensionMismatch("right-hand side row count differs from system");
  const Field& f = a.field();
  const std::size_t n = a.cols();
  const std::size_t width = rhs.cols();

  std::vector<SparseRow> pivot_rows;
  std::vector<Vec> pivot_rhs;
  std::vector<std::int64_t> pivot_of_col(n, -1);

  for (std::size_t i = 0; i < a.rows(); ++i) {
    SparseRow r;
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) != 0) r.push_back({static_cast<std::uint32_t>(j), a(i, j)});
    if (r.size() > weight_bound)
      throw DimensionMismatch("row " + std::to_string(i) + " has weight " + std::to_string(r.size()) +
                              " above bound " + std::to_string(weight_bound));
    Vec b = rhs.row_vec(i);

    std::size_t k = 0;
    while (k < r.size()) {
      const std::int64_t p = pivot_of_col[r[k].col];
      if (p < 0) {
        ++k;
        continue;
      }
      const Elem factor = r[k].val;
      r = eliminate(f, r, pivot_rows[p], factor);
      const Vec& pb = pivot_rhs[p];
      for (std::size_t j = 0; j < width; ++j)
        if (pb[j] != 0) b[j] = f.sub(b[j], f.mul(factor, pb[j]));
    }

    if (r.empty()) {
      if (std::any_of(b.begin(), b.end(), [](Elem v) { return v != 0; })) return std::nullopt;
      continue;
    }
    const Elem scale = f.inv(r.front().val);
    if (scale != 1) {
      for (auto& e : r) e.val = f.mul(scale, e.val);
      for (auto& v : b) v = f.mul(scale, v);
    }
    pivot_of_col[r.front().col] = static_cast<std::int64_t>(pivot_rows.size());
    pivot_rows.push_back(std::move(r));
    pivot_rhs.push_back(std::move(b));
  }

  LinearSolution sol{Matrix(f, n, width), pivot_rows.size(), {}};
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_of_col[c] >= 0) sol.pivot_cols.push_back(c);

  // Back substitution, highest pivot column first; free variables stay zero.
  for (auto it = sol.pivot_cols.rbegin(); it != sol.pivot_cols.rend(); ++it) {
    const auto& r = pivot_rows[pivot_of_col[*it]];
    Vec acc = pivot_rhs[pivot_of_col[*it]];
    for (std::size_t e = 1; e < r.size(); ++e) {
      const auto xr = sol.x.row(r[e].col);
      if (pivot_of_col[r[e].col] < 0) continue;
      for (std::size_t j = 0; j < width; ++j)
        if (xr[j] != 0) acc[j] = f.sub(acc[j], f.mul(r[e].val, xr[j]));
    }
    std::copy(acc.begin(), acc.end(), sol.x.row(*it).begin());
  }
  return sol;
}

Matrix read_matrix(std::istream& in) {
  detail::LineReader reader(in);
  auto head = reader.expect("matrix header");
  if (head.size() < 3 || head.size() > 4) reader.fail("matrix header must be 'rows cols q [poly=<hex>]'");
  const auto rows = reader.number<std::size_t>(head[0]);
  const auto cols = reader.number<std::size_t>(head[1]);
  std::string spec = "q=" + head[2];
  if (head.size() == 4) {
    if (!head[3].starts_with("poly=")) reader.fail("expected poly=<hex>");
    spec += "," + head[3];
  }
  Field f = Field::parse(spec);
  Matrix m(f, 0, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto t = reader.expect("matrix row");
    if (t.size() != cols) reader.fail("expected " + std::to_string(cols) + " entries");
    Vec r;
    for (const auto& s : t) {
      const auto v = reader.number<unsigned>(s);
      if (!f.valid(v)) reader.fail("entry " + s + " outside the field");
      r.push_back(static_cast<Elem>(v));
    }
    m.append_row(r);
  }
  return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.field().order();
  if (m.field().degree() > 1) out << " poly=0x" << std::hex << m.field().poly() << std::dec;
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

}  // namespace ebc
