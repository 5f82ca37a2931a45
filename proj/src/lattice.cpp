#include "frameforge/lattice.hpp"

#include <cstdlib>

#include <algorithm>
#include <numeric>

#include "frameforge/errors.hpp"

namespace frameforge {

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw Error(ErrorCode::Parse, "empty number");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
    std::int64_t value = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
      value = value * 10 + (s[i] - '0');
    }
    return s[0] == '-' ? -value : value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::vector<std::vector<std::int64_t>> integer_echelon(std::vector<std::vector<std::int64_t>> rows,
                                                       const std::vector<int>& column_order) {
  std::size_t r = 0;
  for (int c : column_order) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] != 0 && (best == rows.size() || std::abs(rows[i][c]) < std::abs(rows[best][c]))) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const std::int64_t q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0) {
        for (auto& x : rows[r]) x = -x;
      }
      for (std::size_t i = 0; i < r; ++i) {
        const std::int64_t q = rows[i][c] >= 0 ? rows[i][c] / rows[r][c]
                                               : -((-rows[i][c] + rows[r][c] - 1) / rows[r][c]);
        for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

TranslationGroup TranslationGroup::full_space(int dim) {
  TranslationGroup t;
  t.dim_ = dim;
  t.full_ = true;
  for (int i = 0; i < dim; ++i) {
    RVector e = RVector::Constant(dim, Rational(0));
    e[i] = 1;
    t.generators_.push_back(e);
  }
  return t;
}

TranslationGroup TranslationGroup::integer_lattice(int dim) {
  std::vector<RVector> gens;
  for (int i = 0; i < dim; ++i) {
    RVector e = RVector::Constant(dim, Rational(0));
    e[i] = 1;
    gens.push_back(e);
  }
  return generated_by(dim, std::move(gens));
}

TranslationGroup TranslationGroup::generated_by(int dim, std::vector<RVector> generators) {
  TranslationGroup t;
  t.dim_ = dim;
  std::int64_t den = 1;
  for (const auto& g : generators) {
    if (g.size() != dim) throw Error(ErrorCode::Parse, "translation generator has the wrong dimension");
    for (int i = 0; i < dim; ++i) den = std::lcm(den, g[i].denominator());
  }
  t.denominator_ = den;
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& g : generators) {
    std::vector<std::int64_t> row(dim);
    for (int i = 0; i < dim; ++i) row[i] = (g[i] * den).numerator();
    rows.push_back(std::move(row));
  }
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  t.echelon_ = integer_echelon(std::move(rows), order);
  for (const auto& row : t.echelon_) {
    t.pivots_.push_back(static_cast<int>(std::find_if(row.begin(), row.end(), [](auto x) { return x != 0; }) - row.begin()));
  }
  t.generators_ = std::move(generators);
  return t;
}

std::vector<RVector> TranslationGroup::basis() const {
  if (full_) return generators_;
  std::vector<RVector> out;
  for (const auto& row : echelon_) {
    RVector v(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = Rational(row[i], denominator_);
    out.push_back(std::move(v));
  }
  return out;
}

bool TranslationGroup::contains(const RVector& v) const {
  if (v.size() != dim_) return false;
  if (full_) return true;
  std::vector<std::int64_t> w(dim_);
  for (int i = 0; i < dim_; ++i) {
    const Rational scaled = v[i] * denominator_;
    if (scaled.denominator() != 1) return false;
    w[i] = scaled.numerator();
  }
  for (std::size_t r = 0; r < echelon_.size(); ++r) {
    const int p = pivots_[r];
    for (int c = 0; c < p; ++c) {
      if (w[c] != 0) return false;
    }
    if (w[p] % echelon_[r][p] != 0) return false;
    const std::int64_t q = w[p] / echelon_[r][p];
    for (int c = 0; c < dim_; ++c) w[c] -= q * echelon_[r][c];
  }
  return std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; });
}

bool TranslationGroup::contains(const TranslationGroup& other) const {
  if (other.dim_ != dim_) return false;
  if (full_) return true;
  if (other.full_) return dim_ == 0;
  return std::all_of(other.generators_.begin(), other.generators_.end(), [&](const RVector& g) { return contains(g); });
}

bool TranslationGroup::contains_padded(const TranslationGroup& other) const {
  if (other.dim_ > dim_) return false;
  if (full_) return true;
  if (other.full_) return other.dim_ == 0;
  for (const auto& g : other.generators_) {
    RVector padded = RVector::Constant(dim_, Rational(0));
    padded.head(other.dim_) = g;
    if (!contains(padded)) return false;
  }
  return true;
}

bool TranslationGroup::invariant_under(const std::vector<Eigen::MatrixXi>& matrices) const {
  if (full_) return true;
  for (const auto& m : matrices) {
    const RMatrix mq = to_rational(m);
    for (const auto& g : generators_) {
      if (!contains(RVector(mq * g))) return false;
    }
  }
  return true;
}

TranslationGroup TranslationGroup::leading_intersection(int m) const {
  if (full_) return full_space(m);
  std::vector<int> order;
  for (int c = m; c < dim_; ++c) order.push_back(c);
  for (int c = 0; c < m; ++c) order.push_back(c);
  const auto reordered = integer_echelon(echelon_, order);
  std::vector<RVector> gens;
  for (const auto& row : reordered) {
    if (std::any_of(row.begin() + m, row.end(), [](auto x) { return x != 0; })) continue;
    RVector v(m);
    for (int i = 0; i < m; ++i) v[i] = Rational(row[i], denominator_);
    gens.push_back(std::move(v));
  }
  return generated_by(m, std::move(gens));
}

}  // namespace frameforge
