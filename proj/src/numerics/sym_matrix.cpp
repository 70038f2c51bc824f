#include "shiftlab/sym_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

const char* to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::undecided: return "undecided";
  }
  return "?";
}

Status both(Status a, Status b) {
  if (a == Status::fails || b == Status::fails) return Status::fails;
  if (a == Status::undecided || b == Status::undecided) return Status::undecided;
  return Status::holds;
}

Status nonneg(Sign s) {
  switch (s) {
    case Sign::positive:
    case Sign::zero: return Status::holds;
    case Sign::negative: return Status::fails;
    case Sign::tie: return Status::undecided;
  }
  return Status::undecided;
}

Status from_optional(const std::optional<bool>& b) {
  if (!b) return Status::undecided;
  return *b ? Status::holds : Status::fails;
}

SymMatrix::SymMatrix(std::size_t dim) : n_(dim), a_(dim * dim) {}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  SymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("SymMatrix: rows must form a square matrix");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j < i && !equal(rows[i][j], rows[j][i]))
        throw std::invalid_argument("SymMatrix: input is not symmetric");
      m.a_[i * m.n_ + j] = rows[i][j];
    }
  }
  for (std::size_t i = 0; i < m.n_; ++i)
    for (std::size_t j = 0; j < i; ++j) m.a_[i * m.n_ + j] = m.a_[j * m.n_ + i];
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  a_[i * n_ + j] = v;
  a_[j * n_ + i] = v;
}

SymMatrix SymMatrix::principal(const std::vector<std::size_t>& idx) const {
  SymMatrix m(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m.a_[i * m.n_ + j] = (*this)(idx[i], idx[j]);
  return m;
}

SymMatrix SymMatrix::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permutation size mismatch");
  return principal(perm);
}

Track SymMatrix::track() const {
  for (const auto& x : a_)
    if (!x.is_exact()) return Track::approx;
  return Track::exact;
}

std::string SymMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Scalar determinant(const SymMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return Scalar(1);
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Scalar prev(1);
  int flips = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return Scalar(0);
      std::swap(a[k], a[r]);
      ++flips;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = Scalar(0);
    }
    prev = a[k][k];
  }
  Scalar d = a[n - 1][n - 1];
  return flips % 2 ? -d : d;
}

PsdVerdict psd_check(const SymMatrix& m) {
  const std::size_t n = m.dim();
  PsdVerdict v;
  v.track = m.track();
  std::vector<std::vector<Scalar>> s(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i][j] = m(i, j);
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
  std::vector<std::vector<Scalar>> lcol(n);

  auto fail_with = [&](std::vector<std::size_t> extra, const std::string& why) {
    std::vector<std::size_t> idx = v.pivots;
    idx.insert(idx.end(), extra.begin(), extra.end());
    std::sort(idx.begin(), idx.end());
    Scalar det = determinant(m.principal(idx));
    Sign sg = sign(det);
    if (sg == Sign::negative) {
      v.psd = false;
      v.status = Status::fails;
      v.negative_minor = idx;
      v.minor_det = det;
      v.note = why;
    } else if (v.track == Track::exact) {
      throw std::logic_error("psd_check: witness minor is not negative");
    } else {
      v.status = Status::undecided;
      v.note = "pivot within tolerance of zero";
    }
    return v;
  };

  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < remaining.size(); ++t)
      if (compare(s[remaining[t]][remaining[t]], s[remaining[best]][remaining[best]]) == Sign::positive) best = t;
    const std::size_t p = remaining[best];
    const Sign sg = sign(s[p][p]);
    if (sg == Sign::negative) return fail_with({p}, "negative pivot");
    if (sg == Sign::tie || sg == Sign::zero) {
      // Every remaining diagonal entry is <= 0 here.
      bool tie = sg == Sign::tie;
      for (std::size_t q : remaining) {
        Sign d = sign(s[q][q]);
        if (d == Sign::negative) return fail_with({q}, "negative pivot");
        if (d == Sign::tie) tie = true;
      }
      for (std::size_t a = 0; a < remaining.size(); ++a)
        for (std::size_t b = a + 1; b < remaining.size(); ++b) {
          Sign o = sign(s[remaining[a]][remaining[b]]);
          if (o == Sign::tie) {
            tie = true;
          } else if (o != Sign::zero && !tie) {
            return fail_with({remaining[a], remaining[b]}, "zero pivot with nonzero off-diagonal");
          }
        }
      if (tie) {
        v.status = Status::undecided;
        v.note = "pivot within tolerance of zero";
        return v;
      }
      for (std::size_t q : remaining) {
        v.pivots.push_back(q);
        v.diagonal.push_back(Scalar(0));
        lcol[q].resize(v.pivots.size() - 1);
      }
      remaining.clear();
      break;
    }
    const Scalar d = s[p][p];
    v.pivots.push_back(p);
    v.diagonal.push_back(d);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    for (std::size_t i : remaining) lcol[i].push_back(s[i][p] / d);
    for (std::size_t i : remaining)
      for (std::size_t j : remaining)
        if (j >= i) {
          s[i][j] = s[i][j] - s[i][p] * s[p][j] / d;
          s[j][i] = s[i][j];
        }
  }
  v.psd = true;
  v.status = Status::holds;
  v.lower.assign(n, std::vector<Scalar>(n));
  for (std::size_t r = 0; r < n; ++r) {
    v.lower[r][r] = Scalar(1);
    const auto& col = lcol[v.pivots[r]];
    for (std::size_t c = 0; c < r && c < col.size(); ++c) v.lower[r][c] = col[c];
  }
  return v;
}

bool reconstructs(const SymMatrix& m, const PsdVerdict& v) {
  const std::size_t n = m.dim();
  if (!v.psd || v.pivots.size() != n) return false;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c) {
      Scalar acc(0);
      for (std::size_t k = 0; k <= c; ++k) acc += v.lower[r][k] * v.diagonal[k] * v.lower[c][k];
      if (!equal(acc, m(v.pivots[r], v.pivots[c]))) return false;
    }
  return true;
}

}  // namespace shiftlab
