#pragma once

#include "shiftlab/scalar.hpp"
#include "shiftlab/verdict.hpp"

#include <cstddef>
#include <vector>

namespace shiftlab {

class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim);
  // Rejects non-square or non-symmetric input.
  static SymMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  std::size_t dim() const { return n_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& v);

  SymMatrix principal(const std::vector<std::size_t>& idx) const;
  // Entry (i,j) of the result is entry (perm[i], perm[j]) of this matrix.
  SymMatrix permuted(const std::vector<std::size_t>& perm) const;
  Track track() const;
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::vector<Scalar> a_;
};

// Fraction-free elimination (Bareiss) on the exact track.
Scalar determinant(const SymMatrix& m);

struct PsdVerdict {
  bool psd = false;
  Status status = Status::undecided;
  Track track = Track::exact;
  // LDL^T data in pivot order: M[p][p] = L D L^T with p = pivots.
  std::vector<std::size_t> pivots;
  std::vector<Scalar> diagonal;
  std::vector<std::vector<Scalar>> lower;
  // Principal index set (original indices, sorted) whose minor is negative.
  std::vector<std::size_t> negative_minor;
  Scalar minor_det;
  std::string note;
};

PsdVerdict psd_check(const SymMatrix& m);

// Rebuilds P^T L D L^T P from a psd witness and compares it to m exactly.
bool reconstructs(const SymMatrix& m, const PsdVerdict& v);

}  // namespace shiftlab
