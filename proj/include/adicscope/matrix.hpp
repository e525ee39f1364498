#pragma once

#include <vector>

#include "adicscope/errors.hpp"
#include "adicscope/numeric.hpp"

namespace adicscope {

/// Dense square matrix of exact integers. d is small (the rank of the
/// diagram), entries are huge; nothing clever is needed here.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int d) : d_(d), a_(static_cast<std::size_t>(d) * d, 0) {}

  static IntMatrix identity(int d) {
    IntMatrix m(d);
    for (int i = 1; i <= d; ++i) m.at(i, i) = 1;
    return m;
  }

  int dim() const { return d_; }

  /// 1-indexed access, matching vertex ids.
  BigInt& at(int r, int c) {
    return a_[static_cast<std::size_t>(r - 1) * d_ + (c - 1)];
  }
  const BigInt& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r - 1) * d_ + (c - 1)];
  }

  BigInt column_sum(int c) const {
    BigInt s = 0;
    for (int r = 1; r <= d_; ++r) s += at(r, c);
    return s;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.d_ != y.d_) throw AnalysisError("matrix product: dimension mismatch");
    IntMatrix z(x.d_);
    for (int i = 1; i <= x.d_; ++i)
      for (int k = 1; k <= x.d_; ++k) {
        const BigInt& xik = x.at(i, k);
        if (xik == 0) continue;
        for (int j = 1; j <= x.d_; ++j) z.at(i, j) += xik * y.at(k, j);
      }
    return z;
  }

  bool operator==(const IntMatrix&) const = default;

 private:
  int d_ = 0;
  std::vector<BigInt> a_;
};

}  // namespace adicscope
