#pragma once

#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "adicscope/diagram.hpp"
#include "adicscope/numeric.hpp"

namespace adicscope {

/// Exact counts of suffix values per residue class for a level window:
/// at(t1,t2,k) = #{ paths t1 -> t2 in E_{m,n} whose suffix value is k mod B }.
/// Marginalizing over k gives P_{m,n}; summing everything gives q_{m,n}.
struct ResidueCountTensor {
  int m = 0, n = 0;
  int d = 0;
  long B = 1;
  BigInt q_mn = 1;
  std::vector<BigInt> counts;  // d * d * B, indexed (t1, t2, k)

  ResidueCountTensor() = default;
  ResidueCountTensor(int m_, int n_, int d_, long B_)
      : m(m_), n(n_), d(d_), B(B_),
        counts(static_cast<std::size_t>(d_) * d_ * B_, 0) {}

  BigInt& at(int t1, int t2, long k) {
    return counts[(static_cast<std::size_t>(t1 - 1) * d + (t2 - 1)) * B + k];
  }
  const BigInt& at(int t1, int t2, long k) const {
    return counts[(static_cast<std::size_t>(t1 - 1) * d + (t2 - 1)) * B + k];
  }

  /// P_{m,n}[t1][t2] recovered from the class marginals.
  BigInt pair_total(int t1, int t2) const {
    BigInt s = 0;
    for (long k = 0; k < B; ++k) s += at(t1, t2, k);
    return s;
  }
};

/// Window (n-1, n) counts, computed analytically over the run-length blocks
/// of w_n: positions of one letter inside a repeated block form arithmetic
/// progressions, so per-class counts are floor-division expressions. The
/// word is never expanded.
ResidueCountTensor level_residue_counts(const DiagramSpec& spec, int n, long B);

/// Window (m, n) counts by the level-by-level composition
/// s_{m,n} = s_{m,n-1} + q_{m,n-1} s_{n-1,n}.
ResidueCountTensor range_residue_counts(const DiagramSpec& spec, int m, int n,
                                        long B);

/// Collapse classes mod B onto classes mod bb (bb must divide B).
ResidueCountTensor collapse_tensor(const ResidueCountTensor& t, long bb);

/// Compose window (m,l) with window (l,n); q_left = q_{m,l}.
ResidueCountTensor compose_tensors(const ResidueCountTensor& left,
                                   const ResidueCountTensor& right,
                                   const BigInt& q_left);

/// Memoizes per-level tensors and prefix residues for window sweeps.
class ResidueCalculator {
 public:
  ResidueCalculator(const DiagramSpec& spec, long B);

  const ResidueCountTensor& level(int n);
  ResidueCountTensor window(int m, int n);

  const DiagramSpec& spec() const { return spec_; }
  long modulus() const { return B_; }

 private:
  const DiagramSpec& spec_;
  long B_;
  std::map<int, ResidueCountTensor> level_cache_;
};

/// Oracle-scale suffix set: the exact values (sorted ascending) of
/// S-bar_{m,n}(t1,t2) obtained from the composed word. Guarded by
/// q_{m,n} <= 10^4.
std::vector<BigInt> suffix_set_bruteforce(const DiagramSpec& spec, int m, int n,
                                          int t1, int t2);

/// Complex sums Sigma(t1,t2) = sum_k N^{(k)} omega^k with
/// omega = exp(-2 pi i a (p_m mod b) / b), normalized by q_{m,n}.
struct SigmaSums {
  int m = 0, n = 0, d = 0;
  std::vector<Complex> normalized;   // Sigma(t1,t2) / q_{m,n}
  std::vector<double> magnitude;     // |Sigma(t1,t2)| / q_{m,n}

  Complex sum(int t1, int t2) const {
    return normalized[static_cast<std::size_t>(t1 - 1) * d + (t2 - 1)];
  }
  double mag(int t1, int t2) const {
    return magnitude[static_cast<std::size_t>(t1 - 1) * d + (t2 - 1)];
  }
};

SigmaSums sigma_sums_raw(const ResidueCountTensor& tensor, const BigInt& a,
                         const BigInt& b, const BigInt& p_m_mod_b);

/// Debug dump: CSV rows (m, n, t1, t2, k, count), counts as decimal strings.
void dump_tensor_csv(const ResidueCountTensor& tensor, std::ostream& out);

}  // namespace adicscope
