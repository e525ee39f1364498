#include "adicscope/residue.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "adicscope/errors.hpp"

namespace adicscope {

ResidueCountTensor level_residue_counts(const DiagramSpec& spec, int n, long B) {
  spec.check_level(n);
  spec.require_toeplitz("level_residue_counts");
  if (B < 1) throw AnalysisError("residue modulus must be >= 1");

  const int d = spec.rank();
  ResidueCountTensor tensor(n - 1, n, d, B);
  tensor.q_mn = spec.q(n);

  for (int t2 = 1; t2 <= d; ++t2) {
    const OrderWord& w = spec.word(n, t2);
    const BigInt q = w.length();
    BigInt offset = 0;  // letters before the current block
    for (const auto& blk : w.blocks()) {
      const long len = static_cast<long>(blk.letters.size());
      const long step = static_cast<long>(len % B);
      const long period = step == 0 ? 1 : B / std::gcd(step, B);
      // Copies c = 0..repeat-1 of letter i sit at positions
      // offset + c*len + i + 1, so their suffixes walk down by `step` mod B;
      // each class on that orbit is hit ceil((repeat - c0) / period) times.
      const BigInt reps = blk.repeat;
      const long copies = reps < period ? reps.convert_to<long>() : period;
      for (long i = 0; i < len; ++i) {
        const int t1 = blk.letters[static_cast<std::size_t>(i)];
        const long base = mod_floor_long(q - offset - i - 1, B);
        for (long c0 = 0; c0 < copies; ++c0) {
          const long k = mod_floor_long(BigInt(base) - BigInt(c0) * step, B);
          tensor.at(t1, t2, k) += (reps - 1 - c0) / period + 1;
        }
      }
      offset += BigInt(len) * reps;
    }
  }
  return tensor;
}

ResidueCountTensor compose_tensors(const ResidueCountTensor& left,
                                   const ResidueCountTensor& right,
                                   const BigInt& q_left) {
  const int d = left.d;
  const long B = left.B;
  ResidueCountTensor out(left.m, right.n, d, B);
  out.q_mn = left.q_mn * right.q_mn;
  const long shift = mod_floor_long(q_left, B);
  // s = s_left + q_left * s_right, so class k1 composed with k2 lands in
  // (k1 + shift*k2) mod B.
  for (int t2 = 1; t2 <= d; ++t2)
    for (int t3 = 1; t3 <= d; ++t3)
      for (long k2 = 0; k2 < B; ++k2) {
        const BigInt& rc = right.at(t2, t3, k2);
        if (rc == 0) continue;
        const long add = (shift * k2) % B;
        for (int t1 = 1; t1 <= d; ++t1)
          for (long k1 = 0; k1 < B; ++k1) {
            const BigInt& lc = left.at(t1, t2, k1);
            if (lc == 0) continue;
            out.at(t1, t3, (k1 + add) % B) += lc * rc;
          }
      }
  return out;
}

ResidueCountTensor range_residue_counts(const DiagramSpec& spec, int m, int n,
                                        long B) {
  ResidueCalculator calc(spec, B);
  return calc.window(m, n);
}

ResidueCountTensor collapse_tensor(const ResidueCountTensor& t, long bb) {
  if (bb < 1 || t.B % bb != 0)
    throw AnalysisError("collapse_tensor: " + std::to_string(bb) +
                        " does not divide " + std::to_string(t.B));
  ResidueCountTensor out(t.m, t.n, t.d, bb);
  out.q_mn = t.q_mn;
  for (int t1 = 1; t1 <= t.d; ++t1)
    for (int t2 = 1; t2 <= t.d; ++t2)
      for (long k = 0; k < t.B; ++k) out.at(t1, t2, k % bb) += t.at(t1, t2, k);
  return out;
}

ResidueCalculator::ResidueCalculator(const DiagramSpec& spec, long B)
    : spec_(spec), B_(B) {
  spec_.require_toeplitz("residue counts");
  if (B < 1) throw AnalysisError("residue modulus must be >= 1");
}

const ResidueCountTensor& ResidueCalculator::level(int n) {
  auto it = level_cache_.find(n);
  if (it == level_cache_.end())
    it = level_cache_.emplace(n, level_residue_counts(spec_, n, B_)).first;
  return it->second;
}

ResidueCountTensor ResidueCalculator::window(int m, int n) {
  spec_.check_window(m, n);
  ResidueCountTensor acc = level(m + 1);
  for (int lev = m + 2; lev <= n; ++lev)
    acc = compose_tensors(acc, level(lev), spec_.q_range(m, lev - 1));
  return acc;
}

std::vector<BigInt> suffix_set_bruteforce(const DiagramSpec& spec, int m, int n,
                                          int t1, int t2) {
  spec.check_window(m, n);
  spec.require_toeplitz("suffix_set_bruteforce");
  const BigInt q = spec.q_range(m, n);
  if (q > 10000)
    throw AnalysisError("suffix_set_bruteforce: q_{m,n} = " + q.str() +
                        " exceeds the oracle scale 10^4");
  const std::vector<int> letters = compose_words(spec, m, n, t2).expand(10000);
  std::vector<BigInt> values;
  for (std::size_t j = 0; j < letters.size(); ++j)
    if (letters[j] == t1) values.push_back(q - BigInt(j + 1));
  std::sort(values.begin(), values.end());
  return values;
}

SigmaSums sigma_sums_raw(const ResidueCountTensor& tensor, const BigInt& a,
                         const BigInt& b, const BigInt& p_m_mod_b) {
  if (b < 1 || BigInt(tensor.B) != b)
    throw AnalysisError("sigma_sums: tensor modulus " +
                        std::to_string(tensor.B) + " does not match b = " +
                        b.str());
  SigmaSums out;
  out.m = tensor.m;
  out.n = tensor.n;
  out.d = tensor.d;
  const double theta =
      -2.0 * M_PI *
      mod_floor(a * p_m_mod_b, b).convert_to<double>() / b.convert_to<double>();
  std::vector<Complex> roots(static_cast<std::size_t>(tensor.B));
  for (long k = 0; k < tensor.B; ++k)
    roots[static_cast<std::size_t>(k)] =
        Complex(std::cos(theta * k), std::sin(theta * k));
  out.normalized.resize(static_cast<std::size_t>(tensor.d) * tensor.d);
  out.magnitude.resize(out.normalized.size());
  for (int t1 = 1; t1 <= tensor.d; ++t1)
    for (int t2 = 1; t2 <= tensor.d; ++t2) {
      Complex z(0.0, 0.0);
      for (long k = 0; k < tensor.B; ++k) {
        const BigInt& c = tensor.at(t1, t2, k);
        if (c == 0) continue;
        // Exact rational normalization first, floating point after.
        z += to_double(BigRat(c, tensor.q_mn)) * roots[static_cast<std::size_t>(k)];
      }
      const std::size_t idx =
          static_cast<std::size_t>(t1 - 1) * tensor.d + (t2 - 1);
      out.normalized[idx] = z;
      out.magnitude[idx] = std::abs(z);
    }
  return out;
}

void dump_tensor_csv(const ResidueCountTensor& tensor, std::ostream& out) {
  out << "m,n,t1,t2,k,count\n";
  for (int t1 = 1; t1 <= tensor.d; ++t1)
    for (int t2 = 1; t2 <= tensor.d; ++t2)
      for (long k = 0; k < tensor.B; ++k)
        out << tensor.m << ',' << tensor.n << ',' << t1 << ',' << t2 << ','
            << k << ',' << tensor.at(t1, t2, k).str() << "\n";
}

}  // namespace adicscope
