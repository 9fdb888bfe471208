#include "fukaya/snf.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "fukaya/errors.hpp"
#include "fukaya/rational.hpp"

namespace fukaya {

namespace {

long long mod_reduce(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

DiagonalForm diagonalize(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  IntMatrix u(rows, std::vector<long long>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;

  auto row_sub = [&](std::size_t dst, std::size_t src, long long q) {
    for (std::size_t j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
    for (std::size_t j = 0; j < rows; ++j) u[dst][j] -= q * u[src][j];
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, long long q) {
    for (std::size_t i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = t, pj = t;
      long long best = 0;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          long long v = std::llabs(a[i][j]);
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      }
      if (best == 0) break;
      if (pi != t) row_swap(t, pi);
      if (pj != t) col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] != 0) {
          row_sub(i, t, a[i][t] / a[t][t]);
          if (a[i][t] != 0) clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] != 0) {
          col_sub(j, t, a[t][j] / a[t][t]);
          if (a[t][j] != 0) clean = false;
        }
      }
      if (clean) break;
    }
  }

  DiagonalForm out;
  out.diagonal.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = a[t][t];
  out.u = std::move(u);
  return out;
}

bool congruence_solvable(const IntMatrix& b, const std::vector<long long>& rhs, long long m) {
  if (b.size() != rhs.size()) throw ValidationError("congruence system shape mismatch");
  if (m < 1) throw ValidationError("congruence modulus must be positive");
  const std::size_t rows = b.size();
  if (rows == 0) return true;
  DiagonalForm d = diagonalize(b);
  // c = U * rhs; solvability of d_i * h_i = c_i (mod m) per pivot row,
  // c_i = 0 (mod m) for the rows beyond the diagonal.
  for (std::size_t i = 0; i < rows; ++i) {
    long long c = 0;
    for (std::size_t j = 0; j < rows; ++j) {
      c = mod_reduce(c + mod_reduce(d.u[i][j], m) * mod_reduce(rhs[j], m), m);
    }
    long long di = i < d.diagonal.size() ? d.diagonal[i] : 0;
    long long g = std::gcd(std::llabs(di), m);
    if (g == 0) g = m;
    if (c % g != 0) return false;
  }
  return true;
}

std::optional<std::vector<long long>> solve_congruence_lexmin(const IntMatrix& b,
                                                              const std::vector<long long>& rhs,
                                                              long long m) {
  if (!congruence_solvable(b, rhs, m)) return std::nullopt;
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix sys = b;
  std::vector<long long> target = rhs;
  std::vector<long long> g(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    std::vector<long long> pin(cols, 0);
    pin[i] = 1;
    sys.push_back(pin);
    bool found = false;
    for (long long v = 0; v < m; ++v) {
      target.push_back(v);
      if (congruence_solvable(sys, target, m)) {
        g[i] = v;
        found = true;
        break;
      }
      target.pop_back();
    }
    if (!found) return std::nullopt;  // unreachable when the system is solvable
  }
  return g;
}

long long det_bareiss(const IntMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw ValidationError("determinant of a non-square matrix");
  }
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  __int128 sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  __int128 det = sign * a[n - 1][n - 1];
  if (det > __int128(9223372036854775807LL) || det < -__int128(9223372036854775807LL) - 1) {
    throw std::overflow_error("determinant overflow");
  }
  return static_cast<long long>(det);
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  long long det = det_bareiss(m);
  if (det != 1 && det != -1) {
    throw ValidationError("matrix inverse requires determinant +-1, got " + std::to_string(det));
  }
  const std::size_t n = m.size();
  // Gauss-Jordan over exact rationals; entries of the result are integers
  // because |det| = 1.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    a[i][n + i] = Rational(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw ValidationError("singular matrix in inverse_unimodular");
    std::swap(a[col], a[pivot]);
    Rational p = a[col][col];
    for (auto& x : a[col]) x /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      Rational f = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  IntMatrix out(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = a[i][n + j];
      if (!v.is_integer()) throw ValidationError("non-integer entry in unimodular inverse");
      out[i][j] = v.num();
    }
  }
  return out;
}

}  // namespace fukaya
