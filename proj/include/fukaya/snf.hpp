#pragma once

#include <optional>
#include <vector>

namespace fukaya {

using IntMatrix = std::vector<std::vector<long long>>;

// Diagonalization U*A*V = D by integer row and column operations; only the
// diagonal and the row transform U are returned (that is all the congruence
// solver needs).
struct DiagonalForm {
  std::vector<long long> diagonal;  // min(rows, cols) entries
  IntMatrix u;                      // rows x rows, unimodular
};

DiagonalForm diagonalize(IntMatrix a);

// Whether B*g = rhs (mod m) has a solution g.
bool congruence_solvable(const IntMatrix& b, const std::vector<long long>& rhs, long long m);

// Lexicographically smallest solution of B*g = rhs (mod m) with entries in
// [0, m), found by fixing coordinates left to right against a feasibility
// check on the reduced system; empty when the system is inconsistent.
std::optional<std::vector<long long>> solve_congruence_lexmin(const IntMatrix& b,
                                                              const std::vector<long long>& rhs,
                                                              long long m);

long long det_bareiss(const IntMatrix& m);
IntMatrix inverse_unimodular(const IntMatrix& m);  // requires |det| = 1

}  // namespace fukaya
