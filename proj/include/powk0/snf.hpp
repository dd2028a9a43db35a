#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powk0/int_matrix.hpp"

namespace powk0 {

/// Smith normal form of an integer matrix: U * M * V = diag(s_1, ..., s_t)
/// with s_i >= 0, each nonzero s_i dividing s_{i+1}, zeros trailing, and
/// U, V unimodular when requested.
struct SnfResult {
    std::vector<Int> diag;                                 // length min(rows, cols)
    std::size_t rank = 0;                                  // count of nonzero entries
    std::optional<std::pair<IntMatrix, IntMatrix>> transforms; // (U, V)
};

SnfResult smith_normal_form(const IntMatrix& m, bool want_transforms = false);

/// Finitely generated abelian group Z^free + Z/f_1 + ... + Z/f_r, carried in
/// both invariant-factor form (f_i | f_{i+1}, f_i >= 2) and primary form
/// (multiset of prime powers, sorted).
struct AbelianGroupDecomp {
    std::size_t free_rank = 0;
    std::vector<Int> invariant_factors;
    std::vector<Int> primary_factors;

    bool operator==(const AbelianGroupDecomp&) const = default;
    std::string to_string() const;
    nlohmann::json to_json() const;
    static AbelianGroupDecomp from_json(const nlohmann::json& j);
};

/// Isomorphism test: equal free ranks and equal primary-factor multisets.
bool isomorphic(const AbelianGroupDecomp& a, const AbelianGroupDecomp& b);

/// Build a decomposition from a list of invariant factors (entries <= 1 are
/// dropped; the list must form a divisibility chain).
AbelianGroupDecomp decomp_from_invariant_factors(std::size_t free_rank,
                                                 const std::vector<Int>& factors);

/// Cokernel of M as a map Z^cols -> Z^rows: free rank = rows - rank(M),
/// torsion = nonzero SNF diagonal entries exceeding 1.
AbelianGroupDecomp cokernel(const IntMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination. Deliberately a
/// separate code path from the SNF reduction. Throws on non-square input.
Int determinant(const IntMatrix& m);

inline constexpr std::uint64_t kDefaultMinorBudget = 10'000'000;

/// Thrown when a minor enumeration would exceed its submatrix budget; carries
/// the required count so the caller can raise the budget.
struct MinorBudgetExceeded : std::runtime_error {
    MinorBudgetExceeded(std::string msg, Int required_count)
        : std::runtime_error(std::move(msg)), required(std::move(required_count)) {}
    Int required;
};

/// gcd of the determinants of all k x k submatrices (0 if all vanish).
/// Stops early once the running gcd reaches 1.
Int minor_gcd(const IntMatrix& m, std::size_t k,
              std::uint64_t budget = kDefaultMinorBudget);

/// Number of k x k submatrices of m, i.e. C(rows, k) * C(cols, k).
Int minor_count(const IntMatrix& m, std::size_t k);

/// Prime factorization n = p1^e1 * ..., p ascending. n must be >= 1.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

} // namespace powk0
