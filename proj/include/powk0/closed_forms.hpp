#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powk0/int_matrix.hpp"
#include "powk0/snf.hpp"

namespace powk0 {

/// Structured square/rectangular blocks built from two circulant families:
///   S_k = circulant of (0, 1, ..., 1)        (k x k)
///   B_k = circulant of (1, -1, ..., -1)      (k x k, B_1 = [1])
///   A_k(x,y): insert an all-(-1) row at position x and then an all-(-1)
///             column at position y into B_{k-1}   (k x k)
///   C_k(x):   insert an all-(-1) row at position x into B_{k-1} (k x (k-1))
///   D_k(x):   insert an all-(-1) column at position x into B_k  (k x (k+1))
enum class BlockKind { S, B, A, C, D };

/// Constructive (insertion) definition; `size` is the row count, positions
/// are 1-based. x is required for A/C/D, y for A.
IntMatrix structured_block(BlockKind kind, std::size_t size, std::size_t x = 1,
                           std::size_t y = 1);

/// Independent entrywise definition of A_k(x,y) and C_k(x) (piecewise case
/// formulas rather than row/column insertion). Used to cross-check the
/// constructive route; falls back to it for S/B/D.
IntMatrix structured_block_entrywise(BlockKind kind, std::size_t size, std::size_t x = 1,
                                     std::size_t y = 1);

/// Euler phi of p^i for prime p: p^i - p^(i-1).
Int prime_power_phi(unsigned long p, unsigned i);

/// The matrix whose cokernel is K0 for the punctured power digraph of the
/// cyclic group of order p^n (p odd), in the canonical vertex order: block
/// upper-triangular with diagonal blocks B_{phi(p^i)}, -1 above, 0 below.
IntMatrix cyclic_prime_power_matrix(unsigned long p, unsigned n);

/// Shape of a candidate non-singular minor: a block upper-triangular
/// assembly with diagonal blocks coded 0 = A_k(1,1), 1 = B_k, 2 = C_k(1),
/// 3 = D_k(1), -1 blocks above the diagonal and 0 below.
struct MinorBlock {
    std::size_t size = 1;
    int code = 1; // 0..3
};

struct MinorShape {
    std::vector<MinorBlock> blocks;
    /// When set to (p, n), block sizes must fit the blocks of the ambient
    /// p^n matrix: size_i <= phi(p^(n-s+i)), with code 1 forced at equality.
    std::optional<std::pair<unsigned long, unsigned>> ambient;

    std::size_t total_rows() const;
    std::size_t total_cols() const;
    bool is_square() const { return total_rows() == total_cols(); }
    /// Column surplus of the first i blocks: #codes 3 minus #codes 2.
    long col_surplus(std::size_t i) const;

    /// Checks sizes >= 1, codes in 0..3, the ambient bounds when present,
    /// and squareness when required. Throws on violation.
    void validate(bool require_square) const;

    std::string to_string() const;
};

IntMatrix assemble_minor(const MinorShape& shape);

/// Sufficient structural conditions for a square assembly to be singular
/// (each names a vanishing row or column combination).
bool structurally_singular(const MinorShape& shape);

/// Determinant of an assembly whose codes are all 0 or 1:
/// (-1)^(s-j) * 2^(k-s) * prod over code-1 blocks of (2 - size), where s is
/// the block count, j the number of code-1 blocks and k the matrix size.
Int assembly_det_closed_form(const MinorShape& shape);

/// gcd of the k x k minors of cyclic_prime_power_matrix(p, n), in closed
/// form: 1 for k <= n; 2^(k-n) up to k = p^n-n-1; 2^(2k-p^n+1) up to
/// k = p^n-2; |prod (2-phi(p^i)) 2^(phi(p^i)-1)| at k = p^n-1.
Int minor_gcd_closed_form(unsigned long p, unsigned n, std::size_t k);

/// The signed integer whose absolute value is the last diagonal entry of
/// the Smith form of cyclic_prime_power_matrix(p, n):
/// prod (2-phi(p^i)) 2^(phi(p^i)-1) / 2^(p^n-3). Always integral; 0 iff p=3.
Int eta(unsigned long p, unsigned n);

/// Smith diagonal of cyclic_prime_power_matrix(p, n) in closed form:
/// n ones, p^n-2n-1 twos, n-1 fours, |eta|.
std::vector<Int> snf_diagonal_closed_form(unsigned long p, unsigned n);

/// A closed-form K0 value together with the family that produced it.
/// `unverified` marks the power-of-two formula, which the verification
/// pipeline treats as a prediction to be checked against the SNF oracle.
struct ClosedFormK0 {
    AbelianGroupDecomp decomp;
    std::string family;
    bool unverified = false;

    bool operator==(const ClosedFormK0&) const = default;
    nlohmann::json to_json() const;
    static ClosedFormK0 from_json(const nlohmann::json& j);
};

/// Punctured power digraph of the cyclic group of order p^n, p odd prime.
ClosedFormK0 k0_odd_prime_power(unsigned long p, unsigned n);
/// Cyclic group of order 2^n. Returned verbatim and flagged unverified.
ClosedFormK0 k0_two_power(unsigned n);
/// Cyclic group of prime order p >= 5: (p-3) copies of Z/2 plus Z/(2p-6).
ClosedFormK0 k0_prime(unsigned long p);
/// Elementary abelian p^r, p >= 5: m = (p^r-1)/(p-1) disjoint copies of the
/// prime case.
ClosedFormK0 k0_elem_abelian_odd(unsigned long p, unsigned r);
/// Any group of odd order m and exponent 3: free of rank (m-1)/2.
ClosedFormK0 k0_exponent_three(unsigned long order);
/// Elementary abelian 2-group of rank r: free of rank 2^r - 1 (isolated
/// vertices only).
ClosedFormK0 k0_elem_abelian_two(unsigned r);

} // namespace powk0
