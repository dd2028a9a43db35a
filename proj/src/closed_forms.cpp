#include "powk0/closed_forms.hpp"

#include <sstream>
#include <stdexcept>

namespace powk0 {
namespace {

bool is_odd_prime(unsigned long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (unsigned long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

Int ulong_pow(unsigned long base, unsigned exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

Int two_pow(const Int& e) {
    if (e < 0 || !e.fits_ulong_p()) throw std::invalid_argument("bad power of two exponent");
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e.get_ui());
    return r;
}

IntMatrix insert_row(const IntMatrix& m, std::size_t pos, const Int& value) {
    // pos is 1-based, 1 <= pos <= rows+1
    IntMatrix r(m.rows() + 1, m.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = (i + 1 == pos) ? value : m.at(i + 1 > pos ? i - 1 : i, j);
    return r;
}

IntMatrix insert_col(const IntMatrix& m, std::size_t pos, const Int& value) {
    IntMatrix r(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            r.at(i, j) = (j + 1 == pos) ? value : m.at(i, j + 1 > pos ? j - 1 : j);
    return r;
}

IntMatrix base_circulant(std::size_t k, long head, long tail) {
    std::vector<Int> v(k, Int(tail));
    v[0] = head;
    return circulant(v);
}

} // namespace

IntMatrix structured_block(BlockKind kind, std::size_t size, std::size_t x, std::size_t y) {
    if (size < 1) throw std::invalid_argument("block size must be >= 1");
    auto check_pos = [size](std::size_t p, const char* name) {
        if (p < 1 || p > size)
            throw std::invalid_argument(std::string("block position ") + name + " out of range");
    };
    switch (kind) {
    case BlockKind::S:
        return base_circulant(size, 0, 1);
    case BlockKind::B:
        return base_circulant(size, 1, -1);
    case BlockKind::A: {
        check_pos(x, "x");
        check_pos(y, "y");
        IntMatrix b = size > 1 ? base_circulant(size - 1, 1, -1) : IntMatrix(0, 0);
        return insert_col(insert_row(b, x, Int(-1)), y, Int(-1));
    }
    case BlockKind::C: {
        check_pos(x, "x");
        IntMatrix b = size > 1 ? base_circulant(size - 1, 1, -1) : IntMatrix(0, 0);
        return insert_row(b, x, Int(-1));
    }
    case BlockKind::D:
        check_pos(x, "x");
        return insert_col(base_circulant(size, 1, -1), x, Int(-1));
    }
    throw std::invalid_argument("unknown block kind");
}

IntMatrix structured_block_entrywise(BlockKind kind, std::size_t size, std::size_t x,
                                     std::size_t y) {
    if (kind == BlockKind::A) {
        IntMatrix m(size, size);
        for (std::size_t u = 1; u <= size; ++u)
            for (std::size_t v = 1; v <= size; ++v) {
                bool one = (u == v && (u > std::max(x, y) || u < std::min(x, y))) ||
                           (x < u && u == v + 1 && u <= y) ||
                           (y <= u && u + 1 == v && u < x);
                m.at(u - 1, v - 1) = one ? 1 : -1;
            }
        return m;
    }
    if (kind == BlockKind::C) {
        IntMatrix m(size, size - 1);
        for (std::size_t u = 1; u <= size; ++u)
            for (std::size_t v = 1; v + 1 <= size; ++v) {
                bool one = (u == v && v < x) || (u == v + 1 && u > x);
                m.at(u - 1, v - 1) = one ? 1 : -1;
            }
        return m;
    }
    return structured_block(kind, size, x, y);
}

Int prime_power_phi(unsigned long p, unsigned i) {
    if (i < 1) throw std::invalid_argument("phi of p^i needs i >= 1");
    return ulong_pow(p, i) - ulong_pow(p, i - 1);
}

IntMatrix cyclic_prime_power_matrix(unsigned long p, unsigned n) {
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<std::size_t> widths(n);
    std::size_t total = 0;
    for (unsigned i = 1; i <= n; ++i) {
        widths[i - 1] = prime_power_phi(p, i).get_ui();
        total += widths[i - 1];
    }
    IntMatrix m(total, total);
    std::size_t off = 0;
    for (unsigned i = 0; i < n; ++i) {
        m.set_block(off, off, structured_block(BlockKind::B, widths[i]));
        std::size_t right = off + widths[i];
        if (right < total) m.fill_block(off, right, widths[i], total - right, Int(-1));
        off = right;
    }
    return m;
}

std::size_t MinorShape::total_rows() const {
    std::size_t r = 0;
    for (const auto& b : blocks) r += b.size;
    return r;
}

std::size_t MinorShape::total_cols() const {
    long c = static_cast<long>(total_rows()) + col_surplus(blocks.size());
    return c < 0 ? 0 : static_cast<std::size_t>(c);
}

long MinorShape::col_surplus(std::size_t i) const {
    long q = 0;
    for (std::size_t l = 0; l < i && l < blocks.size(); ++l) {
        if (blocks[l].code == 2) --q;
        if (blocks[l].code == 3) ++q;
    }
    return q;
}

void MinorShape::validate(bool require_square) const {
    if (blocks.empty()) throw std::invalid_argument("minor shape needs at least one block");
    long cols = 0;
    for (const auto& b : blocks) {
        if (b.size < 1) throw std::invalid_argument("minor block size must be >= 1");
        if (b.code < 0 || b.code > 3)
            throw std::invalid_argument("minor block code must be in 0..3");
        cols += static_cast<long>(b.size) + (b.code == 2 ? -1 : b.code == 3 ? 1 : 0);
        if (cols < 0) throw std::invalid_argument("minor shape has negative column count");
    }
    if (require_square && cols != static_cast<long>(total_rows()))
        throw std::invalid_argument(
            "minor shape is not square (code-2 and code-3 blocks unbalanced)");
    if (ambient) {
        const auto [p, n] = *ambient;
        const std::size_t s = blocks.size();
        if (s > n) throw std::invalid_argument("more blocks than the ambient matrix has");
        for (std::size_t i = 1; i <= s; ++i) {
            const Int bound = prime_power_phi(p, static_cast<unsigned>(n - s + i));
            const auto& b = blocks[i - 1];
            if (Int(static_cast<unsigned long>(b.size)) > bound)
                throw std::invalid_argument("minor block " + std::to_string(i) +
                                            " exceeds the ambient block size");
            if (Int(static_cast<unsigned long>(b.size)) == bound && b.code != 1)
                throw std::invalid_argument("minor block " + std::to_string(i) +
                                            " fills its ambient block, so its code must be 1");
        }
    }
}

std::string MinorShape::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) os << ",";
        os << blocks[i].size << "^" << blocks[i].code;
    }
    os << "]";
    return os.str();
}

IntMatrix assemble_minor(const MinorShape& shape) {
    shape.validate(false);
    const std::size_t rows = shape.total_rows(), cols = shape.total_cols();
    IntMatrix m(rows, cols);
    std::size_t i0 = 0, j0 = 0;
    for (const auto& b : shape.blocks) {
        static constexpr BlockKind kinds[4] = {BlockKind::A, BlockKind::B, BlockKind::C,
                                               BlockKind::D};
        IntMatrix blk = structured_block(kinds[b.code], b.size, 1, 1);
        m.set_block(i0, j0, blk);
        const std::size_t right = j0 + blk.cols();
        if (right < cols) m.fill_block(i0, right, b.size, cols - right, Int(-1));
        i0 += blk.rows();
        j0 = right;
    }
    return m;
}

bool structurally_singular(const MinorShape& shape) {
    shape.validate(true);
    const std::size_t s = shape.blocks.size();
    for (std::size_t i = 1; i <= s; ++i) {
        const int j_i = shape.blocks[i - 1].code;
        const std::size_t k_i = shape.blocks[i - 1].size;
        if (shape.col_surplus(i - 1) == 0 && j_i == 1 && k_i == 2) return true;
        if (shape.col_surplus(i - 1) == 0 && j_i == 3) return true;
        if (shape.col_surplus(i) > 0) return true;
        if (i < s) {
            const int j_next = shape.blocks[i].code;
            if (j_i == 2 && (j_next == 0 || j_next == 2)) return true;
            if (j_next == 3 && (j_i == 0 || j_i == 3)) return true;
        }
    }
    return false;
}

Int assembly_det_closed_form(const MinorShape& shape) {
    shape.validate(true);
    std::size_t s = shape.blocks.size(), j = 0, k = shape.total_rows();
    Int prod = 1;
    for (const auto& b : shape.blocks) {
        if (b.code == 1) {
            ++j;
            prod *= 2 - static_cast<long>(b.size);
        } else if (b.code != 0) {
            throw std::invalid_argument("closed-form determinant needs all codes in {0,1}");
        }
    }
    Int det = two_pow(Int(static_cast<unsigned long>(k - s))) * prod;
    return ((s - j) % 2 == 0) ? det : -det;
}

Int minor_gcd_closed_form(unsigned long p, unsigned n, std::size_t k) {
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const Int size = ulong_pow(p, n) - 1;
    const Int kk(static_cast<unsigned long>(k));
    if (k < 1 || kk > size) throw std::invalid_argument("minor order k out of range");
    if (kk <= n) return 1;
    if (kk <= size - n) return two_pow(kk - n);
    if (kk <= size - 1) return two_pow(2 * kk - size);
    // k = p^n - 1: |prod (2 - phi(p^i)) * 2^(phi(p^i) - 1)|
    Int prod = 1;
    for (unsigned i = 1; i <= n; ++i) {
        const Int phi = prime_power_phi(p, i);
        prod *= (2 - phi) * two_pow(phi - 1);
    }
    return int_abs(prod);
}

Int eta(unsigned long p, unsigned n) {
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    Int num = 1;
    for (unsigned i = 1; i <= n; ++i) {
        const Int phi = prime_power_phi(p, i);
        num *= (2 - phi) * two_pow(phi - 1);
    }
    const Int den = two_pow(ulong_pow(p, n) - 3);
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw std::logic_error("eta is not integral; closed-form bookkeeping is broken");
    return num / den;
}

std::vector<Int> snf_diagonal_closed_form(unsigned long p, unsigned n) {
    const Int size = ulong_pow(p, n) - 1;
    if (!size.fits_ulong_p()) throw std::invalid_argument("matrix size too large");
    std::vector<Int> diag;
    diag.reserve(size.get_ui());
    const Int twos = size - 2 * static_cast<long>(n);
    for (unsigned i = 0; i < n; ++i) diag.emplace_back(1);
    for (Int i = 0; i < twos; ++i) diag.emplace_back(2);
    for (unsigned i = 0; i + 1 < n; ++i) diag.emplace_back(4);
    diag.push_back(int_abs(eta(p, n)));
    return diag;
}

nlohmann::json ClosedFormK0::to_json() const {
    return {{"family", family}, {"unverified", unverified}, {"decomposition", decomp.to_json()}};
}

ClosedFormK0 ClosedFormK0::from_json(const nlohmann::json& j) {
    ClosedFormK0 c;
    c.family = j.at("family").get<std::string>();
    c.unverified = j.at("unverified").get<bool>();
    c.decomp = AbelianGroupDecomp::from_json(j.at("decomposition"));
    return c;
}

ClosedFormK0 k0_odd_prime_power(unsigned long p, unsigned n) {
    const std::vector<Int> diag = snf_diagonal_closed_form(p, n);
    std::size_t zeros = 0;
    for (const Int& d : diag)
        if (d == 0) ++zeros;
    ClosedFormK0 c;
    c.decomp = decomp_from_invariant_factors(zeros, diag);
    c.family = "odd-prime-power(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
    return c;
}

ClosedFormK0 k0_two_power(unsigned n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n > 40) throw std::invalid_argument("two-power rank too large");
    std::vector<Int> factors;
    const unsigned long twos = (1ul << (n + 1)) - 2ul * n - 1ul;
    for (unsigned long i = 0; i < twos; ++i) factors.emplace_back(2);
    for (unsigned i = 0; i + 1 < n; ++i) factors.emplace_back(4);
    ClosedFormK0 c;
    c.decomp = decomp_from_invariant_factors(1, factors);
    c.family = "two-power(n=" + std::to_string(n) + ")";
    c.unverified = true;
    return c;
}

ClosedFormK0 k0_prime(unsigned long p) {
    if (!is_odd_prime(p) || p < 5)
        throw std::invalid_argument("prime family needs a prime p >= 5");
    std::vector<Int> factors(p - 3, Int(2));
    factors.emplace_back(2 * static_cast<long>(p) - 6);
    ClosedFormK0 c;
    c.decomp = decomp_from_invariant_factors(0, factors);
    c.family = "prime(p=" + std::to_string(p) + ")";
    return c;
}

ClosedFormK0 k0_elem_abelian_odd(unsigned long p, unsigned r) {
    if (!is_odd_prime(p) || p < 5)
        throw std::invalid_argument("elementary abelian family needs a prime p >= 5");
    if (r < 1) throw std::invalid_argument("rank must be >= 1");
    const Int copies = (ulong_pow(p, r) - 1) / (static_cast<long>(p) - 1);
    if (!copies.fits_ulong_p()) throw std::invalid_argument("group too large");
    const unsigned long m = copies.get_ui();
    std::vector<Int> factors(m * (p - 3), Int(2));
    for (unsigned long i = 0; i < m; ++i) factors.emplace_back(2 * static_cast<long>(p) - 6);
    ClosedFormK0 c;
    c.decomp = decomp_from_invariant_factors(0, factors);
    c.family = "elem-abelian(p=" + std::to_string(p) + ",r=" + std::to_string(r) + ")";
    return c;
}

ClosedFormK0 k0_exponent_three(unsigned long order) {
    if (order % 2 == 0) throw std::invalid_argument("a group of exponent 3 has odd order");
    ClosedFormK0 c;
    c.decomp.free_rank = (order - 1) / 2;
    c.family = "exponent-3(order=" + std::to_string(order) + ")";
    return c;
}

ClosedFormK0 k0_elem_abelian_two(unsigned r) {
    if (r < 1) throw std::invalid_argument("rank must be >= 1");
    if (r > 40) throw std::invalid_argument("rank too large");
    ClosedFormK0 c;
    c.decomp.free_rank = (1ul << r) - 1;
    c.family = "elem-abelian-2(r=" + std::to_string(r) + ")";
    return c;
}

} // namespace powk0
