#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace powk0 {

/// Arbitrary-precision integer. All exact linear algebra runs over these.
using Int = mpz_class;

Int int_gcd(const Int& a, const Int& b);
Int int_lcm(const Int& a, const Int& b);
Int int_abs(const Int& a);
Int int_pow(const Int& base, unsigned long exp);

/// Serialize as a JSON number when the value fits in 64 bits, otherwise as a
/// decimal string. from_json accepts both forms.
nlohmann::json int_to_json(const Int& v);
Int int_from_json(const nlohmann::json& j);

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Int& operator()(std::size_t i, std::size_t j) { return at(i, j); }
    const Int& operator()(std::size_t i, std::size_t j) const { return at(i, j); }

    IntMatrix transpose() const;

    /// Rows/cols selected by index lists, in the given order.
    IntMatrix submatrix(const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) const;

    /// Copy `block` into this matrix with upper-left corner at (i0, j0).
    void set_block(std::size_t i0, std::size_t j0, const IntMatrix& block);
    /// Fill the rectangle [i0, i0+h) x [j0, j0+w) with a constant.
    void fill_block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w, const Int& v);

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);
    /// row[dst] += c * row[src], starting at column `from`.
    void addmul_row(std::size_t dst, std::size_t src, const Int& c, std::size_t from = 0);
    void addmul_col(std::size_t dst, std::size_t src, const Int& c, std::size_t from = 0);

    bool operator==(const IntMatrix& o) const;
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    nlohmann::json to_json() const;
    static IntMatrix from_json(const nlohmann::json& j);

    /// Plain text: first line "rows cols", then one whitespace-separated row
    /// per line. Entries are decimal, unbounded magnitude.
    std::string to_text() const;
    static IntMatrix from_text(const std::string& text);

    std::string pretty() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// n x n matrix whose row i is `v` cyclically shifted right by i positions.
IntMatrix circulant(const std::vector<Int>& v);

} // namespace powk0
