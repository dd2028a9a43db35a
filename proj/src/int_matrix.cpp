#include "powk0/int_matrix.hpp"

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace powk0 {

Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int int_abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

nlohmann::json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

Int int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("matrix entry must be an integer or a decimal string");
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged initializer for IntMatrix");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                               const std::vector<std::size_t>& col_idx) const {
    IntMatrix s(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        if (row_idx[i] >= rows_) throw std::out_of_range("submatrix row index");
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            if (col_idx[j] >= cols_) throw std::out_of_range("submatrix col index");
            s.at(i, j) = at(row_idx[i], col_idx[j]);
        }
    }
    return s;
}

void IntMatrix::set_block(std::size_t i0, std::size_t j0, const IntMatrix& block) {
    if (i0 + block.rows() > rows_ || j0 + block.cols() > cols_)
        throw std::out_of_range("set_block out of range");
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) at(i0 + i, j0 + j) = block.at(i, j);
}

void IntMatrix::fill_block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w,
                           const Int& v) {
    if (i0 + h > rows_ || j0 + w > cols_) throw std::out_of_range("fill_block out of range");
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j) at(i0 + i, j0 + j) = v;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) {
        Int& v = at(i, j);
        mpz_neg(v.get_mpz_t(), v.get_mpz_t());
    }
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) {
        Int& v = at(i, j);
        mpz_neg(v.get_mpz_t(), v.get_mpz_t());
    }
}

void IntMatrix::addmul_row(std::size_t dst, std::size_t src, const Int& c, std::size_t from) {
    if (c == 0) return;
    for (std::size_t j = from; j < cols_; ++j) {
        const Int& s = at(src, j);
        if (s == 0) continue;
        mpz_addmul(at(dst, j).get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    }
}

void IntMatrix::addmul_col(std::size_t dst, std::size_t src, const Int& c, std::size_t from) {
    if (c == 0) return;
    for (std::size_t i = from; i < rows_; ++i) {
        const Int& s = at(i, src);
        if (s == 0) continue;
        mpz_addmul(at(i, dst).get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    }
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

nlohmann::json IntMatrix::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < cols_; ++j) row.push_back(int_to_json(at(i, j)));
        entries.push_back(std::move(row));
    }
    return {{"rows", rows_}, {"cols", cols_}, {"entries", std::move(entries)}};
}

IntMatrix IntMatrix::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON requires rows, cols, entries");
    const auto r = j.at("rows").get<std::size_t>();
    const auto c = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != r)
        throw std::invalid_argument("matrix JSON: entries has wrong row count");
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const auto& row = entries.at(i);
        if (!row.is_array() || row.size() != c)
            throw std::invalid_argument("matrix JSON: row has wrong length");
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) = int_from_json(row.at(k));
    }
    return m;
}

std::string IntMatrix::to_text() const {
    std::ostringstream os;
    os << rows_ << ' ' << cols_ << '\n';
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << at(i, j).get_str();
        }
        os << '\n';
    }
    return os.str();
}

IntMatrix IntMatrix::from_text(const std::string& text) {
    std::istringstream is(text);
    std::size_t r = 0, c = 0;
    if (!(is >> r >> c)) throw std::invalid_argument("matrix text: missing \"rows cols\" header");
    IntMatrix m(r, c);
    std::string tok;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if (!(is >> tok)) throw std::invalid_argument("matrix text: not enough entries");
            try {
                m.at(i, j) = Int(tok);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("matrix text: bad integer \"" + tok + "\"");
            }
        }
    return m;
}

std::string IntMatrix::pretty() const {
    std::size_t width = 1;
    for (const Int& v : data_) width = std::max(width, v.get_str().size());
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << std::setw(static_cast<int>(width)) << at(i, j).get_str();
        }
        os << "]\n";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.pretty(); }

IntMatrix circulant(const std::vector<Int>& v) {
    if (v.empty()) throw std::invalid_argument("circulant of an empty vector");
    const std::size_t n = v.size();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[(j + n - i) % n];
    return m;
}

} // namespace powk0
