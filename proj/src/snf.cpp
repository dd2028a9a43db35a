#include "powk0/snf.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace powk0 {
namespace {

// Index of the nonzero entry of smallest absolute value in m[s:, s:],
// scanning row-major and stopping at the first +-1. Returns false if the
// submatrix is zero.
bool find_pivot(const IntMatrix& m, std::size_t s, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = s; i < m.rows(); ++i) {
        for (std::size_t j = s; j < m.cols(); ++j) {
            const Int& v = m.at(i, j);
            if (v == 0) continue;
            if (!found || mpz_cmpabs(v.get_mpz_t(), best.get_mpz_t()) < 0) {
                found = true;
                best = v;
                pi = i;
                pj = j;
                if (mpz_cmpabs_ui(best.get_mpz_t(), 1) == 0) return true;
            }
        }
    }
    return found;
}

} // namespace

SnfResult smith_normal_form(const IntMatrix& input, bool want_transforms) {
    IntMatrix a = input;
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t t = std::min(m, n);

    IntMatrix u, v;
    if (want_transforms) {
        u = IntMatrix::identity(m);
        v = IntMatrix::identity(n);
    }

    Int q, r;
    std::size_t s = 0;
    for (; s < t; ++s) {
        std::size_t pi = s, pj = s;
        if (!find_pivot(a, s, pi, pj)) break; // remaining submatrix is zero

        a.swap_rows(s, pi);
        a.swap_cols(s, pj);
        if (want_transforms) {
            u.swap_rows(s, pi);
            v.swap_cols(s, pj);
        }

        for (;;) {
            // Clear column s. A nonzero remainder becomes the new, strictly
            // smaller pivot.
            bool restart = false;
            for (std::size_t i = s + 1; i < m && !restart; ++i) {
                const Int& e = a.at(i, s);
                if (e == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), e.get_mpz_t(), a.at(s, s).get_mpz_t());
                mpz_neg(q.get_mpz_t(), q.get_mpz_t());
                a.addmul_row(i, s, q, s);
                if (want_transforms) u.addmul_row(i, s, q);
                if (a.at(i, s) != 0) {
                    a.swap_rows(s, i);
                    if (want_transforms) u.swap_rows(s, i);
                    restart = true;
                }
            }
            if (restart) continue;

            // Clear row s the same way.
            for (std::size_t j = s + 1; j < n && !restart; ++j) {
                const Int& e = a.at(s, j);
                if (e == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), e.get_mpz_t(), a.at(s, s).get_mpz_t());
                mpz_neg(q.get_mpz_t(), q.get_mpz_t());
                a.addmul_col(j, s, q, s);
                if (want_transforms) v.addmul_col(j, s, q);
                if (a.at(s, j) != 0) {
                    a.swap_cols(s, j);
                    if (want_transforms) v.swap_cols(s, j);
                    restart = true;
                }
            }
            if (restart) continue;

            // Pivot now divides its row and column exactly; enforce that it
            // also divides every remaining entry (fold an offending row into
            // row s and keep reducing).
            if (mpz_cmpabs_ui(a.at(s, s).get_mpz_t(), 1) == 0) break;
            bool fixed = true;
            for (std::size_t i = s + 1; i < m && fixed; ++i)
                for (std::size_t j = s + 1; j < n && fixed; ++j) {
                    mpz_tdiv_r(r.get_mpz_t(), a.at(i, j).get_mpz_t(), a.at(s, s).get_mpz_t());
                    if (r != 0) {
                        a.addmul_row(s, i, 1, s);
                        if (want_transforms) u.addmul_row(s, i, 1);
                        fixed = false;
                    }
                }
            if (fixed) break;
        }

        if (a.at(s, s) < 0) {
            a.negate_row(s);
            if (want_transforms) u.negate_row(s);
        }
    }

    SnfResult res;
    res.diag.resize(t);
    for (std::size_t i = 0; i < t; ++i) res.diag[i] = a.at(i, i);
    res.rank = s;
    if (want_transforms) res.transforms = std::make_pair(std::move(u), std::move(v));
    return res;
}

std::string AbelianGroupDecomp::to_string() const {
    if (free_rank == 0 && primary_factors.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (free_rank == 1) {
        sep();
        os << "Z";
    } else if (free_rank > 1) {
        sep();
        os << "Z^" << free_rank;
    }
    // group equal primary factors as (Z/q)^e
    std::size_t i = 0;
    while (i < primary_factors.size()) {
        std::size_t j = i;
        while (j < primary_factors.size() && primary_factors[j] == primary_factors[i]) ++j;
        sep();
        os << "(Z/" << primary_factors[i].get_str() << ")";
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    return os.str();
}

nlohmann::json AbelianGroupDecomp::to_json() const {
    nlohmann::json inv = nlohmann::json::array(), prim = nlohmann::json::array();
    for (const Int& f : invariant_factors) inv.push_back(int_to_json(f));
    for (const Int& f : primary_factors) prim.push_back(int_to_json(f));
    return {{"free_rank", free_rank},
            {"invariant_factors", std::move(inv)},
            {"primary_factors", std::move(prim)},
            {"pretty", to_string()}};
}

AbelianGroupDecomp AbelianGroupDecomp::from_json(const nlohmann::json& j) {
    AbelianGroupDecomp d;
    d.free_rank = j.at("free_rank").get<std::size_t>();
    for (const auto& f : j.at("invariant_factors")) d.invariant_factors.push_back(int_from_json(f));
    for (const auto& f : j.at("primary_factors")) d.primary_factors.push_back(int_from_json(f));
    return d;
}

bool isomorphic(const AbelianGroupDecomp& a, const AbelianGroupDecomp& b) {
    if (a.free_rank != b.free_rank) return false;
    auto pa = a.primary_factors, pb = b.primary_factors;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    return pa == pb;
}

AbelianGroupDecomp decomp_from_invariant_factors(std::size_t free_rank,
                                                 const std::vector<Int>& factors) {
    AbelianGroupDecomp d;
    d.free_rank = free_rank;
    for (const Int& f : factors) {
        if (f <= 1) continue;
        d.invariant_factors.push_back(f);
        for (const auto& [p, e] : factorize(f)) d.primary_factors.push_back(int_pow(p, e));
    }
    std::sort(d.primary_factors.begin(), d.primary_factors.end());
    return d;
}

AbelianGroupDecomp cokernel(const IntMatrix& m) {
    SnfResult snf = smith_normal_form(m, false);
    return decomp_from_invariant_factors(m.rows() - snf.rank, snf.diag);
}

Int determinant(const IntMatrix& input) {
    if (input.rows() != input.cols())
        throw std::invalid_argument("determinant requires a square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;

    IntMatrix a = input;
    Int prev = 1, t1, t2;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t i = k + 1;
            while (i < n && a.at(i, k) == 0) ++i;
            if (i == n) return 0;
            a.swap_rows(k, i);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const bool li = a.at(i, k) != 0;
            for (std::size_t j = k + 1; j < n; ++j) {
                Int& x = a.at(i, j);
                mpz_mul(t1.get_mpz_t(), x.get_mpz_t(), a.at(k, k).get_mpz_t());
                if (li && a.at(k, j) != 0) {
                    mpz_mul(t2.get_mpz_t(), a.at(i, k).get_mpz_t(), a.at(k, j).get_mpz_t());
                    mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                }
                mpz_divexact(x.get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    Int det = a.at(n - 1, n - 1);
    if (sign < 0) mpz_neg(det.get_mpz_t(), det.get_mpz_t());
    return det;
}

Int minor_count(const IntMatrix& m, std::size_t k) {
    Int cr, cc;
    mpz_bin_uiui(cr.get_mpz_t(), m.rows(), k);
    mpz_bin_uiui(cc.get_mpz_t(), m.cols(), k);
    return cr * cc;
}

Int minor_gcd(const IntMatrix& m, std::size_t k, std::uint64_t budget) {
    if (k == 0 || k > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("minor order k out of range");
    const Int count = minor_count(m, k);
    if (count > Int(static_cast<unsigned long>(budget))) {
        std::ostringstream os;
        os << "minor enumeration needs " << count.get_str() << " submatrices, budget is "
           << budget;
        throw MinorBudgetExceeded(os.str(), count);
    }

    auto first_combo = [k] {
        std::vector<std::size_t> c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = i;
        return c;
    };
    auto next_combo = [k](std::vector<std::size_t>& c, std::size_t limit) {
        std::size_t i = k;
        while (i-- > 0) {
            if (c[i] + (k - i) <= limit) {
                ++c[i];
                for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    Int g = 0;
    std::vector<std::size_t> rows = first_combo();
    do {
        std::vector<std::size_t> cols = first_combo();
        do {
            Int d = determinant(m.submatrix(rows, cols));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            if (g == 1) return g;
        } while (next_combo(cols, m.cols() - 1));
    } while (next_combo(rows, m.rows() - 1));
    return g;
}

namespace {

Int pollard_rho(const Int& n) {
    // n odd composite, not a perfect power of a found factor yet.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x9e3779b9u);
    for (;;) {
        Int c = rng.get_z_range(n - 3) + 1;
        Int x = rng.get_z_range(n - 2) + 2, y = x, d = 1;
        auto step = [&](Int& z) {
            z = (z * z + c) % n;
        };
        while (d == 1) {
            step(x);
            step(y);
            step(y);
            Int diff = x - y;
            if (diff == 0) break; // cycle without factor; retry with new c
            mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
            d = int_gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(const Int& n, std::map<Int, unsigned>& acc) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        ++acc[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, acc);
    factor_into(n / d, acc);
}

} // namespace

std::vector<std::pair<Int, unsigned>> factorize(const Int& input) {
    if (input < 1) throw std::invalid_argument("factorize requires n >= 1");
    Int n = input;
    std::map<Int, unsigned> acc;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++acc[Int(p)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    // trial division up to 10^5, then Pollard rho on what remains
    for (long p = 41; p <= 100000 && n > 1; p += 2) {
        if (Int(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++acc[Int(p)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    if (n > 1) factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

} // namespace powk0
