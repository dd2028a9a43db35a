#include "powk0/group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace powk0 {
namespace {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

unsigned long checked_pow(unsigned long p, unsigned long r) {
    unsigned long v = 1;
    for (unsigned long i = 0; i < r; ++i) {
        if (v > (1ul << 40) / p) throw std::invalid_argument("group order too large");
        v *= p;
    }
    return v;
}

void validate_cayley(const std::vector<std::vector<std::size_t>>& t, bool trusted,
                     std::size_t& identity_out) {
    const std::size_t n = t.size();
    if (n == 0) throw std::invalid_argument("cayley table: empty");
    for (const auto& row : t)
        if (row.size() != n) throw std::invalid_argument("cayley table: not square");
    for (const auto& row : t)
        for (std::size_t v : row)
            if (v >= n) throw std::invalid_argument("cayley table: entry out of range");

    // Latin square
    std::vector<bool> seen(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t j = 0; j < n; ++j) {
            if (seen[t[i][j]])
                throw std::invalid_argument("cayley table: row " + std::to_string(i) +
                                            " repeats an element (not a Latin square)");
            seen[t[i][j]] = true;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t i = 0; i < n; ++i) {
            if (seen[t[i][j]])
                throw std::invalid_argument("cayley table: column " + std::to_string(j) +
                                            " repeats an element (not a Latin square)");
            seen[t[i][j]] = true;
        }
    }

    // two-sided identity
    std::size_t e = n;
    for (std::size_t c = 0; c < n && e == n; ++c) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) ok = t[c][j] == j && t[j][c] == j;
        if (ok) e = c;
    }
    if (e == n) throw std::invalid_argument("cayley table: no two-sided identity");
    identity_out = e;

    // inverses
    for (std::size_t a = 0; a < n; ++a) {
        bool has = false;
        for (std::size_t b = 0; b < n && !has; ++b) has = t[a][b] == e && t[b][a] == e;
        if (!has)
            throw std::invalid_argument("cayley table: element " + std::to_string(a) +
                                        " has no inverse");
    }

    if (n > 256 && !trusted)
        throw std::invalid_argument(
            "cayley table: order " + std::to_string(n) +
            " exceeds 256; associativity check is O(n^3), pass the trust flag to skip it");
    if (n <= 256) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (t[t[a][b]][c] != t[a][t[b][c]])
                        throw std::invalid_argument(
                            "cayley table: associativity fails at (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
    }
}

} // namespace

GroupSpec GroupSpec::cyclic(unsigned long m) {
    GroupSpec s;
    s.kind = GroupKind::Cyclic;
    s.m = m;
    return s;
}

GroupSpec GroupSpec::elem_abelian(unsigned long p, unsigned long r) {
    GroupSpec s;
    s.kind = GroupKind::ElemAbelian;
    s.p = p;
    s.r = r;
    return s;
}

GroupSpec GroupSpec::dihedral(unsigned long n) {
    GroupSpec s;
    s.kind = GroupKind::Dihedral;
    s.n = n;
    return s;
}

GroupSpec GroupSpec::cayley(std::vector<std::vector<std::size_t>> table) {
    GroupSpec s;
    s.kind = GroupKind::Cayley;
    s.table = std::move(table);
    return s;
}

GroupSpec GroupSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("group spec \"" + text +
                                    "\": expected kind:params (cyclic:M, elem-abelian:P,R, "
                                    "dihedral:N, cayley:PATH)");
    const std::string kind = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    auto parse_ulong = [&](const std::string& s) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos != s.size() || s.empty())
            throw std::invalid_argument("group spec: bad integer \"" + s + "\"");
        return v;
    };
    if (kind == "cyclic") return cyclic(parse_ulong(args));
    if (kind == "dihedral") return dihedral(parse_ulong(args));
    if (kind == "elem-abelian") {
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("group spec: elem-abelian needs P,R");
        return elem_abelian(parse_ulong(args.substr(0, comma)),
                            parse_ulong(args.substr(comma + 1)));
    }
    if (kind == "cayley") {
        std::ifstream in(args);
        if (!in) throw std::invalid_argument("cannot open cayley table file \"" + args + "\"");
        nlohmann::json j;
        in >> j;
        return cayley(cayley_table_from_json(j));
    }
    throw std::invalid_argument("group spec: unknown kind \"" + kind + "\"");
}

std::string GroupSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
    case GroupKind::Cyclic: os << "cyclic(" << m << ")"; break;
    case GroupKind::ElemAbelian: os << "elem-abelian(" << p << "," << r << ")"; break;
    case GroupKind::Dihedral: os << "dihedral(" << n << ")"; break;
    case GroupKind::Cayley: os << "cayley(order " << table.size() << ")"; break;
    }
    return os.str();
}

std::size_t Group::multiply(std::size_t a, std::size_t b) const {
    switch (spec_.kind) {
    case GroupKind::Cyclic:
        return (a + b) % order_;
    case GroupKind::ElemAbelian: {
        const unsigned long p = spec_.p;
        std::size_t result = 0, place = 1;
        for (unsigned long i = 0; i < spec_.r; ++i) {
            result += ((a + b) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        return result;
    }
    case GroupKind::Dihedral: {
        const unsigned long n = spec_.n;
        const bool fa = a >= n, fb = b >= n;
        const std::size_t ka = fa ? a - n : a, kb = fb ? b - n : b;
        // r^ka s^fa * r^kb s^fb = r^(ka + kb or ka - kb) s^(fa xor fb)
        const std::size_t k = fa ? (ka + n - kb % n) % n : (ka + kb) % n;
        return (fa != fb) ? n + k : k;
    }
    case GroupKind::Cayley:
        return spec_.table[a][b];
    }
    return 0;
}

std::string Group::element_label(std::size_t x) const {
    switch (spec_.kind) {
    case GroupKind::Cyclic:
        if (x == 0) return "e";
        if (x == 1) return "x";
        return "x^" + std::to_string(x);
    case GroupKind::ElemAbelian: {
        std::string s = "(";
        std::size_t v = x;
        for (unsigned long i = 0; i < spec_.r; ++i) {
            if (i) s += ",";
            s += std::to_string(v % spec_.p);
            v /= spec_.p;
        }
        return s + ")";
    }
    case GroupKind::Dihedral: {
        const unsigned long n = spec_.n;
        const bool f = x >= n;
        const std::size_t k = f ? x - n : x;
        std::string rot = k == 0 ? "" : (k == 1 ? "r" : "r^" + std::to_string(k));
        if (!f) return rot.empty() ? "e" : rot;
        return rot + "s";
    }
    case GroupKind::Cayley:
        return "g" + std::to_string(x);
    }
    return "?";
}

Group make_group(const GroupSpec& spec) {
    Group g;
    g.spec_ = spec;
    switch (spec.kind) {
    case GroupKind::Cyclic:
        if (spec.m < 1) throw std::invalid_argument("cyclic group needs order >= 1");
        g.order_ = spec.m;
        break;
    case GroupKind::ElemAbelian:
        if (!is_prime(spec.p))
            throw std::invalid_argument("elem-abelian: " + std::to_string(spec.p) +
                                        " is not prime");
        if (spec.r < 1) throw std::invalid_argument("elem-abelian needs rank >= 1");
        g.order_ = checked_pow(spec.p, spec.r);
        break;
    case GroupKind::Dihedral:
        if (spec.n < 2) throw std::invalid_argument("dihedral needs n >= 2");
        g.order_ = 2 * spec.n;
        break;
    case GroupKind::Cayley: {
        std::size_t e = 0;
        validate_cayley(spec.table, spec.trust_cayley, e);
        g.order_ = spec.table.size();
        g.identity_ = e;
        break;
    }
    }
    return g;
}

std::size_t element_order(const Group& g, std::size_t x) {
    if (x >= g.order()) throw std::out_of_range("element index out of range");
    std::size_t t = 1, y = x;
    while (y != g.identity()) {
        y = g.multiply(y, x);
        ++t;
    }
    return t;
}

std::vector<std::size_t> cyclic_subgroup(const Group& g, std::size_t x) {
    if (x >= g.order()) throw std::out_of_range("element index out of range");
    std::vector<std::size_t> elems{g.identity()};
    std::size_t y = x;
    while (y != g.identity()) {
        elems.push_back(y);
        y = g.multiply(y, x);
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

unsigned long exponent(const Group& g) {
    unsigned long e = 1;
    for (std::size_t x = 0; x < g.order(); ++x)
        e = std::lcm(e, static_cast<unsigned long>(element_order(g, x)));
    return e;
}

nlohmann::json cayley_to_json(const Group& g) {
    nlohmann::json table = nlohmann::json::array();
    for (std::size_t i = 0; i < g.order(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < g.order(); ++j) row.push_back(g.multiply(i, j));
        table.push_back(std::move(row));
    }
    return {{"order", g.order()}, {"table", std::move(table)}};
}

std::vector<std::vector<std::size_t>> cayley_table_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("table"))
        throw std::invalid_argument("cayley JSON requires order and table");
    const auto n = j.at("order").get<std::size_t>();
    const auto& tj = j.at("table");
    if (!tj.is_array() || tj.size() != n)
        throw std::invalid_argument("cayley JSON: table has wrong row count");
    std::vector<std::vector<std::size_t>> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!tj.at(i).is_array() || tj.at(i).size() != n)
            throw std::invalid_argument("cayley JSON: row has wrong length");
        for (const auto& v : tj.at(i)) t[i].push_back(v.get<std::size_t>());
    }
    return t;
}

std::vector<std::vector<std::size_t>> multiplication_table(const Group& g) {
    std::vector<std::vector<std::size_t>> t(g.order(), std::vector<std::size_t>(g.order()));
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j) t[i][j] = g.multiply(i, j);
    return t;
}

} // namespace powk0
