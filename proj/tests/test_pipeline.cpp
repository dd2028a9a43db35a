#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "powk0/pipeline.hpp"

using namespace powk0;

namespace {

Digraph permuted(const Digraph& d, const std::vector<std::size_t>& perm) {
    Digraph out;
    out.labels.resize(d.size());
    out.adjacency.assign(d.size(), std::vector<int>(d.size(), 0));
    for (std::size_t u = 0; u < d.size(); ++u) {
        out.labels[perm[u]] = d.labels[u];
        for (std::size_t v = 0; v < d.size(); ++v)
            out.adjacency[perm[u]][perm[v]] = d.adjacency[u][v];
    }
    return out;
}

AbelianGroupDecomp merged_copies(const AbelianGroupDecomp& one, std::size_t copies) {
    AbelianGroupDecomp out;
    out.free_rank = one.free_rank * copies;
    for (std::size_t c = 0; c < copies; ++c)
        for (const Int& f : one.primary_factors) out.primary_factors.push_back(f);
    std::sort(out.primary_factors.begin(), out.primary_factors.end());
    return out;
}

} // namespace

TEST_CASE("compute_k0 on the fixed examples") {
    SUBCASE("order 5, both routes agree") {
        const K0Report r = compute_k0(GroupSpec::cyclic(5), true, K0Method::Both);
        CHECK(r.verdict == "agree");
        CHECK(r.snf_decomp->primary_factors == std::vector<Int>{2, 2, 4});
        CHECK(r.snf_decomp->free_rank == 0);
        CHECK(r.vertices == 4);
        CHECK(r.sinks == 0);
    }
    SUBCASE("order 27 via snf") {
        const K0Report r = compute_k0(GroupSpec::cyclic(27), true, K0Method::Snf);
        CHECK(r.snf_decomp->free_rank == 1);
        std::vector<Int> expected(20, Int(2));
        expected.insert(expected.end(), 2, Int(4));
        CHECK(r.snf_decomp->primary_factors == expected);
    }
    SUBCASE("order 4 via snf") {
        const K0Report r = compute_k0(GroupSpec::cyclic(4), true, K0Method::Snf);
        CHECK(r.snf_decomp->free_rank == 1);
        CHECK(r.snf_decomp->primary_factors == std::vector<Int>{2});
    }
    SUBCASE("full graph of the 3-cycle group has the same K0 as punctured order 4") {
        const K0Report r = compute_k0(GroupSpec::cyclic(3), false, K0Method::Snf);
        CHECK(r.snf_decomp->free_rank == 1);
        CHECK(r.snf_decomp->primary_factors == std::vector<Int>{2});
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(compute_k0(GroupSpec::dihedral(3), true, K0Method::Closed),
                        std::invalid_argument);
        CHECK_THROWS_AS(compute_k0(GroupSpec::cyclic(6), true, K0Method::Both),
                        std::invalid_argument);
        CHECK_THROWS_AS(compute_k0(GroupSpec::cyclic(1), true, K0Method::Snf),
                        std::invalid_argument);
        CHECK_THROWS_AS(compute_k0(GroupSpec::cyclic(5), false, K0Method::Closed),
                        std::invalid_argument);
    }
}

TEST_CASE("closed form family selection") {
    auto family_of = [](const GroupSpec& spec) {
        const auto cf = closed_form_for(make_group(spec), true);
        return cf ? cf->family : std::string("none");
    };
    CHECK(family_of(GroupSpec::cyclic(2)) == "elem-abelian-2(r=1)");
    CHECK(family_of(GroupSpec::cyclic(3)) == "exponent-3(order=3)");
    CHECK(family_of(GroupSpec::cyclic(9)) == "odd-prime-power(p=3,n=2)");
    CHECK(family_of(GroupSpec::cyclic(16)) == "two-power(n=4)");
    CHECK(family_of(GroupSpec::cyclic(6)) == "none");
    CHECK(family_of(GroupSpec::dihedral(2)) == "elem-abelian-2(r=2)");
    CHECK(family_of(GroupSpec::dihedral(3)) == "none");
    CHECK(family_of(GroupSpec::elem_abelian(5, 2)) == "elem-abelian(p=5,r=2)");
    CHECK(family_of(heisenberg3_spec()) == "exponent-3(order=27)");
    CHECK_FALSE(closed_form_for(make_group(GroupSpec::cyclic(5)), false).has_value());
}

TEST_CASE("k0 is invariant under vertex relabeling") {
    const Group g = make_group(GroupSpec::cyclic(9));
    const Digraph d = power_digraph(g, true);
    const AbelianGroupDecomp base = k0_of_digraph(d);
    std::mt19937_64 rng(31337);
    std::vector<std::size_t> perm(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) perm[i] = i;
    for (int t = 0; t < 10; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        const AbelianGroupDecomp shuffled = k0_of_digraph(permuted(d, perm));
        CHECK(shuffled == base);
    }
}

TEST_CASE("k0 of a disjoint union is the direct sum") {
    SUBCASE("six copies of the order-5 component") {
        const AbelianGroupDecomp whole =
            *compute_k0(GroupSpec::elem_abelian(5, 2), true, K0Method::Snf).snf_decomp;
        const AbelianGroupDecomp one =
            *compute_k0(GroupSpec::cyclic(5), true, K0Method::Snf).snf_decomp;
        CHECK(isomorphic(whole, merged_copies(one, 6)));

        const Digraph part = power_digraph(make_group(GroupSpec::cyclic(5)), true);
        CHECK(isomorphic(k0_of_digraph(disjoint_union({part, part, part, part, part, part})),
                         whole));
    }
    SUBCASE("exponent-3 groups are unions of 2-cycles") {
        for (unsigned r = 1; r <= 3; ++r) {
            const K0Report rep =
                compute_k0(GroupSpec::elem_abelian(3, r), true, K0Method::Both);
            CHECK(rep.verdict == "agree");
            unsigned long m = 1;
            for (unsigned i = 0; i < r; ++i) m *= 3;
            CHECK(rep.snf_decomp->free_rank == (m - 1) / 2);
            CHECK(rep.snf_decomp->primary_factors.empty());
        }
    }
}

TEST_CASE("reports serialize and round trip") {
    for (const auto method : {K0Method::Snf, K0Method::Both, K0Method::Closed}) {
        const K0Report r = compute_k0(GroupSpec::cyclic(9), true, method);
        const K0Report back = K0Report::from_json(r.to_json());
        CHECK(back == r);
    }
    const K0Report r = compute_k0(GroupSpec::cyclic(5), true, K0Method::Both);
    CHECK(r.to_json().at("decomposition").at("pretty") == "(Z/2)^2 + (Z/4)");
    CHECK(r.pretty().find("verdict:      agree") != std::string::npos);
}

TEST_CASE("verification suites") {
    SUBCASE("odd prime closed forms pass") {
        const VerificationReport rep = verify_suite("odd-prime-closed-forms");
        CHECK(rep.exit_code() == 0);
        CHECK(rep.cases.size() >= 6);
        for (const auto& c : rep.cases) CHECK(c.status == CaseStatus::Pass);
    }
    SUBCASE("two-power flags the formula against the oracle") {
        const VerificationReport rep = verify_suite("two-power");
        CHECK(rep.exit_code() == 2);
        CHECK(rep.count(CaseStatus::Fail) == 0);
        REQUIRE(!rep.cases.empty());
        const VerificationCase& n2 = rep.cases.front();
        CHECK(n2.params == "n=2");
        CHECK(n2.status == CaseStatus::Flagged);
        CHECK(n2.computed == "Z + (Z/2)");
        CHECK(n2.data.at("oracle").at("free_rank") == 1);
        CHECK(n2.data.at("formula").at("unverified") == true);
    }
    SUBCASE("disjoint union suite passes") {
        CHECK(verify_suite("disjoint-union").exit_code() == 0);
    }
    SUBCASE("minor-gcd suite respects the budget bound") {
        VerifyBounds b;
        b.max_size = 24; // the 24x24 case needs C(24,12)^2 >> 1e7 submatrices
        CHECK_THROWS_AS(verify_suite("minor-gcd", b), std::invalid_argument);
    }
    SUBCASE("unknown suite") {
        CHECK_THROWS_AS(verify_suite("nope"), std::invalid_argument);
    }
    SUBCASE("report json shape") {
        const nlohmann::json j = verify_suite("two-power").to_json();
        CHECK(j.at("summary").at("flagged").get<int>() >= 1);
        CHECK(j.at("cases").at(0).at("status") == "flagged");
    }
}

TEST_CASE("graph export formats") {
    const std::string dot = export_graph(GroupSpec::cyclic(3), false, "dot");
    CHECK(dot.find("digraph {") == 0);
    const nlohmann::json j =
        nlohmann::json::parse(export_graph(GroupSpec::cyclic(4), true, "json"));
    CHECK(j.at("vertices") == nlohmann::json({"x^2", "x", "x^3"}));
    CHECK(j.at("adjacency") == nlohmann::json({{0, 0, 0}, {1, 0, 1}, {1, 1, 0}}));
    CHECK_THROWS_AS(export_graph(GroupSpec::cyclic(3), false, "svg"), std::invalid_argument);

    const std::string empty = export_graph(GroupSpec::elem_abelian(2, 2), true, "dot");
    CHECK(empty.find("->") == std::string::npos);
}

TEST_CASE("digraph reports cover user-supplied graphs") {
    const Digraph d = Digraph::from_json(nlohmann::json{
        {"vertices", {"a", "b", "c"}},
        {"adjacency", {{0, 1, 1}, {0, 0, 0}, {1, 1, 0}}}});
    const K0Report rep = k0_report_of_digraph(d, "user graph");
    CHECK(rep.snf_decomp->free_rank == 1);
    CHECK(rep.snf_decomp->primary_factors == std::vector<Int>{2});
    CHECK(rep.sinks == 1);
}
