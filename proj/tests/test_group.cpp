#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "powk0/group.hpp"

using namespace powk0;

namespace {

std::vector<std::size_t> order_sequence(const Group& g) {
    std::vector<std::size_t> seq;
    for (std::size_t x = 0; x < g.order(); ++x) seq.push_back(element_order(g, x));
    return seq;
}

const std::vector<std::vector<std::size_t>> kKleinTable = {
    {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

// Latin square with two-sided identity 0 and two-sided inverses that is not
// associative: (1*1)*2 = 2 but 1*(1*2) = 4.
const std::vector<std::vector<std::size_t>> kLoopTable = {
    {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};

} // namespace

TEST_CASE("parametric group construction and element orders") {
    CHECK(order_sequence(make_group(GroupSpec::cyclic(4))) ==
          std::vector<std::size_t>{1, 4, 2, 4});
    CHECK(order_sequence(make_group(GroupSpec::dihedral(3))) ==
          std::vector<std::size_t>{1, 3, 3, 2, 2, 2});
    CHECK(order_sequence(make_group(GroupSpec::cayley(kKleinTable))) ==
          std::vector<std::size_t>{1, 2, 2, 2});

    const Group z9 = make_group(GroupSpec::cyclic(9));
    CHECK(element_order(z9, 3) == 3);
    CHECK(element_order(z9, z9.identity()) == 1);
    CHECK(element_order(make_group(GroupSpec::cyclic(8)), 5) == 8);
}

TEST_CASE("cyclic subgroups") {
    CHECK(cyclic_subgroup(make_group(GroupSpec::cyclic(4)), 2) ==
          std::vector<std::size_t>{0, 2});
    CHECK(cyclic_subgroup(make_group(GroupSpec::cyclic(5)), 2) ==
          std::vector<std::size_t>{0, 1, 2, 3, 4});
    const Group d3 = make_group(GroupSpec::dihedral(3));
    for (std::size_t refl = 3; refl < 6; ++refl)
        CHECK(cyclic_subgroup(d3, refl) == std::vector<std::size_t>{0, refl});
}

TEST_CASE("exponent") {
    CHECK(exponent(make_group(GroupSpec::cyclic(9))) == 9);
    CHECK(exponent(make_group(GroupSpec::cayley(kKleinTable))) == 2);
    CHECK(exponent(make_group(GroupSpec::dihedral(3))) == 6);
}

TEST_CASE("lagrange and subgroup-size properties") {
    const std::vector<GroupSpec> specs = {
        GroupSpec::cyclic(12),        GroupSpec::dihedral(4),
        GroupSpec::elem_abelian(3, 2), GroupSpec::elem_abelian(2, 3),
        GroupSpec::cayley(kKleinTable)};
    for (const auto& spec : specs) {
        const Group g = make_group(spec);
        unsigned long lcm = 1;
        for (std::size_t x = 0; x < g.order(); ++x) {
            const std::size_t t = element_order(g, x);
            CHECK(g.order() % t == 0);
            CHECK(cyclic_subgroup(g, x).size() == t);
            lcm = std::lcm(lcm, static_cast<unsigned long>(t));
        }
        CHECK(exponent(g) == lcm);
    }
}

TEST_CASE("cayley tables rebuilt from parametric groups match") {
    for (const auto& spec :
         {GroupSpec::cyclic(12), GroupSpec::dihedral(4), GroupSpec::elem_abelian(3, 2)}) {
        const Group g = make_group(spec);
        const Group h = make_group(GroupSpec::cayley(multiplication_table(g)));
        CHECK(h.identity() == g.identity());
        CHECK(order_sequence(h) == order_sequence(g));
    }
}

TEST_CASE("cayley validation reports the first violated axiom") {
    auto message_of = [](std::vector<std::vector<std::size_t>> t) {
        try {
            make_group(GroupSpec::cayley(std::move(t)));
            return std::string("(no error)");
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
    };
    CHECK(message_of({{0, 1}}).find("square") != std::string::npos);
    CHECK(message_of({{0, 7}, {1, 0}}).find("range") != std::string::npos);
    CHECK(message_of({{0, 0}, {1, 1}}).find("Latin") != std::string::npos);
    // Latin square t[i][j] = 2i+j mod 3: 0 is a left identity but nothing is
    // two-sided
    CHECK(message_of({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}).find("identity") != std::string::npos);
    CHECK(message_of(kLoopTable).find("associativity") != std::string::npos);
}

TEST_CASE("cayley identity may sit at a nonzero index") {
    // Klein table relabeled so the identity is element 2
    std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
    const std::size_t relabel[4] = {2, 1, 0, 3}; // swap 0 <-> 2
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            t[relabel[i]][relabel[j]] = relabel[kKleinTable[i][j]];
    const Group g = make_group(GroupSpec::cayley(t));
    CHECK(g.identity() == 2);
    CHECK(element_order(g, 2) == 1);
    CHECK(element_order(g, 0) == 2);
}

TEST_CASE("large cayley tables need the trust flag") {
    const Group big = make_group(GroupSpec::cyclic(300));
    GroupSpec spec = GroupSpec::cayley(multiplication_table(big));
    CHECK_THROWS_WITH_AS(static_cast<void>(make_group(spec)),
                         doctest::Contains("associativity check"), std::invalid_argument);
    spec.trust_cayley = true;
    CHECK(make_group(spec).order() == 300);
}

TEST_CASE("invalid parametric specs") {
    CHECK_THROWS_AS(make_group(GroupSpec::cyclic(0)), std::invalid_argument);
    CHECK_THROWS_AS(make_group(GroupSpec::elem_abelian(4, 2)), std::invalid_argument);
    CHECK_THROWS_AS(make_group(GroupSpec::elem_abelian(3, 0)), std::invalid_argument);
    CHECK_THROWS_AS(make_group(GroupSpec::dihedral(1)), std::invalid_argument);
}

TEST_CASE("group spec parsing") {
    CHECK(GroupSpec::parse("cyclic:12").m == 12);
    CHECK(GroupSpec::parse("dihedral:5").n == 5);
    const GroupSpec ea = GroupSpec::parse("elem-abelian:5,2");
    CHECK(ea.p == 5);
    CHECK(ea.r == 2);
    CHECK_THROWS_AS(GroupSpec::parse("cyclic"), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec::parse("cyclic:x"), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec::parse("ring:3"), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec::parse("elem-abelian:5"), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec::parse("cayley:/nonexistent/file.json"), std::invalid_argument);
}

TEST_CASE("cayley json round trip") {
    const Group d4 = make_group(GroupSpec::dihedral(4));
    const nlohmann::json j = cayley_to_json(d4);
    CHECK(j.at("order") == 8);
    const Group back = make_group(GroupSpec::cayley(cayley_table_from_json(j)));
    CHECK(order_sequence(back) == order_sequence(d4));
    CHECK_THROWS_AS(cayley_table_from_json(nlohmann::json{{"order", 2}}),
                    std::invalid_argument);
}

TEST_CASE("element labels") {
    const Group z4 = make_group(GroupSpec::cyclic(4));
    CHECK(z4.element_label(0) == "e");
    CHECK(z4.element_label(1) == "x");
    CHECK(z4.element_label(3) == "x^3");
    const Group d3 = make_group(GroupSpec::dihedral(3));
    CHECK(d3.element_label(0) == "e");
    CHECK(d3.element_label(2) == "r^2");
    CHECK(d3.element_label(3) == "s");
    CHECK(d3.element_label(5) == "r^2s");
    const Group ea = make_group(GroupSpec::elem_abelian(3, 2));
    CHECK(ea.element_label(0) == "(0,0)");
    CHECK(ea.element_label(5) == "(2,1)");
}
