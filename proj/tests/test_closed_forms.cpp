#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "powk0/closed_forms.hpp"
#include "powk0/digraph.hpp"
#include "powk0/pipeline.hpp"

using namespace powk0;
using powk0::testing::cofactor_det;

TEST_CASE("structured blocks match the fixed small cases") {
    CHECK(structured_block(BlockKind::B, 1) == IntMatrix{{1}});
    CHECK(structured_block(BlockKind::B, 2) == IntMatrix{{1, -1}, {-1, 1}});
    CHECK(structured_block(BlockKind::S, 3) == IntMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(structured_block(BlockKind::A, 1, 1, 1) == IntMatrix{{-1}});

    CHECK(structured_block(BlockKind::A, 4, 2, 3) ==
          IntMatrix{{1, -1, -1, -1}, {-1, -1, -1, -1}, {-1, 1, -1, -1}, {-1, -1, -1, 1}});
    CHECK(structured_block(BlockKind::C, 4, 2) ==
          IntMatrix{{1, -1, -1}, {-1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}});
    CHECK(structured_block(BlockKind::D, 3, 2) ==
          IntMatrix{{1, -1, -1, -1}, {-1, -1, 1, -1}, {-1, -1, -1, 1}});
    CHECK(structured_block(BlockKind::D, 3, 2) == structured_block(BlockKind::C, 4, 2).transpose());

    CHECK_THROWS_AS(structured_block(BlockKind::A, 4, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(structured_block(BlockKind::A, 4, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(structured_block(BlockKind::C, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(structured_block(BlockKind::B, 0), std::invalid_argument);
}

TEST_CASE("column-insert blocks transpose to row-insert blocks") {
    for (std::size_t m = 1; m <= 6; ++m)
        for (std::size_t x = 1; x <= m; ++x)
            CHECK(structured_block(BlockKind::D, m, x) ==
                  structured_block(BlockKind::C, m + 1, x).transpose());
}

TEST_CASE("entrywise block definitions agree with the insertion route") {
    for (std::size_t size = 1; size <= 8; ++size)
        for (std::size_t x = 1; x <= size; ++x) {
            CHECK(structured_block_entrywise(BlockKind::C, size, x) ==
                  structured_block(BlockKind::C, size, x));
            for (std::size_t y = 1; y <= size; ++y)
                CHECK(structured_block_entrywise(BlockKind::A, size, x, y) ==
                      structured_block(BlockKind::A, size, x, y));
        }
}

TEST_CASE("prime power matrix construction") {
    CHECK(cyclic_prime_power_matrix(3, 1) == IntMatrix{{1, -1}, {-1, 1}});

    IntMatrix expected(8, 8);
    expected.set_block(0, 0, structured_block(BlockKind::B, 2));
    expected.set_block(2, 2, structured_block(BlockKind::B, 6));
    expected.fill_block(0, 2, 2, 6, Int(-1));
    CHECK(cyclic_prime_power_matrix(3, 2) == expected);

    CHECK(cyclic_prime_power_matrix(5, 2).rows() == 24);
    CHECK_THROWS_AS(cyclic_prime_power_matrix(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_prime_power_matrix(9, 1), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_prime_power_matrix(3, 0), std::invalid_argument);
}

TEST_CASE("minor shape bookkeeping and validation") {
    MinorShape s;
    s.blocks = {{1, 2}, {2, 0}, {1, 3}};
    CHECK(s.total_rows() == 4);
    CHECK(s.total_cols() == 4);
    CHECK(s.is_square());
    CHECK(s.col_surplus(1) == -1);
    CHECK(s.col_surplus(3) == 0);
    CHECK(s.to_string() == "[1^2,2^0,1^3]");
    CHECK_NOTHROW(s.validate(true));

    MinorShape unbalanced;
    unbalanced.blocks = {{2, 2}};
    CHECK_NOTHROW(unbalanced.validate(false));
    CHECK_THROWS_AS(unbalanced.validate(true), std::invalid_argument);

    MinorShape bad_code;
    bad_code.blocks = {{1, 4}};
    CHECK_THROWS_AS(bad_code.validate(false), std::invalid_argument);
    CHECK_THROWS_AS(MinorShape{}.validate(false), std::invalid_argument);
}

TEST_CASE("ambient bounds restrict block sizes and codes") {
    MinorShape fits;
    fits.blocks = {{2, 1}, {6, 1}};
    fits.ambient = {{3ul, 2u}};
    CHECK_NOTHROW(fits.validate(true));

    MinorShape too_big = fits;
    too_big.blocks[1].size = 7;
    CHECK_THROWS_AS(too_big.validate(false), std::invalid_argument);

    MinorShape full_needs_code1 = fits;
    full_needs_code1.blocks[0].code = 0; // size 2 fills the first ambient block
    CHECK_THROWS_AS(full_needs_code1.validate(false), std::invalid_argument);

    // a single block sits in the last ambient slot: size bound is phi(p^n)
    MinorShape tail;
    tail.blocks = {{5, 0}};
    tail.ambient = {{3ul, 2u}};
    CHECK_NOTHROW(tail.validate(false));

    MinorShape too_many;
    too_many.blocks = {{1, 1}, {1, 1}, {1, 1}};
    too_many.ambient = {{3ul, 2u}};
    CHECK_THROWS_AS(too_many.validate(false), std::invalid_argument);
}

TEST_CASE("assemblies and their determinants") {
    SUBCASE("all size-1 code-1 blocks are unimodular") {
        MinorShape s;
        for (int i = 0; i < 5; ++i) s.blocks.push_back({1, 1});
        CHECK(determinant(assemble_minor(s)) == 1);
        CHECK(assembly_det_closed_form(s) == 1);
    }
    SUBCASE("all code-0 blocks give signed powers of two") {
        MinorShape s;
        s.blocks = {{2, 0}, {3, 0}};
        const Int det = determinant(assemble_minor(s));
        CHECK(int_abs(det) == 8); // 2^(5-2)
        CHECK(assembly_det_closed_form(s) == det);
        CHECK(det == cofactor_det(assemble_minor(s)));
    }
    SUBCASE("single code-1 block of size 2 is singular") {
        MinorShape s;
        s.blocks = {{2, 1}};
        CHECK(determinant(assemble_minor(s)) == 0);
        CHECK(structurally_singular(s));
    }
    SUBCASE("closed form rejects codes outside 0/1") {
        MinorShape s;
        s.blocks = {{1, 2}, {1, 3}};
        CHECK_THROWS_AS(assembly_det_closed_form(s), std::invalid_argument);
    }
}

TEST_CASE("structural singularity conditions") {
    auto singular = [](std::vector<MinorBlock> blocks) {
        MinorShape s;
        s.blocks = std::move(blocks);
        return structurally_singular(s);
    };
    CHECK(singular({{2, 1}}));                       // balanced prefix, code 1, size 2
    CHECK(singular({{1, 1}, {2, 1}, {1, 1}}));       // same, later block
    CHECK(singular({{1, 3}, {1, 2}}));               // code 3 on a balanced prefix
    CHECK(singular({{1, 2}, {2, 0}, {1, 3}}));       // code 2 followed by code 0
    CHECK(singular({{1, 2}, {1, 2}, {1, 3}, {1, 3}})); // code 2 followed by code 2
    CHECK(singular({{1, 0}, {1, 3}, {1, 2}}));       // code 3 preceded by code 0
    CHECK_FALSE(singular({{1, 1}, {1, 1}, {1, 1}}));
    CHECK_FALSE(singular({{1, 2}, {3, 1}, {1, 3}}));

    MinorShape not_square;
    not_square.blocks = {{1, 2}};
    CHECK_THROWS_AS(structurally_singular(not_square), std::invalid_argument);
}

TEST_CASE("closed-form minor gcds") {
    CHECK(minor_gcd_closed_form(3, 2, 2) == 1);
    CHECK(minor_gcd_closed_form(3, 2, 7) == 64);
    CHECK(minor_gcd_closed_form(3, 2, 8) == 0);
    CHECK(minor_gcd_closed_form(3, 1, 1) == 1);
    CHECK(minor_gcd_closed_form(3, 1, 2) == 0);
    CHECK(minor_gcd_closed_form(5, 1, 4) == 16);
    CHECK_THROWS_AS(minor_gcd_closed_form(3, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(minor_gcd_closed_form(3, 2, 9), std::invalid_argument);

    // exhaustive enumeration agrees for the one-block cases
    for (unsigned long p : {3ul, 5ul, 7ul}) {
        const IntMatrix m = cyclic_prime_power_matrix(p, 1);
        for (std::size_t k = 1; k < p; ++k)
            CHECK(minor_gcd(m, k) == minor_gcd_closed_form(p, 1, k));
    }
}

TEST_CASE("eta values") {
    CHECK(eta(3, 1) == 0);
    CHECK(eta(3, 2) == 0);
    CHECK(eta(3, 3) == 0);
    CHECK(eta(5, 1) == -4);
    CHECK(eta(5, 2) == 36);
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul})
        for (unsigned n = 1; n <= 3; ++n) CHECK_NOTHROW(eta(p, n)); // integrality
    CHECK_THROWS_AS(eta(2, 1), std::invalid_argument);
}

TEST_CASE("closed-form smith diagonals") {
    CHECK(snf_diagonal_closed_form(5, 1) == std::vector<Int>{1, 2, 2, 4});
    CHECK(snf_diagonal_closed_form(3, 1) == std::vector<Int>{1, 0});
    CHECK(snf_diagonal_closed_form(3, 2) == std::vector<Int>{1, 1, 2, 2, 2, 2, 4, 0});

    // prefix products of the diagonal reproduce the minor gcds up to the rank
    for (auto [p, n] : {std::pair{3ul, 2u}, {5ul, 1u}, {7ul, 1u}, {5ul, 2u}}) {
        const std::vector<Int> diag = snf_diagonal_closed_form(p, n);
        Int prod = 1;
        for (std::size_t k = 1; k <= diag.size(); ++k) {
            if (diag[k - 1] == 0) break;
            prod *= diag[k - 1];
            CHECK(prod == minor_gcd_closed_form(p, n, k));
        }
    }
}

TEST_CASE("closed-form K0 families") {
    SUBCASE("prime case") {
        const ClosedFormK0 c = k0_prime(5);
        CHECK(c.decomp.free_rank == 0);
        CHECK(c.decomp.primary_factors == std::vector<Int>{2, 2, 4});
        CHECK_FALSE(c.unverified);
        CHECK_THROWS_AS(k0_prime(3), std::invalid_argument);
        CHECK_THROWS_AS(k0_prime(6), std::invalid_argument);
    }
    SUBCASE("odd prime powers") {
        const ClosedFormK0 c = k0_odd_prime_power(3, 2);
        CHECK(c.decomp.free_rank == 1);
        CHECK(c.decomp.primary_factors == std::vector<Int>{2, 2, 2, 2, 4});
        // and the prime family is the n = 1 special case
        for (unsigned long p : {5ul, 7ul, 11ul, 13ul})
            CHECK(isomorphic(k0_odd_prime_power(p, 1).decomp, k0_prime(p).decomp));
    }
    SUBCASE("elementary abelian over p >= 5") {
        const ClosedFormK0 c = k0_elem_abelian_odd(5, 2);
        CHECK(c.decomp.free_rank == 0);
        std::vector<Int> expected(12, Int(2));
        expected.insert(expected.end(), 6, Int(4));
        CHECK(c.decomp.primary_factors == expected);
        CHECK_THROWS_AS(k0_elem_abelian_odd(3, 2), std::invalid_argument);
    }
    SUBCASE("exponent three") {
        const ClosedFormK0 c = k0_exponent_three(9);
        CHECK(c.decomp.free_rank == 4);
        CHECK(c.decomp.primary_factors.empty());
        CHECK_THROWS_AS(k0_exponent_three(4), std::invalid_argument);
    }
    SUBCASE("elementary abelian 2-groups") {
        CHECK(k0_elem_abelian_two(3).decomp.free_rank == 7);
        CHECK_THROWS_AS(k0_elem_abelian_two(0), std::invalid_argument);
    }
    SUBCASE("powers of two carry the unverified flag") {
        const ClosedFormK0 c = k0_two_power(2);
        CHECK(c.unverified);
        CHECK(c.decomp.free_rank == 1);
        CHECK(c.decomp.primary_factors == std::vector<Int>{2, 2, 2, 4});
    }
}

TEST_CASE("closed forms json round trip") {
    const ClosedFormK0 c = k0_two_power(3);
    CHECK(ClosedFormK0::from_json(c.to_json()) == c);
}
