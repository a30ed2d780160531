#include <catch2/catch_amalgamated.hpp>

#include <handlebody/growth.hpp>

#include <vector>

using namespace hb;

namespace {

// Oracle: N_k as the first coordinate of M^k (1,0)^T computed by matrix
// squaring, independent of the step recurrence in nk_growth.
BigInt matrix_power_nk(int k) {
    Mat2 p = mat2_power(expanding_abelianization(), static_cast<unsigned>(k));
    return p.a;  // first column is M^k (1,0)^T
}

// Oracle: literal iteration of the substitution on generator 1.
ReducedWord iterate_on_a(int k) {
    FreeMap f = expanding_map();
    ReducedWord w = reduce({1});
    for (int i = 0; i < k; ++i) w = apply_map(f, w);
    return w;
}

}  // namespace

TEST_CASE("N_k base values") {
    CHECK(nk_growth(0) == 1);
    CHECK(nk_growth(1) == 2);
    CHECK(nk_growth(2) == 5);
    CHECK(nk_growth(3) == 13);
    CHECK(nk_growth(4) == 34);
}

TEST_CASE("N_k equals the matrix-power oracle and doubles at least") {
    BigInt pow2 = 1;
    for (int k = 0; k <= 25; ++k) {
        CHECK(nk_growth(k) == matrix_power_nk(k));
        if (k >= 1) {
            pow2 *= 2;
            CHECK(nk_growth(k) >= pow2);
        }
    }
    CHECK_THROWS(nk_growth(61));
    CHECK(nk_growth(61, 100) == matrix_power_nk(61));
}

TEST_CASE("N_k recurrence against literal substitution") {
    // N_{k+1} = 2 N_k + M_k where M_k is the exponent of generator 1 in the
    // k-th image of generator 2.
    FreeMap f = expanding_map();
    ReducedWord wb = reduce({2});
    for (int k = 0; k <= 10; ++k) {
        ReducedWord wa = iterate_on_a(k);
        CHECK(BigInt(exponent_sum(wa, 1)) == nk_growth(k));
        CHECK(nk_growth(k + 1) == 2 * nk_growth(k) + exponent_sum(wb, 1));
        wb = apply_map(f, wb);
    }
}

TEST_CASE("image length is exact for a positive substitution") {
    for (int k = 0; k <= 12; ++k)
        CHECK(expanding_image_length(k) == BigInt(iterate_on_a(k).size()));
}

TEST_CASE("projection of the iterated image is a power of the first letter") {
    std::vector<std::optional<int>> kill_b{1, std::nullopt};
    for (int k = 0; k <= 15; ++k) {
        ReducedWord proj = projection(kill_b, iterate_on_a(k));
        BigInt n = nk_growth(k);
        CHECK(BigInt(proj.size()) == n);
        bool all_a = true;
        for (Letter x : proj.letters()) all_a &= (x == 1);
        CHECK(all_a);
        CHECK(proj == power_word(1, to_int64(n)));
    }
}

TEST_CASE("phi_family is conjugation by the N_k-th power") {
    AutPair p0 = phi_family(0, 2);
    CHECK(p0.forward() == conjugation(reduce({1}), 2).forward());

    AutPair p1 = phi_family(1, 2);
    CHECK(p1.forward().image(2) == reduce({1, 1, 2, -1, -1}));
    CHECK(p1.backward().image(2) == reduce({-1, -1, 2, 1, 1}));

    for (int k = 0; k <= 10; ++k) {
        AutPair pk = phi_family(k, 3);
        CHECK(pk.forward().image(1) == reduce({1}));
        CHECK(BigInt(pk.forward().image(2).size()) == 2 * nk_growth(k) + 1);
        CHECK(BigInt(pk.forward().image(3).size()) == 2 * nk_growth(k) + 1);
    }
}

TEST_CASE("expanding map is a verified automorphism") {
    AutPair f = expanding_aut();
    CHECK(apply_map(f.forward(), reduce({1})) == reduce({1, 1, 2}));
    // naturality of the point push under f, evaluated exactly
    ReducedWord alpha = reduce({1});
    AutPair lhs = point_push_action(apply_map(f.forward(), alpha), 2);
    AutPair rhs = compose(compose(f, point_push_action(alpha, 2)), f.inverse());
    CHECK(lhs.forward() == rhs.forward());
}
