#include <metafp/charspace.hpp>
#include <metafp/sigma.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace metafp;

namespace {

SetupPtr g2() {
    static SetupPtr s = factorial_setup(2);
    return s;
}

Character C(std::initializer_list<long> v) {
    Character c;
    for (long x : v) c.emplace_back(x);
    return c;
}

}  // namespace

TEST_CASE("standard characters of the n=2 instance") {
    auto V = standard_characters(g2());
    REQUIRE(V.size() == 4);
    CHECK(V[0].name == "w");
    CHECK(V[0].chi == C({0, -1, -1, -1}));
    CHECK(V[1].chi == C({0, 1, 0, 0}));
    CHECK(V[2].chi == C({0, 0, 1, 0}));
    CHECK(V[3].chi == C({0, 0, 0, 1}));
    // w + v0 + v1 + v2 = 0
    Character sum(4, Rat{0});
    for (const auto& e : V) sum = add(sum, e.chi);
    CHECK(is_zero_vector(sum));
    // each v(q_v) = 1 and each is discrete (gcd of values 1)
    for (const auto& e : V) {
        CHECK(dot(e.chi, e.q_v) == 1);
        Int g{0};
        for (const Rat& x : e.chi) g = int_gcd(g, numerator(x));
        CHECK(g == 1);
    }
    // w(q_w) = 1 with q_w = q0^-1, via the valuation itself
    Localized img = monomial_image(V[0].q_v, g2());
    CHECK(valuation(V[0].valuation, img) == ExtInt(1));
}

TEST_CASE("halfspace test on the standard sets") {
    auto V = standard_characters(g2());
    auto r = find_open_halfspace({V[1].chi, V[2].chi, V[3].chi});
    CHECK(r.inside);
    REQUIRE(r.witness.has_value());
    for (const auto& e : {V[1], V[2], V[3]}) CHECK(dot(*r.witness, e.chi) > 0);

    auto full = find_open_halfspace({V[0].chi, V[1].chi, V[2].chi, V[3].chi});
    CHECK_FALSE(full.inside);

    Character v = C({1, 2, -1, 0});
    Character mv = scale(Rat{-1}, v);
    CHECK_FALSE(find_open_halfspace({v, mv}).inside);

    CHECK_THROWS_AS(find_open_halfspace({C({0, 0, 0, 0})}), std::invalid_argument);
}

TEST_CASE("halfspace test is scale-invariant") {
    std::mt19937_64 rng(20240521);
    std::uniform_int_distribution<int> coord(-3, 3), sc_num(1, 5), sc_den(1, 5), cnt(1, 4);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<Character> chars;
        int m = cnt(rng);
        for (int i = 0; i < m; ++i) {
            Character c(4);
            bool nonzero = false;
            for (auto& x : c) {
                x = coord(rng);
                if (x != 0) nonzero = true;
            }
            if (!nonzero) c[0] = 1;
            chars.push_back(std::move(c));
        }
        bool base = find_open_halfspace(chars).inside;
        std::vector<Character> scaled;
        for (const Character& c : chars) scaled.push_back(scale(Rat(sc_num(rng), sc_den(rng)), c));
        CHECK(find_open_halfspace(scaled).inside == base);
    }
}

TEST_CASE("m-tameness of the declared complement family") {
    ConeFamily fam = sigma_complement_family(2);
    REQUIRE(fam.cones.size() == 10);

    auto t3 = check_m_tame(fam, 3);
    CHECK(t3.tame);

    auto t4 = check_m_tame(fam, 4);
    CHECK_FALSE(t4.tame);
    REQUIRE(t4.certificate.size() == 4);
    // certificate is exactly {v0, v1, v2, w}
    std::vector<Character> expect = {C({0, 1, 0, 0}), C({0, 0, 1, 0}), C({0, 0, 0, 1}),
                                     C({0, -1, -1, -1})};
    for (const Character& e : expect)
        CHECK(std::find(t4.certificate.begin(), t4.certificate.end(), e) != t4.certificate.end());
    CHECK(plain_sum_is_zero(t4.certificate));

    // monotonicity: 3-tame implies 2- and 1-tame
    CHECK(check_m_tame(fam, 2).tame);
    CHECK(check_m_tame(fam, 1).tame);
}

TEST_CASE("single ray is m-tame for every m") {
    ConeFamily fam;
    fam.cones.push_back(ray_cone("[v]", C({1, 2, 0, -1})));
    for (long m = 1; m <= 5; ++m) CHECK(check_m_tame(fam, m).tame);
}

TEST_CASE("the standard rays fail exactly at n+2") {
    ConeFamily rays = standard_ray_family(g2());
    CHECK(check_m_tame(rays, 3).tame);
    auto r = check_m_tame(rays, 4);
    CHECK_FALSE(r.tame);
    REQUIRE(r.cone_indices.size() == 4);
    // the certificate multiset is all of V
    CHECK(r.cone_indices == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("cone membership queries") {
    ConeFamily fam = sigma_complement_family(2);
    CHECK(family_contains(fam, C({1, 0, 0, 0})));     // [v-1]
    CHECK(family_contains(fam, C({0, -1, -1, -1})));  // [w]
    CHECK(family_contains(fam, C({3, 0, 5, 0})));     // k-1 v-1 + k1 v1
    CHECK(family_contains(fam, C({1, 1, 0, 2})));     // k2 >= k-1 > 0
    CHECK_FALSE(family_contains(fam, C({2, 2, 0, 1})));  // violates k2 >= k-1
    CHECK_FALSE(family_contains(fam, C({0, 1, 1, 0})));  // [v0+v1]
    CHECK_FALSE(family_contains(fam, C({-1, 0, 0, 0})));
    // scale invariance of membership
    CHECK(family_contains(fam, C({2, 2, 0, 2})));  // 2 * (1,1,0,1)
}
