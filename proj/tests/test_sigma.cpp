#include <metafp/sigma.hpp>

#include <catch2/catch_amalgamated.hpp>

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

void check_witness(const SigmaVerdict& v, const SetupPtr& s, const Character& chi) {
    REQUIRE(v.in_sigma());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->image_sum(s).is_one());
    for (const auto& [c, q] : v.witness->terms) {
        CHECK(c != 0);
        CHECK(dot(chi, q) > 0);
    }
}

}  // namespace

TEST_CASE("the negative q-1 direction has the classical witness") {
    auto s = g2();
    Character chi = C({-1, 0, 0, 0});
    SigmaVerdict v = search_centralizer_witness(s, chi);
    check_witness(v, s, chi);
    // exactly lambda = k * q_{-1}^{-1}
    REQUIRE(v.witness->terms.size() == 1);
    CHECK(v.witness->terms[0].first == s->k);
    QMonomial expect = QMonomial::generator(*s, 0, -1);
    CHECK(v.witness->terms[0].second == expect);
}

TEST_CASE("v0 - v1 has a two-term witness and the hand combination validates") {
    auto s = g2();
    Character chi = C({0, 1, -1, 0});
    SigmaVerdict v = search_centralizer_witness(s, chi);
    check_witness(v, s, chi);
    CHECK(v.witness->terms.size() == 2);
    // the ideal-relation combination q0 q1^-1 + q1^-1 is itself a witness
    Witness hand;
    QMonomial q0q1i = QMonomial::generator(*s, 1) * QMonomial::generator(*s, 2, -1);
    QMonomial q1i = QMonomial::generator(*s, 2, -1);
    hand.terms = {{Int{1}, q0q1i}, {Int{1}, q1i}};
    CHECK(hand.image_sum(s).is_one());
    for (const auto& [c, q] : hand.terms) CHECK(dot(chi, q) > 0);
}

TEST_CASE("classes declared in the complement yield no witness") {
    auto s = g2();
    for (auto chi : {C({0, 0, 1, 0}), C({0, -1, -1, -1}), C({1, 0, 0, 0})}) {
        SigmaVerdict v = search_centralizer_witness(s, chi);
        CHECK_FALSE(v.in_sigma());
        CHECK(v.bounds.support == 4);
        CHECK(v.bounds.exp_box == 6);
    }
}

TEST_CASE("zero character is rejected") {
    auto s = g2();
    CHECK_THROWS_AS(search_centralizer_witness(s, C({0, 0, 0, 0})), std::invalid_argument);
}

TEST_CASE("search is deterministic") {
    auto s = g2();
    Character chi = C({0, 1, -1, 0});
    SigmaVerdict a = search_centralizer_witness(s, chi);
    SigmaVerdict b = search_centralizer_witness(s, chi);
    REQUIRE(a.in_sigma());
    REQUIRE(b.in_sigma());
    REQUIRE(a.witness->terms.size() == b.witness->terms.size());
    for (std::size_t i = 0; i < a.witness->terms.size(); ++i) {
        CHECK(a.witness->terms[i].first == b.witness->terms[i].first);
        CHECK(a.witness->terms[i].second == b.witness->terms[i].second);
    }
}

TEST_CASE("complement family data") {
    ConeFamily fam = sigma_complement_family(2);
    CHECK(family_contains(fam, C({1, 0, 0, 0})));  // [v-1] present
    CHECK(family_contains(fam, C({2, 0, 3, 0})));  // the v-1/v1 ray family
    CHECK_FALSE(family_contains(fam, C({0, 1, 1, 0})));  // [v0+v1] not in the family
    CHECK_THROWS_AS(sigma_complement_family(3), std::invalid_argument);
}

TEST_CASE("grid verification is clean on a spot-check subgrid") {
    auto s = g2();
    std::vector<Character> grid = {C({-1, 0, 0, 0}), C({0, 0, 1, 0}), C({0, -1, -1, -1}),
                                   C({0, 1, -1, 0}), C({1, 1, 0, 1}), C({1, 0, 0, 1}),
                                   C({0, 1, 0, 1}), C({1, 1, 0, 0})};
    VerifyReport rep = verify_sigma_complement(s, {}, grid);
    CHECK(rep.rows.size() == grid.size());
    CHECK(rep.hard_anomalies.empty());
    CHECK(rep.soft_anomalies.empty());
    // named expectations along the way
    CHECK(rep.rows[0].verdict.in_sigma());
    CHECK_FALSE(rep.rows[1].verdict.in_sigma());
    CHECK(rep.rows[1].in_family);
    CHECK_FALSE(rep.rows[2].verdict.in_sigma());
    CHECK(rep.rows[2].in_family);
}

TEST_CASE("multi-block setups are rejected by the search") {
    RawSetup raw;
    raw.k = 6;
    Poly x({Int{0}, Int{1}});
    raw.blocks.push_back({{x, Poly({Int{1}, Int{1}})}, false});
    raw.blocks.push_back({{x, Poly({Int{3}, Int{1}})}, false});
    auto vr = validate_setup(raw);
    REQUIRE(vr.ok());
    Character chi(static_cast<std::size_t>(vr.setup->rank_q), Rat{0});
    chi[0] = -1;
    CHECK_THROWS_AS(search_centralizer_witness(vr.setup, chi), std::invalid_argument);
}
