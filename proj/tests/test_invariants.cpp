#include <doctest.h>

#include <random>

#include "filn/catalog.hpp"
#include "filn/error.hpp"
#include "oracle.hpp"

using namespace filn;

namespace {

Vec unit(int k, int j) {
    Vec v(static_cast<size_t>(k));
    v[static_cast<size_t>(j - 1)] = Scalar(Rational(1));
    return v;
}

Mat random_invertible(std::mt19937_64& rng, int k) {
    std::uniform_int_distribution<long> coef(-2, 2);
    for (;;) {
        Mat m(static_cast<size_t>(k), static_cast<size_t>(k));
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Scalar(Rational(coef(rng)));
        if (!det(m).is_zero()) return m;
    }
}

} // namespace

TEST_CASE("right multiplication matrices") {
    NAry C2 = make(CatalogId::C2(3));
    Mat R = right_mult(C2, {unit(4, 3), unit(4, 4)});
    // columns: e1 -> e2, e2 -> alpha e1 + e2, e3 -> 0, e4 -> 0
    CHECK(R.at(1, 0) == Scalar(Rational(1)));
    CHECK(R.at(0, 0).is_zero());
    CHECK(R.at(0, 1) == Scalar::variable("alpha"));
    CHECK(R.at(1, 1) == Scalar(Rational(1)));
    for (size_t i = 0; i < 4; ++i) {
        CHECK(R.at(i, 2).is_zero());
        CHECK(R.at(i, 3).is_zero());
    }

    // equal components annihilate
    NAry D4 = make(CatalogId::D(3, 4));
    CHECK(right_mult(D4, {unit(4, 2), unit(4, 2)}) == Mat(4, 4));

    // signed value from the table ordering: [e1, e2, e3] = e4
    Mat R2 = right_mult(D4, {unit(4, 2), unit(4, 3)});
    CHECK(R2.at(3, 0) == Scalar(Rational(1)));
}

TEST_CASE("derived subspace dimensions") {
    CHECK(derived_dim(make(CatalogId::B(3))) == 1);
    CHECK(derived_dim(make(CatalogId::D(3, 4))) == 4);
    CHECK(derived_dim(make(CatalogId::zero(3))) == 0);
    CHECK(derived_dim(make(CatalogId::C2(3))) == 2);
}

TEST_CASE("annihilators") {
    NAry B = make(CatalogId::B(3));
    Subspace a1 = annihilator_I(B, {1});
    CHECK(a1.dim() == 1);
    CHECK(a1.contains({Scalar(Rational(1)), Scalar(), Scalar(), Scalar()}));

    CHECK(annihilator_I(make(CatalogId::zero(3)), {1, 2}).dim() == 16);
    CHECK(annihilator_I(make(CatalogId::D(3, 4)), {1}).dim() == 0);

    CHECK(annihilator(B).dim() == 1);
    CHECK(annihilator(make(CatalogId::C3(3))).dim() == 0);
    CHECK(annihilator(make(CatalogId::zero(3))).dim() == 4);

    CHECK_THROWS_AS(annihilator_I(B, {}), Error);
    CHECK_THROWS_AS(annihilator_I(B, {2, 1}), Error);
    CHECK_THROWS_AS(annihilator_I(B, {1, 5}), Error);
}

TEST_CASE("t-centers") {
    CHECK(t_center(make(CatalogId::zero(3)), 1).dim() == 4);
    NAry B = make(CatalogId::B(3));
    Subspace z = t_center(B, 1);
    CHECK(z.dim() == 1);
    CHECK(z.contains({Scalar(Rational(1)), Scalar(), Scalar(), Scalar()}));

    // independent dense enumeration of the shuffle equations
    NAry D4 = make(CatalogId::D(3, 4));
    oracle::Dense dense = oracle::Dense::from(D4);
    CHECK(static_cast<int>(t_center(D4, 2).dim()) == oracle::center_dim(dense, 2));

    CHECK_THROWS_AS(t_center(B, 0), Error);
    CHECK_THROWS_AS(t_center(B, 3), Error); // t = n is vacuous and excluded
}

TEST_CASE("t=1 center coincides with the annihilator on the catalog") {
    for (int n = 2; n <= 3; ++n)
        for (const auto& row : expected_table(n)) {
            NAry mu = make(row.id);
            CHECK(t_center(mu, 1).dim() == annihilator(mu).dim());
        }
}

TEST_CASE("alpha derivations") {
    std::vector<Rational> ones(4, Rational(1));
    CHECK(alpha_derivations(make(CatalogId::B(3)), ones).dim() == 12);
    CHECK(alpha_derivations(make(CatalogId::C3(3)), ones).dim() == 11);
    std::vector<Rational> weird = {Rational(3), Rational(1, 2), Rational(-1), Rational(7)};
    CHECK(alpha_derivations(make(CatalogId::zero(3)), weird).dim() == 16);
    CHECK_THROWS_AS(alpha_derivations(make(CatalogId::B(3)), {Rational(1)}), Error);
}

TEST_CASE("aut_dim examples") {
    CHECK(aut_dim(make(CatalogId::C1(3))) == 9);
    CHECK(aut_dim(make(CatalogId::D(3, 4))) == 6);
    CHECK(aut_dim(make(CatalogId::D(3, 3))) == 7);
}

TEST_CASE("trace invariants") {
    auto c3 = trace_invariant(make(CatalogId::C3(3)), 1, 1);
    REQUIRE(c3.tag == TraceValue::Tag::Value);
    CHECK(c3.value == Scalar(Rational(2)));
    CHECK(c3.exact);
    CHECK(c3.family_constant);

    auto c2 = trace_invariant(make(CatalogId::C2(3)), 1, 1);
    REQUIRE(c2.tag == TraceValue::Tag::Value);
    CHECK(c2.value == Scalar::parse("1/(2*alpha+1)"));
    CHECK(!c2.family_constant); // depends on the parameter

    auto d4 = trace_invariant(make(CatalogId::D(3, 4)), 1, 1);
    REQUIRE(d4.tag == TraceValue::Tag::Value);
    CHECK(d4.value.is_zero());

    auto b = trace_invariant(make(CatalogId::B(3)), 1, 1);
    CHECK(b.tag == TraceValue::Tag::Indeterminate);

    CHECK_THROWS_AS(trace_invariant(make(CatalogId::B(3)), 0, 1), Error);
}

TEST_CASE("trace invariant specialization coherence") {
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<long> num(-8, 8);
    int done = 0;
    while (done < 10) {
        Rational a0(num(rng), 1 + static_cast<long>(rng() % 4));
        if (a0 == Rational(-1, 2)) continue;
        auto c = trace_invariant(make(CatalogId::C2(3, Scalar(a0))), 1, 1);
        REQUIRE(c.tag == TraceValue::Tag::Value);
        Poly denom = Poly::term(Rational(2), {{"alpha", 1}}) + Poly::constant(Rational(1));
        CHECK(c.value == Scalar(denom.eval({{"alpha", a0}}).inverse()));
        ++done;
    }
    // regression anchor: at the pole alpha = -1/2 the right side vanishes
    // identically while the left does not
    auto pole = trace_invariant(make(CatalogId::C2(3, Scalar(Rational(-1, 2)))), 1, 1);
    CHECK(pole.tag == TraceValue::Tag::Infinity);
    CHECK(pole.exact);
}

TEST_CASE("term budget triggers the randomized fallback") {
    TraceOptions opt;
    opt.term_budget = 4;
    opt.seed = 0;
    auto c = trace_invariant(make(CatalogId::C3(3)), 1, 1, opt);
    REQUIRE(c.tag == TraceValue::Tag::Value);
    CHECK(c.value == Scalar(Rational(2)));
    CHECK(!c.exact);
    CHECK(!c.family_constant);
}

TEST_CASE("scalar socle") {
    CHECK(socle_dim(make(CatalogId::B(3))).dim == 1);
    auto c3 = socle_dim(make(CatalogId::C3(3)));
    REQUIRE(c3.available);
    CHECK(c3.dim == 2);
    auto zero = socle_dim(make(CatalogId::zero(3)));
    REQUIRE(zero.available);
    CHECK(zero.dim == 4);
    auto c1 = socle_dim(make(CatalogId::C1(3)));
    REQUIRE(c1.available);
    CHECK(c1.dim == 1);
    // generic alpha has an irrational 2x2 spectrum
    auto c2 = socle_dim(make(CatalogId::C2(3)));
    CHECK(!c2.available);
    CHECK(c2.reason == "IrrationalSpectrum");
    // at alpha = -1/4 the block has the double rational eigenvalue 1/2
    auto c2s = socle_dim(make(CatalogId::C2(3, Scalar(Rational(-1, 4)))));
    REQUIRE(c2s.available);
    CHECK(c2s.dim == 1);
}

TEST_CASE("profiles") {
    ProfileConfig cfg = ProfileConfig::defaults(3);
    Profile b = profile(make(CatalogId::B(3)), cfg);
    CHECK(b.dim_derived == 1);
    CHECK(b.dim_ann == 1);
    CHECK(b.aut == 12);
    CHECK(b.c.at({1, 1}).tag == TraceValue::Tag::Indeterminate);
    CHECK(b.socle.dim == 1);

    Profile z = profile(make(CatalogId::zero(3)), cfg);
    CHECK(z.dim_derived == 0);
    CHECK(z.dim_ann == 4);
    CHECK(z.aut == 16);
    CHECK(z.c.at({1, 1}).tag == TraceValue::Tag::Indeterminate);
    CHECK(z.socle.dim == 4);

    Profile c2 = profile(make(CatalogId::C2(3)), cfg);
    CHECK(c2.aut == 9);
    CHECK(c2.c.at({1, 1}).value == Scalar::parse("1/(2*alpha+1)"));
}

TEST_CASE("profiles are isomorphism invariants") {
    std::mt19937_64 rng(77);
    ProfileConfig cfg = ProfileConfig::defaults(2);
    for (const auto& row : expected_table(2)) {
        NAry mu = make(row.id);
        Profile base = profile(mu, cfg);
        for (int round = 0; round < 5; ++round) {
            Mat A = random_invertible(rng, 3);
            Profile moved = profile(mu.change_of_basis(A), cfg);
            CHECK(moved == base);
        }
    }
}

TEST_CASE("profile batch matches sequential profiles") {
    ProfileConfig cfg = ProfileConfig::defaults(3);
    std::vector<NAry> mus;
    for (const auto& row : expected_table(3)) mus.push_back(make(row.id));
    auto batch = profile_batch(mus, cfg);
    REQUIRE(batch.size() == mus.size());
    for (size_t i = 0; i < mus.size(); ++i) CHECK(batch[i] == profile(mus[i], cfg));
}

TEST_CASE("dense oracle agreement at n=2, k=3") {
    std::vector<NAry> mus;
    for (const auto& id :
         {CatalogId::zero(2), CatalogId::B(2), CatalogId::C1(2), CatalogId::C3(2),
          CatalogId::D(2, 3), CatalogId::C2(2, Scalar(Rational(0))),
          CatalogId::C2(2, Scalar(Rational(1))), CatalogId::C2(2, Scalar(Rational(-1, 4)))})
        mus.push_back(make(id));
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int round = 0; round < 3; ++round) {
        NAry mu(2, 3);
        for (const auto& I : increasing_tuples(3, 2)) {
            Vec v(3);
            for (auto& s : v) s = Scalar(Rational(coef(rng)));
            mu.add_product(I, v);
        }
        mus.push_back(mu);
    }
    for (const auto& mu : mus) {
        oracle::Dense dense = oracle::Dense::from(mu);
        CHECK(derived_dim(mu) == oracle::derived_dim(dense));
        CHECK(static_cast<int>(annihilator(mu).dim()) == oracle::ann_dim(dense));
        CHECK(static_cast<int>(annihilator_I(mu, {1}).dim()) == oracle::ann_I_dim(dense, {1}));
        CHECK(static_cast<int>(annihilator_I(mu, {2}).dim()) == oracle::ann_I_dim(dense, {2}));
        CHECK(static_cast<int>(annihilator_I(mu, {1, 2}).dim()) ==
              oracle::ann_I_dim(dense, {1, 2}));
        CHECK(static_cast<int>(t_center(mu, 1).dim()) == oracle::center_dim(dense, 1));
        for (const auto& w :
             {std::vector<Rational>{Rational(1), Rational(1), Rational(1)},
              std::vector<Rational>{Rational(0), Rational(1), Rational(1)},
              std::vector<Rational>{Rational(1), Rational(0), Rational(0)},
              std::vector<Rational>{Rational(2), Rational(1), Rational(1)}})
            CHECK(static_cast<int>(alpha_derivations(mu, w).dim()) == oracle::der_dim(dense, w));
    }
}
