#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ltwist/reciprocity.hpp"

#include "ltwist/modarith.hpp"

using namespace ltwist;

TEST_CASE("triple validation") {
    CHECK_NOTHROW(validate_triple(3, 7, 5, false));
    CHECK_NOTHROW(validate_triple(13, 3, 1, true));
    CHECK_THROWS_AS(validate_triple(3, 7, 1, false), std::invalid_argument);
    CHECK_THROWS_AS(validate_triple(9, 7, 5, false), std::invalid_argument);
    CHECK_THROWS_AS(validate_triple(3, 3, 5, false), std::invalid_argument);
    CHECK_THROWS_AS(validate_triple(2, 7, 5, false), std::invalid_argument);
    CHECK_THROWS_WITH(validate_triple(3, 15, 5, false), doctest::Contains("15"));
}

TEST_CASE("c_f at hand-computed points") {
    HeckeEigenform delta = build_form(12);
    PrecisionGuard guard(40);
    // s = 0: lambda(5) sqrt(5) - 2 = 4830/3125 - 2 = -0.4544 exactly.
    Complex c0 = c_f(delta, Complex(), 5, 30);
    CHECK(abs(c0 - Complex(Real("-0.4544"))) < Real("1e-24"));
    // s = 1: 4830/5^6 - 5^{-2} - 1 = 4830/15625 - 1.04.
    Complex c1 = c_f(delta, Complex(Real(1)), 5, 30);
    CHECK(abs(c1 - Complex(Real(4830) / 15625 - Real("1.04"))) < Real("1e-24"));
}

TEST_CASE("the moment resolves the inverse twist correctly") {
    HeckeEigenform delta = build_form(12);
    Complex zero;
    // M(3,7;5): 3^{-1} = 2 mod 5, 2*7 = 14 = 4 mod 5 -> phase 4/5.
    Complex m = modular_symbol_moment(delta, 3, 7, 5, zero, 30);
    Complex direct = evaluate(delta, ReducedPhase{4, 5}, zero, 30);
    PrecisionGuard guard(40);
    CHECK(abs(m - direct) < Real("1e-28"));
    // M(-5,7;3): -5 = 1 mod 3, inverse 1, 1*7 = 1 mod 3 -> phase 1/3.
    Complex m2 = modular_symbol_moment(delta, -5, 7, 3, zero, 30);
    Complex direct2 = evaluate(delta, ReducedPhase{1, 3}, zero, 30);
    CHECK(abs(m2 - direct2) < Real("1e-28"));
    // modulus 1 gives the untwisted value
    CHECK(abs(modular_symbol_moment(delta, 7, 3, 1, zero, 30) -
              evaluate(delta, ReducedPhase{}, zero, 30)) < Real("1e-28"));
    CHECK_THROWS_AS(modular_symbol_moment(delta, 5, 7, 5, zero, 30), std::invalid_argument);
    CHECK_THROWS_AS(modular_symbol_moment(delta, 3, 7, 0, zero, 30), std::invalid_argument);
}

TEST_CASE("three-term identity holds to the working accuracy") {
    struct Case {
        int k;
        std::int64_t p, q, r;
    };
    const Case cases[] = {{12, 3, 7, 5}, {12, 5, 3, 7}, {16, 5, 11, 3}, {22, 7, 3, 11}};
    for (const Case& c : cases) {
        HeckeEigenform f = build_form(c.k);
        VerificationReport report = verify_theorem(f, c.p, c.q, c.r, 30);
        CAPTURE(c.k);
        CAPTURE(c.p);
        PrecisionGuard guard(40);
        CHECK(report.residual < Real("1e-20"));
        CHECK(report.terms.size() == static_cast<std::size_t>(c.k / 2 - 1));
        CHECK(report.mode == "theorem");
    }
}

TEST_CASE("two-term specialization holds to the working accuracy") {
    struct Case {
        int k;
        std::int64_t p, q;
    };
    const Case cases[] = {{12, 3, 7}, {18, 3, 5}, {26, 7, 11}};
    for (const Case& c : cases) {
        HeckeEigenform f = build_form(c.k);
        VerificationReport report = verify_corollary(f, c.p, c.q, 30);
        CAPTURE(c.k);
        PrecisionGuard guard(40);
        CHECK(report.residual < Real("1e-20"));
        CHECK(report.r == 1);
        CHECK(report.mode == "corollary");
    }
}

TEST_CASE("character-side decomposition reproduces the moment") {
    struct Case {
        int k;
        std::int64_t p, r, q;
        int s;
    };
    const Case cases[] = {{12, 3, 7, 5, 0}, {12, 3, 5, 7, 0}, {16, 5, 11, 7, 1}};
    for (const Case& c : cases) {
        HeckeEigenform f = build_form(c.k);
        Complex s(Real(c.s));
        Complex additive = modular_symbol_moment(f, c.p, c.r, c.q, s, 30);
        Complex characters = moment_via_characters(f, c.p, c.r, c.q, s, 30);
        CAPTURE(c.k);
        CAPTURE(c.q);
        PrecisionGuard guard(40);
        CHECK(abs(additive - characters) < Real("1e-20"));
    }
    HeckeEigenform delta = build_form(12);
    CHECK_THROWS_AS(moment_via_characters(delta, 3, 7, 103, Complex(), 30),
                    std::invalid_argument);
    CHECK_THROWS_AS(moment_via_characters(delta, 3, 7, 9, Complex(), 30), std::invalid_argument);
    CHECK_THROWS_AS(moment_via_characters(delta, 5, 7, 5, Complex(), 30), std::invalid_argument);
}

TEST_CASE("a single sign flip destroys the identity") {
    HeckeEigenform delta = build_form(12);
    VerificationReport good = verify_theorem(delta, 3, 7, 5, 30);
    Complex zero;
    // Flip the sign of the third moment on the left-hand side.
    Complex mutated = modular_symbol_moment(delta, 3, 5, 7, zero, 30) -
                      modular_symbol_moment(delta, -7, 5, 3, zero, 30) +
                      modular_symbol_moment(delta, -3, 7, 5, zero, 30);
    PrecisionGuard guard(40);
    CHECK(good.residual < Real("1e-20"));
    CHECK(abs(mutated - good.rhs) > Real("1e-3"));
}

TEST_CASE("report JSON round-trip") {
    HeckeEigenform f = build_form(16);
    VerificationReport report = verify_theorem(f, 3, 7, 5, 30);
    nlohmann::json j = report_to_json(report);
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("inputs").at("mode") == "theorem");
    CHECK(j.at("inputs").at("weight") == 16);
    CHECK(j.at("inputs").at("p") == 3);
    CHECK(j.at("terms").size() == 7);

    VerificationReport back = report_from_json(j);
    PrecisionGuard guard(60);
    CHECK(back.mode == report.mode);
    CHECK(back.weight == report.weight);
    CHECK(back.p == report.p);
    CHECK(back.q == report.q);
    CHECK(back.r == report.r);
    CHECK(back.digits == report.digits);
    CHECK(back.error_budget == report.error_budget);
    CHECK(back.wall_ms == report.wall_ms);
    CHECK(abs(back.lhs - report.lhs) < Real("1e-39"));
    CHECK(abs(back.rhs - report.rhs) < Real("1e-39"));
    CHECK(boost::multiprecision::abs(back.residual - report.residual) < Real("1e-39"));
    REQUIRE(back.terms.size() == report.terms.size());
    for (std::size_t i = 0; i < back.terms.size(); ++i) {
        CHECK(back.terms[i].j == report.terms[i].j);
        // encoding keeps 42 significant digits; terms can be as large as ~1e4
        CHECK(abs(back.terms[i].value - report.terms[i].value) <
              Real("1e-36") * (Real(1) + abs(report.terms[i].value)));
    }

    nlohmann::json bad = j;
    bad["schema_version"] = 2;
    CHECK_THROWS_AS(report_from_json(bad), std::invalid_argument);
}
