#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "htheta/harness.hpp"

using namespace htheta;

TEST_CASE("bundled families build with validated factorizations") {
    FamilySpec surf;
    surf.name = FamilyName::a_n_surface;
    surf.n = 1;
    Family f1 = build_family(surf);
    CHECK(f1.ring->f().to_string() == "x^2 - y*z");
    CHECK(f1.factorizations.size() == 1);
    CHECK(f1.modules.size() == 1);
    CHECK(f1.singularity.isolated_at_origin);
    CHECK(f1.prediction.predicted);  // dim 2

    FamilySpec curve;
    curve.name = FamilyName::a_n_curve;
    curve.n = 1;
    Family f2 = build_family(curve);
    CHECK(f2.ring->f().to_string() == "x^2 - y^2");
    CHECK(f2.factorizations.size() == 2);  // the 2x2 block and the rational split
    CHECK(f2.factorizations[1].size() == 1);
    CHECK(!f2.prediction.predicted);  // dim 1 odd

    FamilySpec curve4;
    curve4.name = FamilyName::a_n_curve;
    curve4.n = 4;
    CHECK(build_family(curve4).factorizations.size() == 4);  // even n: no 1x1 split

    FamilySpec quad;
    quad.name = FamilyName::quadric_3fold;
    Family f3 = build_family(quad);
    CHECK(f3.ring->f().to_string() == "x*y - z*w");
    CHECK(f3.factorizations.size() == 2);
    CHECK(f3.singularity.isolated_at_origin);
    CHECK(f3.singularity.milnor_number == ExtNat::of(1));
    CHECK(!f3.prediction.predicted);  // dim 3 odd

    FamilySpec three;
    three.name = FamilyName::a_n_threefold;
    three.n = 2;
    Family f4 = build_family(three);
    CHECK(f4.ring->f().to_string() == "x^3 - y*z + w^2");
    CHECK(f4.factorizations.size() == 2);
    CHECK(f4.factorizations[0].size() == 4);
    CHECK(f4.singularity.isolated_at_origin);

    FamilySpec bad;
    bad.name = FamilyName::a_n_surface;
    bad.n = 0;
    CHECK_THROWS_AS(build_family(bad), InvalidParameter);
}

TEST_CASE("node sweep reproduces the hand values") {
    SweepConfig config;
    config.families.push_back(node_family_spec());
    SweepResult result = run_sweep(config);
    REQUIRE(result.records.size() == 4);
    // ordered pairs (1,1), (1,2), (2,1), (2,2) of coker(x), coker(y)
    CHECK(result.records[0].theta == -1);
    CHECK(result.records[1].theta == 1);
    CHECK(result.records[2].theta == 1);
    CHECK(result.records[3].theta == -1);
    for (const auto& r : result.records) {
        CHECK(!r.predicted_vanishing);
        CHECK(r.field == "rational");
        CHECK(r.family == "node");
    }
}

TEST_CASE("surface sweep vanishes everywhere") {
    SweepConfig config;
    for (int n = 1; n <= 2; ++n) {
        FamilySpec spec;
        spec.name = FamilyName::a_n_surface;
        spec.n = n;
        config.families.push_back(spec);
    }
    SweepResult result = run_sweep(config);
    CHECK(result.records.size() == 1 + 4);
    for (const auto& r : result.records) {
        CHECK(r.predicted_vanishing);
        CHECK(r.theta == 0);
    }
}

TEST_CASE("determinism hash is stable across runs") {
    SweepConfig config;
    config.families.push_back(node_family_spec());
    FamilySpec spec;
    spec.name = FamilyName::a_n_surface;
    spec.n = 1;
    config.families.push_back(spec);
    SweepResult a = run_sweep(config);
    SweepResult b = run_sweep(config);
    CHECK(a.determinism_hash == b.determinism_hash);
    CHECK(a.records.size() == b.records.size());
}

TEST_CASE("conformance gate") {
    SweepRecord ok;
    ok.predicted_vanishing = true;
    ok.theta = 0;
    CHECK_NOTHROW(check_conformance(ok));
    SweepRecord bad = ok;
    bad.theta = 2;
    CHECK_THROWS_AS(check_conformance(bad), ConformanceViolation);
    CHECK(ConformanceViolation("x").category() == ErrorCategory::conformance);
    bad.predicted_vanishing = false;
    CHECK_NOTHROW(check_conformance(bad));
}

TEST_CASE("csv layout") {
    SweepRecord r;
    r.family = "node";
    r.n = 1;
    r.field = "rational";
    r.pair = "a:b";
    r.theta = 1;
    r.len_even = 1;
    r.len_odd = 0;
    r.stab_index = 0;
    r.predicted_vanishing = false;
    r.millis = 3;
    std::string csv = sweep_csv({r});
    CHECK(csv ==
          "family,n,field,pair,theta,len_even,len_odd,stab_index,predicted_vanishing,"
          "millis\nnode,1,rational,a:b,1,1,0,0,false,3\n");
}

TEST_CASE("biadditivity audit examples") {
    Family node = build_family(node_family_spec());
    const auto& Mx = node.modules[0];  // coker(x) = R/x
    const auto& My = node.modules[1];  // coker(y) = R/y

    BiadditivityResult r1 = biadditivity_audit(Mx, Mx, My);
    CHECK(r1.pass);
    CHECK(r1.theta_sum == 2);

    BiadditivityResult r2 = biadditivity_audit(Mx, My, Mx);
    CHECK(r2.pass);
    CHECK(r2.theta_sum == 0);
    CHECK(r2.theta_first == -1);
    CHECK(r2.theta_second == 1);

    auto zero = RModulePresentation::zero_module(node.ring);
    BiadditivityResult r3 = biadditivity_audit(Mx, zero, My);
    CHECK(r3.pass);
    CHECK(r3.theta_sum == r3.theta_first);
    CHECK(r3.theta_second == 0);
}

TEST_CASE("factorizations revalidate at load in custom families") {
    FamilySpec spec;
    spec.name = FamilyName::custom;
    spec.custom = CustomFamilyData{
        "broken", {"x", "y"}, "x*y", {{{{"x"}}, {{"x"}}}}};  // x*x != x*y
    CHECK_THROWS_AS(build_family(spec), NotAFactorization);
}

TEST_CASE("conformance holds over a prime field with degraded derivatives") {
    // p divides n+1, so df/dx vanishes mod p; the isolatedness test still
    // passes through (f, df) and the theorem still predicts vanishing.
    FamilySpec spec;
    spec.name = FamilyName::a_n_surface;
    spec.n = 6;
    spec.field = CoefficientField::prime_field(7);
    Family fam = build_family(spec);
    CHECK(fam.singularity.isolated_at_origin);
    CHECK(!fam.singularity.milnor_number.is_finite());
    CHECK(!fam.singularity.char_warnings.empty());
    CHECK(fam.prediction.predicted);

    SweepConfig config;
    config.families.push_back(spec);
    SweepResult result = run_sweep(config);  // would abort on nonzero theta
    CHECK(result.records.size() == 36);
    for (const auto& r : result.records) CHECK(r.theta == 0);
}

TEST_CASE("error categories match the exit-code contract") {
    CHECK(SyntaxError(0, "x").category() == ErrorCategory::input);
    CHECK(UnknownVariable(0, "q").category() == ErrorCategory::input);
    CHECK(RingMismatch("x").category() == ErrorCategory::input);
    CHECK(NotAFactorization(0, 0, "x").category() == ErrorCategory::input);
    CHECK(NonConstantUnit(0, 0).category() == ErrorCategory::input);
    CHECK(NoStabilization(4).category() == ErrorCategory::hypothesis);
    CHECK(NotFiniteLength("x").category() == ErrorCategory::hypothesis);
    CHECK(PeriodicityCheckFailed("x").category() == ErrorCategory::hypothesis);
    CHECK(ConformanceViolation("x").category() == ErrorCategory::conformance);
}

TEST_CASE("seeded random symmetry spot checks stay consistent") {
    std::mt19937_64 rng(2718);
    FamilySpec spec;
    spec.name = FamilyName::a_n_surface;
    spec.n = 2;
    Family fam = build_family(spec);
    for (int trial = 0; trial < 3; ++trial) {
        const auto& M = fam.modules[rng() % fam.modules.size()];
        const auto& N = fam.modules[rng() % fam.modules.size()];
        CHECK(theta(M, N).value == theta(N, M).value);
    }
}
