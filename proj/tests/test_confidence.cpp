#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "colme/confidence.hpp"
#include "colme/distributions.hpp"
#include "colme/moments.hpp"

using namespace colme;

TEST_SUITE("confidence") {

TEST_CASE("normal quantiles hit the tabulated z values") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845).epsilon(1e-8));
    CHECK(normal_quantile(0.9875) == doctest::Approx(2.2414027276).epsilon(1e-8));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.5758293035).epsilon(1e-8));
    CHECK(normal_quantile(0.9995) == doctest::Approx(3.2905267315).epsilon(1e-8));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845).epsilon(1e-8));
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
}

TEST_CASE("gaussian bound") {
    CHECK(gaussian_bound(1.0, 1, 0.05) == doctest::Approx(1.96).epsilon(1e-3));
    CHECK(gaussian_bound(1.0, 1, 0.01) == doctest::Approx(2.5758293035).epsilon(1e-8));
    CHECK(gaussian_bound(0.0, 100, 0.05) == 0.0);
    CHECK(gaussian_bound(2.0, 400, 0.05) == doctest::Approx(1.96 * 2.0 / 20.0).epsilon(1e-3));
    CHECK_THROWS_AS(gaussian_bound(1.0, 10, 1.5), std::domain_error);
}

TEST_CASE("laplace bound anchor and monotonicity") {
    CHECK(laplace_bound(1.5, 4265, 0.01) == doctest::Approx(0.1000104328).epsilon(1e-6));
    CHECK(laplace_bound(0.0, 10, 0.01) == 0.0);
    CHECK(laplace_bound(1.0, 1'000'000, 0.01) < laplace_bound(1.0, 1000, 0.01));
    // strictly decreasing on t >= 2 for any delta
    for (const double delta : {0.5, 0.05, 0.01, 0.001}) {
        double prev = laplace_profile(2, delta);
        for (std::int64_t t = 3; t < 4000; t = t * 5 / 4 + 1) {
            const double cur = laplace_profile(t, delta);
            CHECK(cur < prev);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(laplace_bound(1.0, 0, 0.01), std::domain_error);
}

TEST_CASE("fourth moment bound") {
    // t = 1 removes the log factor; kappa=3, delta=0.01 gives (2400)^(1/4)
    CHECK(fourth_moment_bound(1.0, 3.0, 1, 0.01) == doctest::Approx(6.99927).epsilon(1e-4));
    CHECK(fourth_moment_bound(2.0, 3.0, 1, 0.01) ==
          doctest::Approx(2.0 * fourth_moment_bound(1.0, 3.0, 1, 0.01)));
    CHECK(fourth_moment_bound(1.0, 3.0, 10'000, 0.01) > 0.0);
    CHECK_THROWS_AS(fourth_moment_bound(1.0, 0.5, 10, 0.01), std::domain_error);
}

TEST_CASE("kurtosis bound anchors") {
    CHECK(2.0 * kurtosis_bound(502, 3.89) == doctest::Approx(1.7011).epsilon(1e-3));
    CHECK(2.0 * kurtosis_bound(741, 3.89) == doctest::Approx(1.4002).epsilon(1e-3));
    CHECK(kurtosis_bound(4 * 600, 3.89) == doctest::Approx(0.5 * kurtosis_bound(600, 3.89)));
}

TEST_CASE("bounds are homogeneous in sigma and vanish as t grows") {
    for (const double s : {0.3, 1.0, 2.5}) {
        CHECK(gaussian_bound(s, 50, 0.01) == doctest::Approx(s * gaussian_bound(1.0, 50, 0.01)));
        CHECK(laplace_bound(s, 50, 0.01) == doctest::Approx(s * laplace_bound(1.0, 50, 0.01)));
        CHECK(fourth_moment_bound(s, 2.4, 50, 0.01) ==
              doctest::Approx(s * fourth_moment_bound(1.0, 2.4, 50, 0.01)));
    }
    CHECK(laplace_bound(1.0, 100'000'000, 0.01) < 1e-3);
    CHECK(gaussian_bound(1.0, 100'000'000, 0.01) < 1e-3);
    CHECK(fourth_moment_bound(1.0, 3.0, 100'000'000, 0.01) < 0.5);
    CHECK(fourth_moment_bound(1.0, 3.0, 10'000'000'000'000'000, 0.01) < 0.005);
}

TEST_CASE("interval intersection") {
    const Interval a{0.5, 0.5};  // [0, 1]
    CHECK(intersects(a, Interval{1.25, 0.75}));   // [0.5, 2]
    CHECK(intersects(a, Interval{1.5, 0.5}));     // touching at 1
    CHECK_FALSE(intersects(a, Interval{1.5005, 0.4995})); // [1.001, 2]
    // symmetry + reflexivity over random intervals
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const Interval u{rng.gaussian(), std::abs(rng.gaussian())};
        const Interval v{rng.gaussian(), std::abs(rng.gaussian())};
        CHECK(intersects(u, v) == intersects(v, u));
        CHECK(intersects(u, u));
    }
}

TEST_CASE("multifold decision basics") {
    BoundConfig cfg;
    cfg.delta = 0.01;
    const FoldSet folds = FoldSet::all();
    const AgentStats a{1.0, 2.0, 3.0, 2.0};
    CHECK_FALSE(multifold_decision(a, a, cfg, folds, 1000).has_value());

    // mean gap beyond the summed widths, sigma and kurtosis equal
    AgentStats b = a;
    b.mean = a.mean + 2.0 * laplace_bound(2.0, 1000, 0.01) + 0.01;
    auto verdict = multifold_decision(a, b, cfg, folds, 1000);
    REQUIRE(verdict.has_value());
    CHECK(*verdict == Fold::Mean);

    // sigma-center gap with equal means (widths still from sigma_width)
    AgentStats c = a;
    c.sigma_hat = a.sigma_hat + 2.0 * laplace_bound(2.0, 1000, 0.01) + 0.01;
    c.sigma_width = a.sigma_width;
    verdict = multifold_decision(a, c, cfg, folds, 1000);
    REQUIRE(verdict.has_value());
    CHECK(*verdict == Fold::Sigma);

    // kurtosis fold requires activation time
    AgentStats d = a;
    d.kappa_hat = a.kappa_hat + 2.0 * kurtosis_bound(1000, cfg.z_delta_kurtosis) + 0.01;
    CHECK_FALSE(multifold_decision(a, d, cfg, folds, 400).has_value());
    verdict = multifold_decision(a, d, cfg, folds, 1000);
    REQUIRE(verdict.has_value());
    CHECK(*verdict == Fold::Kurtosis);

    // undefined kurtosis never prunes
    AgentStats e = a;
    e.kappa_hat = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(multifold_decision(a, e, cfg, folds, 1000).has_value());
}

TEST_CASE("mean-only fold reproduces the single interval check") {
    BoundConfig cfg;
    Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
        AgentStats a{rng.gaussian(), std::abs(rng.gaussian()) + 0.1, 3.0, 0.0};
        AgentStats b{rng.gaussian(), std::abs(rng.gaussian()) + 0.1, 3.0, 0.0};
        a.sigma_width = a.sigma_hat;
        b.sigma_width = b.sigma_hat;
        const std::int64_t t = 10 + static_cast<std::int64_t>(rng.bounded(5000));
        const Interval ia{a.mean, laplace_bound(a.sigma_width, t, cfg.delta)};
        const Interval ib{b.mean, laplace_bound(b.sigma_width, t, cfg.delta)};
        const auto verdict = multifold_decision(a, b, cfg, FoldSet::of(Fold::Mean), t);
        CHECK(verdict.has_value() == !intersects(ia, ib));
    }
}

TEST_CASE("two agents from the section-V classes split on the sigma fold") {
    // classes (0.9, 1.2) and (1.1, 1.8), gaussian; the sigma fold should
    // trigger first, near its expected separation time of ~417
    const ClassSpec ca{0.9, 1.2, Family::Gaussian, 1, "a"};
    const ClassSpec cb{1.1, 1.8, Family::Gaussian, 1, "b"};
    BoundConfig cfg;
    const FoldSet folds = FoldSet::of(Fold::Mean).with(Fold::Sigma);
    int sigma_first = 0;
    std::vector<double> times;
    const int reps = 40;
    for (int rep = 0; rep < reps; ++rep) {
        Rng ra = Rng::for_agent(900 + rep, 0, 0);
        Rng rb = Rng::for_agent(900 + rep, 0, 1);
        MomentAccumulator aa, ab;
        aa.push(sample(ca, ra));
        ab.push(sample(cb, rb));
        for (std::int64_t t = 1; t <= 2000; ++t) {
            aa.push(sample(ca, ra));
            ab.push(sample(cb, rb));
            const double sa = aa.sigma(), sb = ab.sigma();
            const AgentStats s_a{aa.local_mean(), sa, 3.0, t < 10 ? 10.0 : sa};
            const AgentStats s_b{ab.local_mean(), sb, 3.0, t < 10 ? 10.0 : sb};
            const auto verdict = multifold_decision(s_a, s_b, cfg, folds, t + 1);
            if (verdict) {
                if (*verdict == Fold::Sigma) ++sigma_first;
                times.push_back(static_cast<double>(t));
                break;
            }
        }
    }
    REQUIRE(static_cast<int>(times.size()) == reps);
    CHECK(sigma_first >= reps * 9 / 10);
    double mean_t = 0.0;
    for (const double t : times) mean_t += t;
    mean_t /= static_cast<double>(times.size());
    CHECK(mean_t > 417.0 * 0.65);
    CHECK(mean_t < 417.0 * 1.35);
}

TEST_CASE("laplace bound is conservative at fixed t") {
    // fraction of |mean - mu| > beta over many trials stays below delta
    const double delta = 0.05;
    const double sigma = 1.7;
    const std::int64_t t = 64;
    Rng rng(1234);
    int exceed = 0;
    const int trials = 10'000;
    for (int i = 0; i < trials; ++i) {
        double acc = 0.0;
        for (std::int64_t k = 0; k < t; ++k) acc += sigma * rng.gaussian();
        if (std::abs(acc / static_cast<double>(t)) > laplace_bound(sigma, t, delta)) ++exceed;
    }
    CHECK(static_cast<double>(exceed) / trials < delta);
}

TEST_CASE("kernel weights") {
    CHECK(kernel_weight(0.0, 1.0) == doctest::Approx(1.0));
    // gap equal to one half-width: exp(-1)
    CHECK(kernel_weight(0.5, 1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(kernel_weight(10.0, 1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(kernel_weight(1.0, 0.0), std::domain_error);

    // min combination across folds
    BoundConfig cfg;
    AgentStats a{0.0, 1.0, 3.0, 1.0};
    AgentStats b{0.0, 1.0, 3.0, 1.0};
    const std::int64_t t = 1000;
    const double two_beta = 2.0 * laplace_bound(1.0, t, cfg.delta);
    b.sigma_hat = a.sigma_hat + 0.5 * two_beta; // sigma gap of one half-width: exp(-1)
    const double w = multifold_weight(a, b, cfg, FoldSet::all(), t);
    CHECK(w == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    b.mean = two_beta; // mean fold dominates with exp(-16)
    CHECK(multifold_weight(a, b, cfg, FoldSet::all(), t) ==
          doctest::Approx(std::exp(-16.0)).epsilon(1e-6));
}

TEST_CASE("bound kind strings") {
    CHECK(bound_kind_from_string("laplace") == BoundKind::Laplace);
    CHECK(bound_kind_from_string("gaussian") == BoundKind::GaussianZ);
    CHECK(bound_kind_from_string("fourth_moment") == BoundKind::FourthMoment);
    CHECK(bound_kind_to_string(BoundKind::FourthMoment) == "fourth_moment");
    CHECK_THROWS_AS(bound_kind_from_string("student"), config_error);
}

TEST_CASE("stat halfwidth dispatch") {
    BoundConfig cfg;
    AgentStats s{0.0, 1.5, 2.4, 1.5};
    cfg.kind = BoundKind::GaussianZ;
    CHECK(stat_halfwidth(cfg, s, 100) == doctest::Approx(gaussian_bound(1.5, 100, cfg.delta)));
    cfg.kind = BoundKind::Laplace;
    CHECK(stat_halfwidth(cfg, s, 100) == doctest::Approx(laplace_bound(1.5, 100, cfg.delta)));
    cfg.kind = BoundKind::FourthMoment;
    CHECK(stat_halfwidth(cfg, s, 100) ==
          doctest::Approx(fourth_moment_bound(1.5, 2.4, 100, cfg.delta)));
    // coefficient override replaces the (2(kappa+3)/(delta/2))^(1/4) factor
    cfg.fourth_moment_coefficient = 8.32;
    const double lt = std::log(100.0);
    CHECK(stat_halfwidth(cfg, s, 100) ==
          doctest::Approx(8.32 * 1.5 * std::pow((1.0 + lt * lt) / 100.0, 0.25)));
}

} // TEST_SUITE
