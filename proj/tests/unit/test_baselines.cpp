#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "paretoprec/baselines.hpp"
#include "paretoprec/metrics.hpp"

using namespace paretoprec;
using namespace testing;

TEST_CASE("zero_forcing inverts the channel") {
    const ChannelInstance c = toy_channel();
    const Precoder p = zero_forcing(c.h);
    CHECK(fro_diff(matmul(conj_transpose(c.h), p), CMatrix::identity(3)) <= 1e-10);

    // orthonormal columns: P equals H
    const CMatrix q = thin_svd(random_complex(7, 3, 31)).u;
    CHECK(fro_diff(zero_forcing(q), q) <= 1e-10);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const CMatrix h = gen_gaussian(8, 3, 7000 + seed);
        CHECK(fro_diff(matmul(conj_transpose(h), zero_forcing(h)), CMatrix::identity(3)) <=
              1e-10 * h.fro_norm());
    }

    CMatrix dup(6, 2);
    for (std::size_t i = 0; i < 6; ++i) dup(i, 0) = dup(i, 1) = cxd(1.0, -2.0);
    CHECK_THROWS_AS(zero_forcing(dup), RankDeficient);
}

TEST_CASE("allocate_power reproduces the reference zero-forcing matrix") {
    const ChannelInstance c = toy_channel();
    const Precoder p = allocate_power(zero_forcing(c.h), make_allocation(kZfKappa), c.beta);
    const CMatrix want = zf_best_precoder();
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(p(i, j) - want(i, j)) <= 1e-3);

    const CMatrix g = matmul(conj_transpose(c.h), p);
    const CMatrix gw = zf_best_product();
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(g(k, k) - gw(k, k)) <= 1e-3);
}

TEST_CASE("allocate_power is feasible and max-row tight") {
    CounterRng rng(8);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const CMatrix p0 = random_complex(8, 3, 7700 + seed);
        std::vector<double> beta(8);
        for (double& b : beta) b = 0.5 + rng.next_unit();
        const std::vector<double> kap = random_simplex(3, rng);
        const Precoder p = allocate_power(p0, make_allocation(kap), beta);

        const std::vector<double> pw = row_power(p);
        double worst = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(pw[i] <= beta[i] * (1.0 + 1e-12));
            worst = std::max(worst, pw[i] / beta[i]);
        }
        CHECK(worst == doctest::Approx(1.0).epsilon(1e-12));

        // realized column power fractions equal kappa
        std::vector<double> cp(3, 0.0);
        double tot = 0.0;
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                cp[j] += std::norm(p(i, j));
                tot += std::norm(p(i, j));
            }
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(cp[j] / tot == doctest::Approx(kap[j]).epsilon(1e-9));
    }
}

TEST_CASE("allocate_power with uniform kappa rescales equal-column-norm inputs") {
    // orthonormal columns scaled to equal norms: allocation is a pure rescale
    const CMatrix q = thin_svd(random_complex(6, 3, 33)).u;
    const Precoder p = allocate_power(q, make_allocation({1.0, 1.0, 1.0}),
                                      std::vector<double>(6, 1.0));
    // p is proportional to q
    const cxd ratio = p(0, 0) / q(0, 0);
    for (std::size_t k = 0; k < p.data().size(); ++k)
        CHECK(std::abs(p.data()[k] - ratio * q.data()[k]) <= 1e-12);
}

TEST_CASE("slnr_precoder") {
    const ChannelInstance c = toy_channel();

    // reference operating point
    const Precoder p =
        allocate_power(slnr_precoder(c.h, c.omega), make_allocation(kSlnrKappa), c.beta);
    const LinkMetrics m = link_metrics(c, p);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(std::abs(m.sinr[k] - kSlnrSinr[k]) <= 1e-3);
    CHECK(std::abs(mean_db(m) - kSlnrMeanDb) <= 1e-3);
    const CMatrix gw = slnr_best_product();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(m.g(i, j) - gw(i, j)) <= 1e-3);

    // vanishing noise collapses onto the zero-forcing solution
    const Precoder plow = slnr_precoder(c.h, std::vector<double>(3, 1e-6));
    CHECK(fro_diff(matmul(conj_transpose(c.h), plow), CMatrix::identity(3)) <= 1e-6);
}

TEST_CASE("uniform_kappa equalizes allocated column norms") {
    const Precoder p0 = random_complex(8, 3, 44);
    const PowerAllocation kap = uniform_kappa(p0);
    for (double k : kap.kappa) CHECK(k == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const Precoder p = allocate_power(p0, kap, std::vector<double>(8, 1.0));
    std::vector<double> cn(3, 0.0);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 3; ++j) cn[j] += std::norm(p(i, j));
    CHECK(cn[0] == doctest::Approx(cn[1]).epsilon(1e-12));
    CHECK(cn[1] == doctest::Approx(cn[2]).epsilon(1e-12));

    CHECK_THROWS_AS(uniform_kappa(Precoder(4, 2)), ZeroColumn);
}

TEST_CASE("water filling") {
    const ChannelInstance c = toy_channel();
    const Precoder zf = zero_forcing(c.h);

    // symmetric instance: equal column powers and noises give uniform kappa
    CMatrix sym(4, 2);
    sym(0, 0) = 1.0;
    sym(1, 1) = 1.0;
    const WaterFillResult wsym = water_fill_kappa(sym, {1.0, 1.0}, 2.0);
    CHECK(wsym.kappa.kappa[0] == doctest::Approx(0.5).epsilon(1e-10));

    // an effectively silenced user receives nothing
    const WaterFillResult woff = water_fill_kappa(sym, {1.0, 1e6}, 2.0);
    CHECK(woff.kappa.kappa[1] == doctest::Approx(0.0));

    // toy channel, budget 3: against a simplex grid (coarse here, fine grid
    // runs in the acceptance suite)
    const WaterFillResult w = water_fill_kappa(zf, c.omega, 3.0);
    std::vector<double> cp(3, 0.0);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 3; ++j) cp[j] += std::norm(zf(i, j));

    auto frob_throughput = [&](double k1, double k2, double k3) {
        // column powers proportional to kappa, scaled onto the budget
        const double denom = k1 + k2 + k3;
        if (!(denom > 0.0)) return 0.0;
        const double s = 3.0 / denom;
        double t = 0.0;
        t += std::log1p(s * k1 / (cp[0] * 1.0));
        t += std::log1p(s * k2 / (cp[1] * 1.0));
        t += std::log1p(s * k3 / (cp[2] * 1.0));
        return t;
    };
    const double lib = frob_throughput(w.kappa.kappa[0], w.kappa.kappa[1], w.kappa.kappa[2]);
    double best = 0.0;
    const int steps = 200;
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps - i; ++j) {
            const double k1 = static_cast<double>(i) / steps;
            const double k2 = static_cast<double>(j) / steps;
            best = std::max(best, frob_throughput(k1, k2, 1.0 - k1 - k2));
        }
    CHECK(lib >= best - 1e-4);

    // never worse than the uniform allocation under the same budget
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const CMatrix h = gen_gaussian(8, 3, 8100 + seed);
        const Precoder z = zero_forcing(h);
        std::vector<double> cz(3, 0.0);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 3; ++j) cz[j] += std::norm(z(i, j));
        const WaterFillResult wf = water_fill_kappa(z, {1, 1, 1}, 3.0);
        auto tp = [&](const std::vector<double>& kap) {
            double den = 0.0;
            for (double k : kap) den += k;
            double t = 0.0;
            for (std::size_t j = 0; j < 3; ++j)
                t += std::log1p((3.0 / den) * kap[j] / cz[j]);
            return t;
        };
        CHECK(tp(wf.kappa.kappa) >= tp({1.0 / 3, 1.0 / 3, 1.0 / 3}) - 1e-12);
    }
}

TEST_CASE("argument validation") {
    const ChannelInstance c = toy_channel();
    const Precoder zf = zero_forcing(c.h);
    CHECK_THROWS_AS(water_fill_kappa(zf, c.omega, 0.0), InvalidInput);
    CHECK_THROWS_AS(water_fill_kappa(zf, {1.0, 1.0}, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(allocate_power(zf, make_allocation({0.5, 0.5}), c.beta),
                    DimensionMismatch);
    CHECK_THROWS_AS(allocate_power(Precoder(8, 3), make_allocation({0.4, 0.3, 0.3}), c.beta),
                    ZeroColumn);
    CHECK_THROWS_AS(make_allocation({-0.1, 1.1}), InvalidInput);
    CHECK_THROWS_AS(make_allocation({0.0, 0.0}), InvalidInput);
}

TEST_CASE("global_scale") {
    const ChannelInstance c = toy_channel();
    const Precoder p0 = zero_forcing(c.h);
    const Precoder p = global_scale(p0, c.beta);

    const std::vector<double> pw = row_power(p);
    std::size_t tight = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(pw[i] <= 1.0 + 1e-12);
        if (pw[i] > 1.0 - 1e-9) ++tight;
    }
    CHECK(tight == 1);

    // already tight inputs stay unchanged
    const Precoder again = global_scale(p, c.beta);
    CHECK(fro_diff(again, p) <= 1e-12 * p.fro_norm());

    // doubling the limits scales by sqrt(2)
    const Precoder twice = global_scale(p0, std::vector<double>(8, 2.0));
    CHECK(fro_diff(twice, std::sqrt(2.0) * p) <= 1e-12 * p.fro_norm());

    CHECK_THROWS_AS(global_scale(Precoder(4, 2), std::vector<double>(4, 1.0)), ZeroPrecoder);
}

TEST_CASE("slnr beats zero forcing in high noise on ill-conditioned channels") {
    double slnr_sum = 0.0, zf_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const CMatrix h = gen_svd_decay(12, 4, DecayLaw::InverseSquare, 9000 + seed);
        const ChannelInstance c =
            make_channel(h, noise_from_chi(h, 1.0), default_beta(12, BetaMode::UnitTotal));
        const Precoder pz =
            allocate_power(zero_forcing(h), uniform_kappa(zero_forcing(h)), c.beta);
        const Precoder ps = allocate_power(slnr_precoder(h, c.omega),
                                           uniform_kappa(slnr_precoder(h, c.omega)), c.beta);
        zf_sum += mean_db(link_metrics(c, pz));
        slnr_sum += mean_db(link_metrics(c, ps));
    }
    CHECK(slnr_sum / 40.0 >= zf_sum / 40.0);
}
