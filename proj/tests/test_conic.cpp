#include <doctest.h>

#include <random>

#include "mkcs/conic.hpp"

using namespace mkcs::conic;

namespace {

Eigen::VectorXd random_vec(int n, std::mt19937& rng) {
    std::normal_distribution<double> dist;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

ConicProgram make_program(int m, int n, const std::vector<Eigen::Triplet<double>>& trips,
                          const Eigen::VectorXd& b, const Eigen::VectorXd& c, ConeSpec cones) {
    ConicProgram p;
    p.A.resize(m, n);
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = b;
    p.c = c;
    p.cones = std::move(cones);
    return p;
}

}  // namespace

TEST_CASE("svec round trip") {
    std::mt19937 rng(3);
    Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(3, 3, [&]() { return double(rng() % 13) - 6; });
    Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    CHECK((svec_unpack(svec_pack(sym), 3) - sym).cwiseAbs().maxCoeff() < 1e-12);
    // inner products preserved
    Eigen::MatrixXd b2 = Eigen::MatrixXd::Random(3, 3);
    Eigen::MatrixXd symb = 0.5 * (b2 + b2.transpose());
    CHECK(svec_pack(sym).dot(svec_pack(symb)) ==
          doctest::Approx((sym * symb).trace()).epsilon(1e-10));
}

TEST_CASE("cone projections") {
    ConeSpec nonneg{{ConeSpec::nonneg(2)}};
    Eigen::VectorXd v(2);
    v << -1, 2;
    Eigen::VectorXd pv = project_cone(v, nonneg);
    CHECK(pv[0] == 0.0);
    CHECK(pv[1] == 2.0);

    // psd: [[0,1],[1,0]] -> [[.5,.5],[.5,.5]]
    ConeSpec psd{{ConeSpec::psd(2)}};
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 1, 0;
    Eigen::MatrixXd proj = svec_unpack(project_cone(svec_pack(m), psd), 2);
    CHECK(proj(0, 0) == doctest::Approx(0.5));
    CHECK(proj(0, 1) == doctest::Approx(0.5));
    CHECK(proj(1, 1) == doctest::Approx(0.5));

    // second order polar case
    ConeSpec soc{{ConeSpec::second_order(3)}};
    Eigen::VectorXd t(3);
    t << -6, 3, 4;
    CHECK(project_cone(t, soc).norm() == 0.0);
}

TEST_CASE("projection idempotence, optimality and Moreau") {
    std::mt19937 rng(17);
    std::vector<ConeSpec> specs = {
        ConeSpec{{ConeSpec::zero(4)}},
        ConeSpec{{ConeSpec::nonneg(6)}},
        ConeSpec{{ConeSpec::second_order(5)}},
        ConeSpec{{ConeSpec::psd(4)}},
    };
    for (const auto& spec : specs) {
        const int dim = spec.total_dim();
        for (int trial = 0; trial < 25; ++trial) {
            Eigen::VectorXd v = 3.0 * random_vec(dim, rng);
            Eigen::VectorXd pv = project_cone(v, spec);
            CHECK((project_cone(pv, spec) - pv).norm() < 1e-10);

            // optimality: no feasible point is closer
            for (int probe = 0; probe < 4; ++probe) {
                Eigen::VectorXd w = project_cone(random_vec(dim, rng) * 2.0, spec);
                CHECK((v - pv).norm() <= (v - w).norm() + 1e-9);
            }

            // Moreau for the self-dual blocks: v = proj_K(v) - proj_K(-v)
            if (spec.blocks[0].type == ConeType::SecondOrder ||
                spec.blocks[0].type == ConeType::Psd) {
                Eigen::VectorXd decomp = pv - project_cone(-v, spec);
                CHECK((decomp - v).norm() < 1e-10);
            }
        }
    }
}

TEST_CASE("tiny linear program") {
    // min x s.t. x - s = 1, s >= 0  (so -x + s = -1 in Ax + s = b form)
    auto p = make_program(1, 1, {{0, 0, -1.0}}, Eigen::VectorXd::Constant(1, -1.0),
                          Eigen::VectorXd::Constant(1, 1.0), ConeSpec{{ConeSpec::nonneg(1)}});
    auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("theta of the edgeless 2-vertex graph") {
    // max <J,Z> s.t. tr Z = 1, Z psd(2): variables z11, z21(scaled), z22
    std::vector<Eigen::Triplet<double>> trips;
    const double s2 = std::sqrt(2.0);
    trips.emplace_back(0, 0, 1.0);
    trips.emplace_back(0, 2, 1.0);
    trips.emplace_back(1, 0, -1.0);
    trips.emplace_back(2, 1, -1.0);
    trips.emplace_back(3, 2, -1.0);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(4);
    b[0] = 1.0;
    Eigen::VectorXd c(3);
    c << -1.0, -s2, -1.0;  // -<J,Z> in svec coordinates
    auto p = make_program(4, 3, trips, b, c, ConeSpec{{ConeSpec::zero(1), ConeSpec::psd(2)}});
    auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(-r.objective == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("second order norm minimization") {
    // min t s.t. (t, 3, 4) in SOC
    std::vector<Eigen::Triplet<double>> trips{{0, 0, -1.0}};
    Eigen::VectorXd b(3);
    b << 0, 3, 4;
    Eigen::VectorXd c = Eigen::VectorXd::Constant(1, 1.0);
    auto p = make_program(3, 1, trips, b, c, ConeSpec{{ConeSpec::second_order(3)}});
    auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective == doctest::Approx(5.0).epsilon(1e-5));
}

TEST_CASE("optimal results satisfy the residual contract") {
    // a mixed problem: min c'x with zero + nonneg + psd blocks
    std::mt19937 rng(5);
    const double s2 = std::sqrt(2.0);
    // variables: symmetric 3x3 matrix entries (svec order), max <J,Z>, tr Z = 1,
    // Z psd, Z >= 0 entrywise on off-diagonals
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(1 + 3 + 6);
    // zero row: trace
    trips.emplace_back(0, 0, 1.0);
    trips.emplace_back(0, 3, 1.0);
    trips.emplace_back(0, 5, 1.0);
    b[0] = 1.0;
    // nonneg rows on the three off-diagonal vars (svec slots 1,2,4)
    trips.emplace_back(1, 1, -1.0);
    trips.emplace_back(2, 2, -1.0);
    trips.emplace_back(3, 4, -1.0);
    // psd block
    for (int slot = 0; slot < 6; ++slot) trips.emplace_back(4 + slot, slot, -1.0);
    Eigen::VectorXd c(6);
    c << -1, -s2, -s2, -1, -s2, -1;
    auto p = make_program(10, 6, trips, b, c,
                          ConeSpec{{ConeSpec::zero(1), ConeSpec::nonneg(3), ConeSpec::psd(3)}});
    SolveOptions opts;
    opts.eps = 1e-8;
    auto r = solve(p, opts);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(-r.objective == doctest::Approx(3.0).epsilon(1e-5));  // theta of edgeless K3

    CHECK((p.A * r.x + r.s - p.b).norm() / (1.0 + p.b.norm()) <= opts.eps);
    CHECK((p.A.transpose() * r.y + p.c).norm() / (1.0 + p.c.norm()) <= opts.eps);
    const double cx = p.c.dot(r.x), by = p.b.dot(r.y);
    CHECK(std::abs(cx + by) / (1.0 + std::abs(cx) + std::abs(by)) <= opts.eps);
    CHECK((project_cone(r.s, p.cones) - r.s).norm() <= 1e-8);
}

TEST_CASE("determinism: identical runs produce identical iterates") {
    std::vector<Eigen::Triplet<double>> trips{{0, 0, -1.0}};
    Eigen::VectorXd b(3);
    b << 0, 3, 4;
    Eigen::VectorXd c = Eigen::VectorXd::Constant(1, 1.0);
    auto p = make_program(3, 1, trips, b, c, ConeSpec{{ConeSpec::second_order(3)}});
    auto r1 = solve(p);
    auto r2 = solve(p);
    CHECK(r1.iterations == r2.iterations);
    CHECK(r1.x == r2.x);
    CHECK(r1.y == r2.y);
}

TEST_CASE("extract psd block and scaling layout") {
    // slack of a Psd(2) block fixed to (1, sqrt(2)*0.5, 1) by zero rows
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < 3; ++i) trips.emplace_back(i, i, 1.0);
    Eigen::VectorXd b(6);
    b << 1.0, std::sqrt(2.0) * 0.5, 1.0, 1.0, std::sqrt(2.0) * 0.5, 1.0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(3);
    auto p = make_program(6, 3, trips, b, c, ConeSpec{{ConeSpec::zero(3), ConeSpec::psd(2)}});
    // x = first three b entries makes the zero block tight and the psd slack b'
    auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    Eigen::MatrixXd z = extract_psd_block(p, r, 1);
    CHECK(z(0, 0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(z(0, 1) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK_THROWS_AS(extract_psd_block(p, r, 0), std::invalid_argument);
    CHECK_THROWS_AS(extract_psd_block(p, r, 7), std::out_of_range);
}

TEST_CASE("structural dimension mismatch throws") {
    ConicProgram p;
    p.A.resize(2, 1);
    p.b = Eigen::VectorXd::Zero(3);
    p.c = Eigen::VectorXd::Zero(1);
    p.cones.blocks = {ConeSpec::nonneg(2)};
    CHECK_THROWS_AS(solve(p), std::invalid_argument);
}

TEST_CASE("program json dump") {
    std::vector<Eigen::Triplet<double>> trips{{0, 0, 1.0}};
    auto p = make_program(1, 1, trips, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1),
                          ConeSpec{{ConeSpec::nonneg(1)}});
    auto s = program_to_json(p);
    CHECK(s.find("\"nonneg\"") != std::string::npos);
    CHECK(s.find("\"nvars\":1") != std::string::npos);
}
