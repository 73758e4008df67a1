#include <doctest.h>

#include <cmath>

#include "mkcs/relax.hpp"

using namespace mkcs;
using namespace mkcs::relax;

namespace {

double value_of(const BuiltModel& m, double eps = 0.0) {
    BoundOptions opts;
    opts.eps = eps;
    auto sb = solve_model(m, opts);
    REQUIRE(sb.result.status == conic::SolveStatus::Optimal);
    return sb.value;
}

Graph petersen() { return kneser_graph(5, 2); }

// direct enumeration oracle: alpha_k by labeling vertices with {0..k}
int alpha_k_enum(const Graph& g, int k) {
    const int n = g.n();
    int best = 0;
    std::vector<int> label(n, 0);
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= (k + 1);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        int count = 0;
        for (int i = 0; i < n; ++i) {
            label[i] = int(c % (k + 1));
            c /= (k + 1);
            count += label[i] != 0;
        }
        if (count <= best) continue;
        bool ok = true;
        for (auto [i, j] : g.edges())
            if (label[i] != 0 && label[i] == label[j]) { ok = false; break; }
        if (ok) best = count;
    }
    return best;
}

}  // namespace

TEST_CASE("generalized theta on reference graphs") {
    Graph p = petersen();
    CHECK(value_of(build_theta_k(p, 1)) == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(value_of(build_theta_prime_k(p, 1)) == doctest::Approx(4.0).epsilon(1e-4));

    Graph c5 = cycle_graph(5);
    CHECK(value_of(build_theta_prime_k(c5, 1)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));

    // edgeless graph: bound = n for every k <= n-1
    Graph e5(5, {});
    CHECK(value_of(build_theta_k(e5, 2)) == doctest::Approx(5.0).epsilon(1e-4));

    // theta'(K_3) = 1
    CHECK(value_of(build_theta_prime_k(complete_graph(3), 1)) == doctest::Approx(1.0).epsilon(1e-4));

    CHECK_THROWS_AS(build_theta_k(p, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_theta_k(p, 10), std::invalid_argument);
}

TEST_CASE("k=1 theta model without the I-Z block matches the full model") {
    for (const Graph& g : {petersen(), cycle_graph(7), queen_graph(3, 3)}) {
        double reduced = value_of(build_theta_k(g, 1));
        double full = value_of(build_theta_k_full(g, 1));
        CHECK(reduced == doctest::Approx(full).epsilon(1e-4));
    }
}

TEST_CASE("petersen discriminates theta1 from theta2") {
    Graph p = petersen();
    CHECK(value_of(build_theta1(p, 2)) == doctest::Approx(7.5).epsilon(2e-4));
    CHECK(value_of(build_theta2(p, 2)) == doctest::Approx(8.0).epsilon(2e-4));
}

TEST_CASE("theta3 reference values") {
    Graph p = petersen();
    // k=1 theta3 equals the Schrijver theta'
    double schrijver = value_of(build_theta_prime_k(p, 1));
    CHECK(value_of(build_theta3(p, 1)) == doctest::Approx(schrijver).epsilon(1e-4));
    CHECK(value_of(build_theta3(Graph(5, {}), 2)) == doctest::Approx(5.0).epsilon(1e-4));
}

TEST_CASE("bound chain on small graphs") {
    const double tol = 1e-3;
    for (const Graph& g : {petersen(), cycle_graph(5), queen_graph(3, 3), mycielski_graph(4)}) {
        for (int k = 1; k <= 3; ++k) {
            CAPTURE(g.n());
            CAPTURE(k);
            if (k > g.n() - 1) continue;
            double t1 = value_of(build_theta1(g, k));
            double t2 = value_of(build_theta2(g, k));
            double t3 = value_of(build_theta3(g, k));
            double th = value_of(build_theta_k(g, k));
            double tp = value_of(build_theta_prime_k(g, k));
            double scale = 1.0 + std::abs(t3);
            CHECK(t1 <= t2 + tol * scale);
            CHECK(t2 <= t3 + tol * scale);
            CHECK(tp <= th + tol * scale);
            if (g.n() <= 11) {
                int ak = alpha_k_enum(g, k);
                CHECK(ak <= t1 + tol * scale);
                CHECK(ak <= tp + tol * scale);
            }
        }
    }
}

TEST_CASE("full vector lifting equals theta2 / theta1 on petersen") {
    Graph p = petersen();
    CHECK(value_of(build_vector_lifting_full(p, 2, false)) == doctest::Approx(8.0).epsilon(3e-4));
    CHECK(value_of(build_vector_lifting_full(p, 2, true)) == doctest::Approx(7.5).epsilon(3e-4));
    // and at k=1 both reduce to theta'
    Graph c5 = cycle_graph(5);
    CHECK(value_of(build_vector_lifting_full(c5, 1, false)) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));
    CHECK_THROWS_AS(build_vector_lifting_full(p, 7, false), std::invalid_argument);
}

TEST_CASE("full matrix lifting equals theta3") {
    for (const Graph& g : {petersen(), cycle_graph(5), queen_graph(3, 3)}) {
        for (int k : {1, 2}) {
            double full = value_of(build_matrix_lifting_full(g, k));
            double red = value_of(build_theta3(g, k));
            CHECK(full == doctest::Approx(red).epsilon(1e-3));
        }
    }
    CHECK(value_of(build_matrix_lifting_full(cycle_graph(5), 1)) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));
    // alpha_2(K_4) = 2 lower-bounds the lifting value
    Graph k4 = complete_graph(4);
    CHECK(value_of(build_matrix_lifting_full(k4, 2)) >= 2.0 - 1e-4);
    CHECK_THROWS_AS(build_matrix_lifting_full(kneser_graph(6, 2), 70), std::invalid_argument);
}

TEST_CASE("product identity theta2 = theta'(K_k box G)") {
    for (const Graph& g : {petersen(), cycle_graph(5), complete_graph(2)}) {
        for (int k : {2, 3}) {
            if (g.n() * k > 60) continue;
            double lhs = value_of(build_theta2(g, k));
            double rhs = value_of(build_theta_prime_product(g, k));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-3));
        }
    }
    // single vertex: theta'(K_3) = 1
    CHECK(value_of(build_theta_prime_product(Graph(1, {}), 3)) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("vertex-transitive redundancy of the second RLT family") {
    for (const Graph& g : {petersen(), hamming_graph(3, 2, 1)}) {
        for (int k : {2, 3}) {
            double plain = value_of(build_theta2(g, k));
            double with_b = value_of(build_theta2_with_family_b(g, k));
            CHECK(with_b == doctest::Approx(plain).epsilon(1.5e-3));
        }
    }
}

TEST_CASE("fan eigenvalue bound") {
    CHECK(fan_upper_bound(Graph(4, {}), 1, 0.0) == doctest::Approx(4.0));
    CHECK(fan_upper_bound(complete_graph(2), 1, 1.0) == doctest::Approx(2.0));
    Graph p = petersen();
    double theta1v = value_of(build_theta_k(p, 1));
    for (double t = -3.0; t <= 1.0; t += 0.5)
        CHECK(fan_upper_bound(p, 1, t) >= theta1v - 1e-4);
    CHECK_THROWS_AS(fan_upper_bound(p, 11, 0.0), std::invalid_argument);
}

TEST_CASE("monotonicity of theta_k in k") {
    Graph p = petersen();
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
        double v = value_of(build_theta_k(p, k));
        CHECK(v >= prev - 1e-5);
        CHECK(v <= p.n() + 1e-5);
        prev = v;
    }
}

TEST_CASE("bqp separation") {
    SUBCASE("origin point has no violated cuts") {
        ReducedPoint pt;
        pt.k = 2;
        pt.Z = Eigen::MatrixXd::Zero(5, 5);
        pt.X = Eigen::MatrixXd::Zero(5, 5);
        CHECK(separate_bqp(pt, 100).empty());
    }
    SUBCASE("identity diagonal violates family 32 by 3 - k") {
        ReducedPoint pt;
        pt.k = 2;
        pt.Z = Eigen::MatrixXd::Identity(4, 4);
        pt.X = Eigen::MatrixXd::Zero(4, 4);
        auto cuts = separate_bqp(pt, 1000);
        REQUIRE(!cuts.empty());
        CHECK(cuts.front().family == 32);
        CHECK(cuts.front().violation == doctest::Approx(1.0));
        // for k = 2 the all-X variants must be skipped
        for (const auto& c : cuts) CHECK(c.variant != 0);
        // deterministic ordering: ties broken lexicographically
        CHECK(cuts[0].variant == 1);
        CHECK(cuts[0].i == 0);
        CHECK(cuts[0].j == 1);
        CHECK(cuts[0].p == 2);
    }
    SUBCASE("max_cuts = 0 gives an empty list") {
        ReducedPoint pt;
        pt.k = 3;
        pt.Z = Eigen::MatrixXd::Identity(4, 4);
        pt.X = Eigen::MatrixXd::Zero(4, 4);
        CHECK(separate_bqp(pt, 0).empty());
    }
}

TEST_CASE("bqp cuts are violated by the incumbent and valid for assignments") {
    // solve theta2 (no RLT) so that violated cuts exist, then check validity
    // against every 0/1 assignment with row sums <= 1
    for (const Graph& g : {cycle_graph(5), complete_graph(4)}) {
        for (int k : {2, 3}) {
            BuiltModel m = build_theta2(g, k);
            auto sb = solve_model(m);
            auto pt = reduced_point(m, sb.result);
            auto cuts = separate_bqp(pt, 50);
            const int n = g.n();
            for (const auto& c : cuts) CHECK(c.violation > 1e-4);
            long long total = 1;
            for (int i = 0; i < n; ++i) total *= (k + 1);
            for (long long code = 0; code < total; ++code) {
                long long rest = code;
                Eigen::MatrixXd X01 = Eigen::MatrixXd::Zero(n, k);
                for (int i = 0; i < n; ++i) {
                    int lab = int(rest % (k + 1));
                    rest /= (k + 1);
                    if (lab > 0) X01(i, lab - 1) = 1.0;
                }
                Eigen::MatrixXd Z = X01 * X01.transpose();
                Eigen::MatrixXd Xr = Eigen::MatrixXd::Zero(n, n);
                for (int r = 0; r < k; ++r)
                    for (int l = 0; l < k; ++l)
                        if (r != l) Xr += X01.col(r) * X01.col(l).transpose();
                Xr /= (k - 1);
                ReducedPoint ip{Z, Xr, k};
                for (const auto& c : cuts) {
                    double lhs_rhs;
                    auto& Zm = ip.Z;
                    auto& Xm = ip.X;
                    if (c.family == 31) {
                        double ij = (c.variant == 1 || c.variant == 2) ? Zm(c.i, c.j) : Xm(c.i, c.j);
                        double ipt = (c.variant == 1 || c.variant == 4) ? Zm(c.i, c.p) : Xm(c.i, c.p);
                        double jpt = (c.variant == 1 || c.variant == 3) ? Zm(c.j, c.p) : Xm(c.j, c.p);
                        lhs_rhs = ipt + jpt - Zm(c.p, c.p) - ij;
                    } else {
                        double ij = (c.variant == 1 || c.variant == 2) ? Zm(c.i, c.j) : Xm(c.i, c.j);
                        double ipt = (c.variant == 1 || c.variant == 3) ? Zm(c.i, c.p) : Xm(c.i, c.p);
                        double jpt = (c.variant == 1 || c.variant == 4) ? Zm(c.j, c.p) : Xm(c.j, c.p);
                        lhs_rhs = Zm(c.i, c.i) + Zm(c.j, c.j) + Zm(c.p, c.p) - ij - ipt - jpt - k;
                    }
                    CHECK(lhs_rhs <= 1e-9);  // valid (not violated) at integral points
                }
            }
        }
    }
}

TEST_CASE("theta1 with cutting planes on small graphs") {
    Graph c5 = cycle_graph(5);
    auto outc = solve_theta1_bqp(c5, 2, 4);
    double plain = value_of(build_theta1(c5, 2));
    CHECK(outc.value <= plain + 1e-3);
    CHECK(outc.value >= 4.0 - 1e-3);  // alpha_2(C_5) = 4
    CHECK(outc.rounds.size() >= 1);

    // k=1 falls back to plain theta1
    auto k1 = solve_theta1_bqp(c5, 1, 4);
    CHECK(k1.value == doctest::Approx(value_of(build_theta1(c5, 1))).epsilon(1e-3));
    CHECK(k1.total_cuts == 0);
}

TEST_CASE("max-k-cut and equipartition models") {
    Graph k2 = complete_graph(2);
    CHECK(value_of(build_maxkcut_m(k2, 2)) == doctest::Approx(1.0).epsilon(1e-4));

    Graph c4 = cycle_graph(4);
    CHECK(value_of(build_equipartition_m(c4, 2)) == doctest::Approx(2.0).epsilon(1e-3));

    Graph c5 = cycle_graph(5);
    CHECK(value_of(build_maxkcut_m(c5, 2)) >= 4.0 - 1e-4);  // brute-force max cut is 4

    CHECK_THROWS_AS(build_equipartition_m(c5, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_maxkcut_m(c5, 1), std::invalid_argument);

    // matrix and vector lifting forms agree
    for (const Graph& g : {cycle_graph(4), complete_graph(4), queen_graph(2, 3), petersen()}) {
        for (int k : {2, 3}) {
            CAPTURE(g.n());
            CAPTURE(k);
            double m = value_of(build_maxkcut_m(g, k));
            double v = value_of(build_maxkcut_v(g, k));
            CHECK(m == doctest::Approx(v).epsilon(1e-3));
            if (g.n() % k == 0) {
                double em = value_of(build_equipartition_m(g, k));
                double ev = value_of(build_equipartition_v(g, k));
                CHECK(em == doctest::Approx(ev).epsilon(1e-3));
            }
        }
    }
}

TEST_CASE("reported point satisfies the model invariants") {
    Graph p = petersen();
    BuiltModel m = build_theta1(p, 2);
    auto sb = solve_model(m);
    auto pt = reduced_point(m, sb.result);
    for (auto [i, j] : p.edges()) CHECK(std::abs(pt.Z(i, j)) < 1e-7);
    for (int i = 0; i < p.n(); ++i) CHECK(pt.X(i, i) == 0.0);
    CHECK(pt.Z.minCoeff() > -1e-6);
    CHECK(pt.X.minCoeff() > -1e-6);
}
