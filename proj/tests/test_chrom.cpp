#include <doctest.h>

#include "mkcs/chrom.hpp"
#include "mkcs/heur.hpp"
#include "mkcs/relax.hpp"

using namespace mkcs;
using namespace mkcs::chrom;

namespace {

double solve_value(const Graph& g, relax::BoundModel model, int k) {
    auto sb = relax::solve_bound(g, model, k);
    REQUIRE(sb.result.status == conic::SolveStatus::Optimal);
    return sb.value;
}

}  // namespace

TEST_CASE("psi with the exact oracle on K_3") {
    Graph k3 = complete_graph(3);
    auto eval = [&](int k) { return double(heur::exact_alpha_k(k3, k).value); };
    auto res = psi_lower_bound(3, eval, 4, 0.01, "exact");
    CHECK(res.psi == 3);
    REQUIRE(res.trace.size() == 3);
    CHECK(res.trace[0].bound == doctest::Approx(1.0));
    CHECK(res.trace[0].verdict == Verdict::BelowN);
    CHECK(res.trace[1].bound == doctest::Approx(2.0));
    CHECK(res.trace[2].verdict == Verdict::AtLeastN);
}

TEST_CASE("psi never exceeds the true chromatic number on the tiny suite") {
    struct Case {
        Graph g;
        int chi;
    };
    const Case cases[] = {
        {complete_graph(4), 4},
        {cycle_graph(5), 3},
        {cycle_graph(6), 2},
        {kneser_graph(5, 2), 3},
        {mycielski_graph(4), 5},
    };
    heur::ExactCaps caps{23, 4};
    for (const auto& c : cases) {
        auto eval = [&](int k) { return double(heur::exact_alpha_k(c.g, k, caps).value); };
        auto res = psi_lower_bound(c.g.n(), eval, 4, 0.01, "exact");
        CAPTURE(c.g.n());
        CHECK(res.psi <= c.chi);
    }
}

TEST_CASE("psi trace is contiguous and the margin band is conservative") {
    // synthetic bounds: n=10; k=1 -> 5 (below), k=2 -> 9.995 (inside the band)
    auto eval = [](int k) { return k == 1 ? 5.0 : 9.995; };
    auto res = psi_lower_bound(10, eval, 5, 0.01, "synthetic");
    CHECK(res.psi == 2);
    REQUIRE(res.trace.size() == 2);
    CHECK(res.trace[1].verdict == Verdict::Inconclusive);

    // all bounds >= n: psi = 1
    auto res1 = psi_lower_bound(4, [](int) { return 4.0; }, 3, 0.01);
    CHECK(res1.psi == 1);

    CHECK_THROWS_AS(psi_lower_bound(4, [](int) { return 0.0; }, 0, 0.01), std::invalid_argument);
}

TEST_CASE("dominating models give no weaker psi") {
    // theta1 <= theta3 pointwise, so psi via theta1 >= psi via theta3
    for (const Graph& g : {kneser_graph(5, 2), queen_graph(3, 3), mycielski_graph(4)}) {
        auto via = [&](relax::BoundModel m) {
            auto eval = [&](int k) { return solve_value(g, m, k); };
            return psi_lower_bound(g.n(), eval, 4, 0.01).psi;
        };
        CHECK(via(relax::BoundModel::Theta1) >= via(relax::BoundModel::Theta3));
    }
}

TEST_CASE("kneser closed-form bounds") {
    CHECK(kneser_alpha_lb(10, 2, 2) == 17);
    CHECK(kneser_alpha_lb(10, 2, 3) == 24);
    CHECK(kneser_alpha_lb(10, 2, 1) == 9);   // Erdos-Ko-Rado term C(9,1)
    CHECK(kneser_alpha_lb(15, 3, 1) == 91);  // C(14,2)
    CHECK_THROWS_AS(kneser_alpha_lb(3, 2, 1), std::invalid_argument);

    CHECK(kneser_alpha2_ub(15, 3) == 169);
    CHECK(kneser_alpha2_ub(16, 3) == 196);
    CHECK(kneser_alpha2_ub(10, 2) == 17);  // coincides with the lower bound at k=2
    CHECK_THROWS_AS(kneser_alpha2_ub(5, 2), std::invalid_argument);
}

TEST_CASE("default margin") {
    CHECK(default_margin(1e-6, 100) == doctest::Approx(0.01));
    CHECK(default_margin(1e-4, 100) == doctest::Approx(0.1));
}
