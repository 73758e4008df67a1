#include "mkcs/chrom.hpp"

#include <cmath>
#include <stdexcept>

#include "mkcs/graph.hpp"

namespace mkcs::chrom {

double default_margin(double eps, int n) { return std::max(0.01, 10.0 * eps * n); }

PsiResult psi_lower_bound(int n, const std::function<double(int)>& upper_bound, int k_max,
                          double margin, const std::string& model_name) {
    if (k_max < 1) throw std::invalid_argument("psi: k_max must be >= 1");
    PsiResult res;
    res.model = model_name;
    int last_below = 0;
    for (int k = 1; k <= k_max; ++k) {
        double bound = upper_bound(k);
        PsiEntry e{k, bound, Verdict::AtLeastN};
        if (bound <= n - margin)
            e.verdict = Verdict::BelowN;
        else if (bound < n)
            e.verdict = Verdict::Inconclusive;
        res.trace.push_back(e);
        if (e.verdict != Verdict::BelowN) break;
        last_below = k;
    }
    res.psi = last_below + 1;
    return res;
}

long long kneser_alpha_lb(int v, int d, int k) {
    if (v < 2 * d || k < 1) throw std::invalid_argument("kneser_alpha_lb: need v >= 2d, k >= 1");
    long long sum = 0;
    for (int i = 1; i <= k; ++i) sum += static_cast<long long>(binomial_u64(v - i, d - 1));
    return sum;
}

long long kneser_alpha2_ub(int v, int d) {
    const double gold = 0.5 * (3.0 + std::sqrt(5.0));
    if (static_cast<double>(v) < gold * d)
        throw std::invalid_argument("kneser_alpha2_ub: outside the validity range v >= (3+sqrt5)d/2");
    return static_cast<long long>(binomial_u64(v - 1, d - 1) + binomial_u64(v - 2, d - 1));
}

}  // namespace mkcs::chrom
