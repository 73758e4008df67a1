#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mkcs::chrom {

enum class Verdict { BelowN, AtLeastN, Inconclusive };

struct PsiEntry {
    int k = 0;
    double bound = 0.0;
    Verdict verdict = Verdict::AtLeastN;
};

struct PsiResult {
    int psi = 1;
    std::vector<PsiEntry> trace;  // contiguous k = 1, 2, ...
    std::string model;
};

double default_margin(double eps, int n);

/// Evaluates upper_bound(k) for k = 1, 2, ... until the bound stops being
/// < n (with `margin` guarding solver noise) or k_max is reached;
/// psi = largest k with verdict "< n", plus one. A bound inside the margin
/// band counts conservatively as ">= n" and stops escalation.
PsiResult psi_lower_bound(int n, const std::function<double(int)>& upper_bound, int k_max,
                          double margin, const std::string& model_name = "");

/// alpha_k(K(v,d)) >= sum_{i=1..k} C(v-i, d-1); exact integer.
long long kneser_alpha_lb(int v, int d, int k);

/// alpha_2(K(v,d)) <= C(v-1,d-1) + C(v-2,d-1), valid for v >= (3+sqrt 5)d/2.
long long kneser_alpha2_ub(int v, int d);

}  // namespace mkcs::chrom
