#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mkcs/conic.hpp"

namespace mkcs::scheme {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(int a, int b);

/// K_i(u) = sum_j (-1)^j (q-1)^{i-j} C(u,j) C(d-u, i-j); exact integers.
BigInt krawtchouk(int d, int q, int i, int u);

/// E_i(u) = sum_j (-1)^j C(u,j) C(d-u, i-j) C(v-d-u, i-j); exact integers.
BigInt eberlein(int v, int d, int i, int u);

enum class SchemeFamily { Hamming, Johnson };

/// Character table of a Hamming or Johnson association scheme with the
/// adjacency selector S (classes forming the graph's edge set). Class i of
/// the Johnson scheme is "intersection size d-i", so J(v,d,q) selects class
/// d-q; Hamming class i is "Hamming distance i".
struct SchemeSpec {
    SchemeFamily family;
    int p1 = 0, p2 = 0;  // Hamming: (d, q); Johnson: (v, d)
    long long n = 0;
    int classes = 0;  // = d
    std::vector<std::vector<BigInt>> P;     // (d+1)x(d+1), P[i][u]
    std::vector<BigInt> valencies;          // k_i = P[i][0]
    std::vector<BigInt> multiplicities;     // m_u
    std::vector<int> edge_classes;          // S, each in [1, d]
    long long edge_count() const;           // n * sum_{s in S} k_s / 2
    double density_percent() const;
};

SchemeSpec hamming_scheme(int d, int q, std::vector<int> edge_classes);
SchemeSpec johnson_scheme(int v, int d, std::vector<int> edge_classes);

/// Maps "family:hamming:6,2,4", "family:hamming_le:12,2,7",
/// "family:johnson:12,7,3", "family:kneser:10,2", "family:petersen" and their
/// "complement:" wrappers onto a scheme with the right adjacency selector.
/// Johnson parameters with d > v/2 are remapped through the complement
/// identity (v,d,q) -> (v, v-d, v-2d+q) before table construction.
SchemeSpec scheme_for_family_spec(const std::string& spec);
bool family_spec_has_scheme(const std::string& spec);

enum class ReducedModel { ThetaRed, ThetaPrimeRed, Theta3Red, Theta2Red, Theta1Red };

struct ReducedBound {
    double value = 0.0;
    Eigen::VectorXd z, x;  // certificate coefficients over classes 0..d
    conic::SolveResult result;
};

conic::SolveOptions default_scheme_options();

/// Variable order: z entries for the free classes, then x entries (when the
/// model has them). Exposed for debugging and cross-checks.
struct ReducedProgram {
    conic::ConicProgram prog;
    std::vector<int> z_var, x_var;  // index per class, -1 where fixed
    double objective_sign = -1.0;   // value = sign*optimum + constant
    double constant = 0.0;
};
ReducedProgram build_reduced_program(const SchemeSpec& spec, ReducedModel model, int k);

/// Collapsed (d+1)-variable program for the chosen bound, solved through the
/// conic module (linear rows plus one second-order cone row for the
/// theta3/theta2/theta1 reductions).
ReducedBound reduced_bound(const SchemeSpec& spec, ReducedModel model, int k,
                           const conic::SolveOptions& opts = default_scheme_options());
ReducedBound reduced_bound(const SchemeSpec& spec, ReducedModel model, int k, double eps,
                           int max_iter = 2000000);

/// sum_i coeff[i] * B_i as a dense matrix (test-scale n only).
Eigen::MatrixXd lift_class_combination(const SchemeSpec& spec, const Eigen::VectorXd& coeff,
                                       int vertex_cap = 5000);

}  // namespace mkcs::scheme
