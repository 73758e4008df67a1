#pragma once

#include <optional>
#include <vector>

#include "mkcs/conic.hpp"
#include "mkcs/graph.hpp"

namespace mkcs::relax {

enum class BoundModel {
    ThetaK,
    ThetaPrimeK,
    Theta3,
    Theta2,
    Theta1,
    Theta1Bqp,
    FanEigenvalue,
    VectorLiftFull,
    MatrixLiftFull,
    ThetaPrimeProduct,
    MaxKCutM,
    EquipartitionM,
};

/// Variable positions of the (Z, X) matrices inside a built program;
/// -1 marks entries fixed to zero (edges, X diagonal) or absent variables.
struct VarLayout {
    int n = 0, k = 0;
    Eigen::MatrixXi z;
    Eigen::MatrixXi x;
};

/// A conic program together with the affine map back to the bound value:
/// value = sign * (conic optimum) + constant.
struct BuiltModel {
    conic::ConicProgram prog;
    double sign = -1.0;
    double constant = 0.0;
    VarLayout layout;
};

BuiltModel build_theta_k(const Graph& g, int k);        // generalized Lovasz theta
BuiltModel build_theta_prime_k(const Graph& g, int k);  // + entrywise nonnegativity
BuiltModel build_theta3(const Graph& g, int k);         // reduced matrix lifting
BuiltModel build_theta2(const Graph& g, int k);         // reduced vector lifting
BuiltModel build_theta1(const Graph& g, int k);         // theta2 + RLT inequality families

/// Test oracles: theta_k keeping the I-Z block at k=1, and theta2 plus only
/// the Z_ii - Z_ij - (k-1)X_ij family (redundant on vertex-transitive graphs).
BuiltModel build_theta_k_full(const Graph& g, int k);
BuiltModel build_theta2_with_family_b(const Graph& g, int k);

/// Unreduced lifting models, used as equivalence oracles.
BuiltModel build_vector_lifting_full(const Graph& g, int k, bool with_rlt, int size_cap = 60);
BuiltModel build_matrix_lifting_full(const Graph& g, int k, int size_cap = 80);
/// Schrijver theta' of K_k box G (vector-lifting equivalent of theta2).
BuiltModel build_theta_prime_product(const Graph& g, int k, int size_cap = 60);

/// Sum of the k largest eigenvalues of A with A_ij = 1 off the edge set and
/// on the diagonal, A_ij = edge_value on edges.
double fan_upper_bound(const Graph& g, int k, double edge_value);

BuiltModel build_maxkcut_m(const Graph& g, int k);
BuiltModel build_equipartition_m(const Graph& g, int k);
BuiltModel build_maxkcut_v(const Graph& g, int k);        // vector-lifting oracle
BuiltModel build_equipartition_v(const Graph& g, int k);  // vector-lifting oracle

struct BoundOptions {
    double eps = 0.0;  // 0 = auto: 1e-6, or 1e-5 when the largest PSD order exceeds 150
    int max_iter = 200000;
    bool scaling = true;
    const conic::WarmStart* warm_start = nullptr;
};

conic::SolveOptions tuned_options(const conic::ConicProgram& p, const BoundOptions& base);

/// Zero-pads a solve of a prefix program (same variables, rows appended at
/// the end) into a warm start for the larger one; used to chain
/// theta -> theta' and theta2 -> theta1 -> cutting-plane rounds.
conic::WarmStart pad_warm_start(const conic::SolveResult& from, int nvars, int nrows);

struct SolvedBound {
    double value = 0.0;
    conic::SolveResult result;
};

SolvedBound solve_model(const BuiltModel& model, const BoundOptions& opts = {});
SolvedBound solve_bound(const Graph& g, BoundModel model, int k, const BoundOptions& opts = {},
                        double fan_edge_value = 0.0);

/// Color-aggregated (Z, X) point recovered from a theta1/theta2 solve.
struct ReducedPoint {
    Eigen::MatrixXd Z, X;
    int k = 0;
};

ReducedPoint reduced_point(const BuiltModel& model, const conic::SolveResult& r);

/// One reduced BQP inequality instance. family is 31 or 32, variant indexes
/// the inequality inside the family; (i, j, p) pairwise distinct.
struct BqpCut {
    int family;
    int variant;
    int i, j, p;
    double violation;
};

/// Evaluates every instance of the reduced families over vertex triples and
/// returns the max_cuts most violated (violation > cut_eps), sorted by
/// violation descending with lexicographic (family, variant, i, j, p) ties.
/// For k = 2 the first inequality of each family is skipped.
std::vector<BqpCut> separate_bqp(const ReducedPoint& point, int max_cuts, double cut_eps = 1e-4);

struct BqpRound {
    int cuts_added = 0;
    double value = 0.0;
    int iterations = 0;
};

struct BqpOutcome {
    double value = 0.0;
    conic::SolveResult result;
    std::vector<BqpRound> rounds;  // one entry per solve, the first has no cuts
    int total_cuts = 0;
};

/// Cutting-plane driver: solve theta1, then up to `rounds` times separate,
/// append the most violated cuts and re-solve warm-started. max_cuts < 0
/// means the default 2n per round. For k = 1 this is plain theta1.
BqpOutcome solve_theta1_bqp(const Graph& g, int k, int rounds = 4, int max_cuts = -1,
                            const BoundOptions& opts = {}, double cut_eps = 1e-4);

}  // namespace mkcs::relax
