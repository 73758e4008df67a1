#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace mkcs::conic {

enum class ConeType { Zero, NonNeg, SecondOrder, Psd };

/// One block of the slack cone. For Psd the block covers order*(order+1)/2
/// slack entries in scaled lower-triangular vectorization (svec); for the
/// other types `dim` entries.
struct ConeBlock {
    ConeType type;
    int dim;    // number of slack entries
    int order;  // matrix order for Psd, 0 otherwise
};

struct ConeSpec {
    std::vector<ConeBlock> blocks;
    int total_dim() const;
    static ConeBlock zero(int m) { return {ConeType::Zero, m, 0}; }
    static ConeBlock nonneg(int m) { return {ConeType::NonNeg, m, 0}; }
    static ConeBlock second_order(int m) { return {ConeType::SecondOrder, m, 0}; }
    static ConeBlock psd(int order) { return {ConeType::Psd, order * (order + 1) / 2, order}; }
};

/// svec layout: lower triangle, column-major, off-diagonals scaled by sqrt(2)
/// so that <svec(A), svec(B)> = <A, B>.
int svec_dim(int order);
int svec_index(int i, int j, int order);  // i >= j
Eigen::VectorXd svec_pack(const Eigen::MatrixXd& m);
Eigen::MatrixXd svec_unpack(const Eigen::VectorXd& v, int order);

/// Euclidean projection onto the product cone, block by block.
Eigen::VectorXd project_cone(const Eigen::VectorXd& v, const ConeSpec& cones);

/// min c'x  s.t.  Ax + s = b, s in K.
struct ConicProgram {
    Eigen::VectorXd c;
    Eigen::SparseMatrix<double> A;  // nslack x nvars
    Eigen::VectorXd b;
    ConeSpec cones;
};

enum class SolveStatus { Optimal, MaxIter, Infeasible, Unbounded };
const char* status_name(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::MaxIter;
    double objective = 0.0;  // c'x at the returned iterate
    Eigen::VectorXd x, s, y;
    double res_primal = 0.0, res_dual = 0.0, res_gap = 0.0;
    int iterations = 0;
    double wall_time_s = 0.0;
};

struct WarmStart {
    Eigen::VectorXd x, s, y;
};

struct SolveOptions {
    double eps = 1e-6;
    int max_iter = 200000;
    bool scaling = true;       // Ruiz equilibration of A
    double penalty = 1.0;      // ADMM step rho
    double relaxation = 1.5;   // over-relaxation alpha
    double sigma = 1e-6;       // x-regularization in the KKT system
    int check_interval = 25;
    const WarmStart* warm_start = nullptr;
};

/// Operator-splitting solve: each iteration is one back-solve with a fixed
/// quasi-definite factorization plus one cone projection. Terminates Optimal
/// when relative primal/dual residuals and relative gap all fall below eps.
SolveResult solve(const ConicProgram& p, const SolveOptions& opts = {});

/// De-vectorized symmetric matrix from the slack of Psd block `block_index`
/// (counting Psd blocks only would be error prone: the index is over all
/// cone blocks and must point at a Psd one).
Eigen::MatrixXd extract_psd_block(const ConicProgram& p, const SolveResult& r, int block_index);

/// Debug dump of (A, b, c, cones) for cross-checking with external solvers.
std::string program_to_json(const ConicProgram& p);
void dump_program_json(const ConicProgram& p, const std::string& path);

}  // namespace mkcs::conic
