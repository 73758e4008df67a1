#include "mkcs/conic.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <Eigen/SparseCholesky>
#include <lapacke.h>
#include <nlohmann/json.hpp>

extern "C" void openblas_set_num_threads(int);

namespace mkcs::conic {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

int ConeSpec::total_dim() const {
    int t = 0;
    for (const auto& b : blocks) t += b.dim;
    return t;
}

int svec_dim(int order) { return order * (order + 1) / 2; }

int svec_index(int i, int j, int order) {
    // column-major lower triangle, i >= j
    return j * order - j * (j - 1) / 2 + (i - j);
}

Eigen::VectorXd svec_pack(const Eigen::MatrixXd& m) {
    const int s = static_cast<int>(m.rows());
    Eigen::VectorXd v(svec_dim(s));
    int idx = 0;
    for (int j = 0; j < s; ++j)
        for (int i = j; i < s; ++i) v[idx++] = (i == j) ? m(i, j) : kSqrt2 * m(i, j);
    return v;
}

Eigen::MatrixXd svec_unpack(const Eigen::VectorXd& v, int order) {
    Eigen::MatrixXd m(order, order);
    int idx = 0;
    for (int j = 0; j < order; ++j) {
        for (int i = j; i < order; ++i) {
            double val = (i == j) ? v[idx] : v[idx] / kSqrt2;
            m(i, j) = val;
            m(j, i) = val;
            ++idx;
        }
    }
    return m;
}

namespace {

struct PsdWork {
    Eigen::MatrixXd mat;      // in: symmetric matrix; out: its psd projection
    Eigen::MatrixXd vecs;     // dsyevd eigenvectors
    Eigen::VectorXd vals;
    Eigen::MatrixXd part, scaled;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;  // fallback
};

// Projection via the smaller spectral part: clamp from the positive side when
// rank(positive) <= rank(negative), otherwise subtract the negative part.
void psd_project_inplace(PsdWork& w) {
    const int s = static_cast<int>(w.mat.rows());
    w.vecs = w.mat;
    w.vals.resize(s);
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', s, w.vecs.data(), s, w.vals.data());
    if (info != 0) {  // rare dsyevd failure: fall back to the Eigen solver
        w.eig.compute(w.mat);
        w.vecs = w.eig.eigenvectors();
        w.vals = w.eig.eigenvalues();
    }
    int q = 0;
    while (q < s && w.vals[q] < 0.0) ++q;  // ascending order: vals[0..q) negative
    const int p = s - q;
    if (q == 0) return;  // already psd
    if (p == 0) {
        w.mat.setZero();
        return;
    }
    if (p <= q) {
        w.scaled = w.vecs.rightCols(p);
        for (int c = 0; c < p; ++c) w.scaled.col(c) *= w.vals[q + c];
        w.mat.noalias() = w.scaled * w.vecs.rightCols(p).transpose();
    } else {
        w.scaled = w.vecs.leftCols(q);
        for (int c = 0; c < q; ++c) w.scaled.col(c) *= w.vals[c];
        w.mat.noalias() -= w.scaled * w.vecs.leftCols(q).transpose();
    }
    // symmetrize against gemm roundoff
    w.mat = 0.5 * (w.mat + w.mat.transpose()).eval();
}

void project_block_inplace(double* v, const ConeBlock& blk, PsdWork& work) {
    switch (blk.type) {
        case ConeType::Zero:
            for (int i = 0; i < blk.dim; ++i) v[i] = 0.0;
            break;
        case ConeType::NonNeg:
            for (int i = 0; i < blk.dim; ++i) v[i] = std::max(v[i], 0.0);
            break;
        case ConeType::SecondOrder: {
            double t = v[0];
            double nz = 0.0;
            for (int i = 1; i < blk.dim; ++i) nz += v[i] * v[i];
            nz = std::sqrt(nz);
            if (nz <= t) break;          // inside the cone
            if (nz <= -t) {              // inside the polar cone
                for (int i = 0; i < blk.dim; ++i) v[i] = 0.0;
                break;
            }
            double a = 0.5 * (t + nz);
            v[0] = a;
            double scale = (nz > 0.0) ? a / nz : 0.0;
            for (int i = 1; i < blk.dim; ++i) v[i] *= scale;
            break;
        }
        case ConeType::Psd: {
            const int s = blk.order;
            work.mat.resize(s, s);
            int idx = 0;
            for (int j = 0; j < s; ++j) {
                for (int i = j; i < s; ++i) {
                    double val = (i == j) ? v[idx] : v[idx] / kSqrt2;
                    work.mat(i, j) = val;
                    work.mat(j, i) = val;
                    ++idx;
                }
            }
            psd_project_inplace(work);
            idx = 0;
            for (int j = 0; j < s; ++j)
                for (int i = j; i < s; ++i)
                    v[idx++] = (i == j) ? work.mat(i, j) : kSqrt2 * work.mat(i, j);
            break;
        }
    }
}

}  // namespace

Eigen::VectorXd project_cone(const Eigen::VectorXd& v, const ConeSpec& cones) {
    if (v.size() != cones.total_dim())
        throw std::invalid_argument("project_cone: dimension mismatch");
    Eigen::VectorXd out = v;
    PsdWork work;
    int off = 0;
    for (const auto& blk : cones.blocks) {
        project_block_inplace(out.data() + off, blk, work);
        off += blk.dim;
    }
    return out;
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::MaxIter: return "max_iter";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

// Ruiz equilibration with block-uniform row scaling so cone geometry is kept.
void equilibrate(const ConicProgram& p, Eigen::SparseMatrix<double>& A, Eigen::VectorXd& d,
                 Eigen::VectorXd& e) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    d.setOnes(m);
    e.setOnes(n);
    Eigen::VectorXd rnorm(m), cnorm(n);
    for (int sweep = 0; sweep < 10; ++sweep) {
        rnorm.setZero();
        cnorm.setZero();
        for (int col = 0; col < A.outerSize(); ++col) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) {
                double a = std::abs(it.value());
                rnorm[it.row()] = std::max(rnorm[it.row()], a);
                cnorm[col] = std::max(cnorm[col], a);
            }
        }
        // one scalar per cone block
        int off = 0;
        for (const auto& blk : p.cones.blocks) {
            double blockmax = 0.0;
            for (int i = 0; i < blk.dim; ++i) blockmax = std::max(blockmax, rnorm[off + i]);
            for (int i = 0; i < blk.dim; ++i) rnorm[off + i] = blockmax;
            off += blk.dim;
        }
        bool converged = true;
        for (int i = 0; i < m; ++i) {
            rnorm[i] = (rnorm[i] > 0.0) ? 1.0 / std::sqrt(rnorm[i]) : 1.0;
            if (std::abs(1.0 - rnorm[i]) > 1e-3) converged = false;
        }
        for (int j = 0; j < n; ++j) {
            cnorm[j] = (cnorm[j] > 0.0) ? 1.0 / std::sqrt(cnorm[j]) : 1.0;
            if (std::abs(1.0 - cnorm[j]) > 1e-3) converged = false;
        }
        for (int col = 0; col < A.outerSize(); ++col)
            for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
                it.valueRef() *= rnorm[it.row()] * cnorm[col];
        d.array() *= rnorm.array();
        e.array() *= cnorm.array();
        if (converged) break;
    }
}

}  // namespace

SolveResult solve(const ConicProgram& p, const SolveOptions& opts) {
    static const bool blas_pinned = [] {
        openblas_set_num_threads(1);
        return true;
    }();
    (void)blas_pinned;
    const auto t0 = std::chrono::steady_clock::now();
    const int m = static_cast<int>(p.A.rows());
    const int n = static_cast<int>(p.A.cols());
    if (p.b.size() != m || p.c.size() != n || p.cones.total_dim() != m)
        throw std::invalid_argument("conic::solve: inconsistent dimensions");

    Eigen::SparseMatrix<double> A = p.A;
    Eigen::VectorXd d, e;
    if (opts.scaling) {
        equilibrate(p, A, d, e);
    } else {
        d = Eigen::VectorXd::Ones(m);
        e = Eigen::VectorXd::Ones(n);
    }
    Eigen::VectorXd bs = d.cwiseProduct(p.b);
    Eigen::VectorXd cs = e.cwiseProduct(p.c);
    // scalar rescaling of rhs/objective, undone before reporting
    double bscale = 1.0, cscale = 1.0;
    if (opts.scaling) {
        bscale = bs.norm() > 1e-12 ? bs.norm() : 1.0;
        cscale = cs.norm() > 1e-12 ? cs.norm() : 1.0;
        bs /= bscale;
        cs /= cscale;
    }

    const double rho = opts.penalty;
    const double sigma = opts.sigma;
    const double alpha = opts.relaxation;

    // KKT = [[sigma*I, A'],[A, -(1/rho)*I]], factored once
    Eigen::SparseMatrix<double> kkt(n + m, n + m);
    {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(A.nonZeros() * 2 + n + m);
        for (int j = 0; j < n; ++j) trips.emplace_back(j, j, sigma);
        for (int col = 0; col < A.outerSize(); ++col) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) {
                trips.emplace_back(n + it.row(), col, it.value());
                trips.emplace_back(col, n + it.row(), it.value());
            }
        }
        for (int i = 0; i < m; ++i) trips.emplace_back(n + i, n + i, -1.0 / rho);
        kkt.setFromTriplets(trips.begin(), trips.end());
    }
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldl;
    ldl.compute(kkt);
    if (ldl.info() != Eigen::Success)
        throw std::runtime_error("conic::solve: KKT factorization failed");

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(m);  // multiplier of the s-consensus
    if (opts.warm_start) {
        const auto& ws = *opts.warm_start;
        if (ws.x.size() == n && ws.s.size() == m && ws.y.size() == m) {
            x = e.cwiseInverse().cwiseProduct(ws.x) / bscale;
            s = d.cwiseProduct(ws.s) / bscale;
            lam = -d.cwiseInverse().cwiseProduct(ws.y) / cscale;
        }
    }

    const double bnorm = p.b.norm(), cnorm = p.c.norm();
    Eigen::VectorXd rhs(n + m), sol(n + m), w(m);
    PsdWork work;
    Eigen::VectorXd xu(n), su(m), yu(m);

    SolveResult res;
    int iter = 0;
    for (iter = 1; iter <= opts.max_iter; ++iter) {
        rhs.head(n) = sigma * x - cs;
        rhs.tail(m) = bs - s + lam / rho;
        sol = ldl.solve(rhs);
        const auto xt = sol.head(n);
        const auto nu = sol.tail(m);

        // s-tilde = s - (lam + nu)/rho ; over-relax the consensus pair
        w = alpha * (s - (lam + nu) / rho) + (1.0 - alpha) * s + lam / rho;
        x = alpha * xt + (1.0 - alpha) * x;
        s = w;
        {
            int off = 0;
            for (const auto& blk : p.cones.blocks) {
                project_block_inplace(s.data() + off, blk, work);
                off += blk.dim;
            }
        }
        lam = rho * (w - s);

        if (iter % opts.check_interval == 0 || iter == opts.max_iter) {
            xu = bscale * e.cwiseProduct(x);
            su = bscale * d.cwiseInverse().cwiseProduct(s);
            yu = -cscale * d.cwiseProduct(lam);
            const double cx = p.c.dot(xu);
            const double by = p.b.dot(yu);
            res.res_primal = (p.A * xu + su - p.b).norm() / (1.0 + bnorm);
            res.res_dual = (p.A.transpose() * yu + p.c).norm() / (1.0 + cnorm);
            res.res_gap = std::abs(cx + by) / (1.0 + std::abs(cx) + std::abs(by));
            if (res.res_primal <= opts.eps && res.res_dual <= opts.eps && res.res_gap <= opts.eps) {
                res.status = SolveStatus::Optimal;
                break;
            }
            const double xn = xu.norm(), yn = yu.norm();
            if (xn > 1e12 || yn > 1e12) {
                res.status = (xn > yn) ? SolveStatus::Unbounded : SolveStatus::Infeasible;
                break;
            }
        }
    }
    res.iterations = std::min(iter, opts.max_iter);
    res.x = bscale * e.cwiseProduct(x);
    res.s = bscale * d.cwiseInverse().cwiseProduct(s);
    res.y = -cscale * d.cwiseProduct(lam);
    res.objective = p.c.dot(res.x);
    res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

Eigen::MatrixXd extract_psd_block(const ConicProgram& p, const SolveResult& r, int block_index) {
    if (block_index < 0 || block_index >= static_cast<int>(p.cones.blocks.size()))
        throw std::out_of_range("extract_psd_block: bad block index");
    int off = 0;
    for (int i = 0; i < block_index; ++i) off += p.cones.blocks[i].dim;
    const auto& blk = p.cones.blocks[block_index];
    if (blk.type != ConeType::Psd)
        throw std::invalid_argument("extract_psd_block: block is not Psd");
    return svec_unpack(r.s.segment(off, blk.dim), blk.order);
}

std::string program_to_json(const ConicProgram& p) {
    nlohmann::json j;
    j["nvars"] = p.A.cols();
    j["nslack"] = p.A.rows();
    j["c"] = std::vector<double>(p.c.data(), p.c.data() + p.c.size());
    j["b"] = std::vector<double>(p.b.data(), p.b.data() + p.b.size());
    auto trips = nlohmann::json::array();
    for (int col = 0; col < p.A.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(p.A, col); it; ++it)
            trips.push_back({it.row(), it.col(), it.value()});
    j["A"] = trips;
    auto cones = nlohmann::json::array();
    for (const auto& blk : p.cones.blocks) {
        nlohmann::json cb;
        switch (blk.type) {
            case ConeType::Zero: cb["type"] = "zero"; break;
            case ConeType::NonNeg: cb["type"] = "nonneg"; break;
            case ConeType::SecondOrder: cb["type"] = "soc"; break;
            case ConeType::Psd: cb["type"] = "psd"; break;
        }
        cb["dim"] = blk.dim;
        if (blk.type == ConeType::Psd) cb["order"] = blk.order;
        cones.push_back(cb);
    }
    j["cones"] = cones;
    return j.dump();
}

void dump_program_json(const ConicProgram& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << program_to_json(p);
}

}  // namespace mkcs::conic
