#include "mkcs/relax.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "conic_builder.hpp"

namespace mkcs::relax {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Variables for the Z support: diagonal plus non-edge pairs.
VarLayout make_z_layout(const Graph& g, int k, ConicBuilder& b, bool with_x) {
    const int n = g.n();
    VarLayout lay;
    lay.n = n;
    lay.k = k;
    lay.z = Eigen::MatrixXi::Constant(n, n, -1);
    lay.x = Eigen::MatrixXi::Constant(n, n, -1);
    for (int i = 0; i < n; ++i) lay.z(i, i) = b.add_var(-1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j)) lay.z(i, j) = lay.z(j, i) = b.add_var(0.0);
    if (with_x) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) lay.x(i, j) = lay.x(j, i) = b.add_var(0.0);
    }
    return lay;
}

void add_entrywise_nonneg(ConicBuilder& b, const Eigen::MatrixXi& var, int n) {
    b.begin_nonneg();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (var(i, j) >= 0) b.add_row(0.0, {{var(i, j), 1.0}});
}

// svec(Z) block; entries without a variable stay structurally zero.
void add_psd_of_z(ConicBuilder& b, const VarLayout& lay) {
    const int n = lay.n;
    b.begin_psd(n);
    for (int j = 0; j < n; ++j) {
        b.add_row(0.0, {{lay.z(j, j), 1.0}});
        for (int i = j + 1; i < n; ++i) b.add_row(0.0, {{lay.z(i, j), kSqrt2}});
    }
}

}  // namespace

BuiltModel build_theta_k_impl(const Graph& g, int k, bool nonneg, bool force_iz = false) {
    const int n = g.n();
    if (k < 1 || k > std::max(1, n - 1))
        throw std::invalid_argument("theta_k: need 1 <= k <= n-1");
    ConicBuilder b;
    BuiltModel m;
    m.layout = make_z_layout(g, k, b, false);
    const auto& Z = m.layout.z;
    // objective <J,Z>
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (Z(i, j) >= 0) b.set_cost(Z(i, j), -2.0);
    b.begin_zero();
    {
        int row = b.add_row(-double(k));
        for (int i = 0; i < n; ++i) b.add_term(row, Z(i, i), 1.0);
    }
    add_psd_of_z(b, m.layout);
    if (k >= 2 || force_iz) {  // I - Z psd; redundant for k = 1
        b.begin_psd(n);
        for (int j = 0; j < n; ++j) {
            b.add_row(1.0, {{Z(j, j), -1.0}});
            for (int i = j + 1; i < n; ++i) b.add_row(0.0, {{Z(i, j), -kSqrt2}});
        }
    }
    // nonnegativity rows go last so a theta solve warm-starts the theta' solve
    if (nonneg) add_entrywise_nonneg(b, Z, n);
    m.prog = b.finish();
    return m;
}

BuiltModel build_theta_k(const Graph& g, int k) { return build_theta_k_impl(g, k, false); }
BuiltModel build_theta_prime_k(const Graph& g, int k) { return build_theta_k_impl(g, k, true); }
BuiltModel build_theta_k_full(const Graph& g, int k) { return build_theta_k_impl(g, k, false, true); }

BuiltModel build_theta3(const Graph& g, int k) {
    const int n = g.n();
    if (k < 1) throw std::invalid_argument("theta3: k must be >= 1");
    ConicBuilder b;
    BuiltModel m;
    m.layout = make_z_layout(g, k, b, false);
    const auto& Z = m.layout.z;
    b.begin_nonneg();  // Z_ii <= 1
    for (int i = 0; i < n; ++i) b.add_row(1.0, {{Z(i, i), -1.0}});
    add_entrywise_nonneg(b, Z, n);
    // [[k, diag'],[diag, Z]] of order n+1
    b.begin_psd(n + 1);
    b.add_row(double(k));
    for (int i = 0; i < n; ++i) b.add_row(0.0, {{Z(i, i), kSqrt2}});
    for (int j = 0; j < n; ++j) {
        b.add_row(0.0, {{Z(j, j), 1.0}});
        for (int i = j + 1; i < n; ++i) b.add_row(0.0, {{Z(i, j), kSqrt2}});
    }
    m.prog = b.finish();
    return m;
}

namespace {

BuiltModel build_theta12(const Graph& g, int k, bool fam_a, bool fam_b) {
    const int n = g.n();
    if (k < 1) throw std::invalid_argument("theta1/theta2: k must be >= 1");
    const bool with_x = k >= 2;
    ConicBuilder b;
    BuiltModel m;
    m.layout = make_z_layout(g, k, b, with_x);
    const auto& Z = m.layout.z;
    const auto& X = m.layout.x;
    add_entrywise_nonneg(b, Z, n);
    if (with_x) add_entrywise_nonneg(b, X, n);
    // Z - X psd
    b.begin_psd(n);
    for (int j = 0; j < n; ++j) {
        b.add_row(0.0, {{Z(j, j), 1.0}});
        for (int i = j + 1; i < n; ++i) {
            int row = b.add_row(0.0);
            b.add_term(row, Z(i, j), kSqrt2);
            if (with_x) b.add_term(row, X(i, j), -kSqrt2);
        }
    }
    // [[1, diag(Z)'],[diag(Z), Z + (k-1)X]]
    b.begin_psd(n + 1);
    b.add_row(1.0);
    for (int i = 0; i < n; ++i) b.add_row(0.0, {{Z(i, i), kSqrt2}});
    for (int j = 0; j < n; ++j) {
        b.add_row(0.0, {{Z(j, j), 1.0}});
        for (int i = j + 1; i < n; ++i) {
            int row = b.add_row(0.0);
            b.add_term(row, Z(i, j), kSqrt2);
            if (with_x) b.add_term(row, X(i, j), kSqrt2 * (k - 1));
        }
    }
    // the RLT families go last so a theta2 solve warm-starts theta1
    if (fam_a) {
        b.begin_nonneg();  // 1 - Z_ii - Z_jj + Z_ij + (k-1)X_ij >= 0, i > j
        for (int j = 0; j < n; ++j) {
            for (int i = j + 1; i < n; ++i) {
                int row = b.add_row(1.0);
                b.add_term(row, Z(i, i), -1.0);
                b.add_term(row, Z(j, j), -1.0);
                b.add_term(row, Z(i, j), 1.0);
                if (with_x) b.add_term(row, X(i, j), double(k - 1));
            }
        }
    }
    if (fam_b) {
        b.begin_nonneg();  // Z_ii - Z_ij - (k-1)X_ij >= 0, ordered i != j
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                int row = b.add_row(0.0);
                b.add_term(row, Z(i, i), 1.0);
                b.add_term(row, Z(i, j), -1.0);
                if (with_x) b.add_term(row, X(i, j), -double(k - 1));
            }
        }
    }
    m.prog = b.finish();
    return m;
}

}  // namespace

BuiltModel build_theta2(const Graph& g, int k) { return build_theta12(g, k, false, false); }
BuiltModel build_theta1(const Graph& g, int k) { return build_theta12(g, k, true, true); }
BuiltModel build_theta2_with_family_b(const Graph& g, int k) { return build_theta12(g, k, false, true); }

BuiltModel build_vector_lifting_full(const Graph& g, int k, bool with_rlt, int size_cap) {
    const int n = g.n();
    const int N = n * k;
    if (k < 1) throw std::invalid_argument("vector lifting: k must be >= 1");
    if (N > size_cap) throw std::invalid_argument("vector lifting: n*k exceeds the oracle cap");
    ConicBuilder b;
    Eigen::MatrixXi Y = Eigen::MatrixXi::Constant(N, N, -1);
    auto id = [n](int r, int i) { return r * n + i; };
    for (int a = 0; a < N; ++a) Y(a, a) = b.add_var(-1.0);
    for (int a = 0; a < N; ++a) {
        for (int c = a + 1; c < N; ++c) {
            int r = a / n, i = a % n, l = c / n, j = c % n;
            if (r == l && g.has_edge(i, j)) continue;  // Y^rr_ij = 0 on edges
            if (r != l && i == j) continue;            // Y^rl_ii = 0
            Y(a, c) = Y(c, a) = b.add_var(0.0);
        }
    }
    add_entrywise_nonneg(b, Y, N);
    if (with_rlt) {
        b.begin_nonneg();  // linearized products of the assignment constraints
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                int row = b.add_row(1.0);
                for (int r = 0; r < k; ++r) {
                    b.add_term(row, Y(id(r, i), id(r, i)), -1.0);
                    b.add_term(row, Y(id(r, j), id(r, j)), -1.0);
                }
                for (int r = 0; r < k; ++r)
                    for (int l = 0; l < k; ++l) b.add_term(row, Y(id(r, i), id(l, j)), 1.0);
            }
        }
        b.begin_nonneg();
        for (int l = 0; l < k; ++l) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    int row = b.add_row(0.0);
                    b.add_term(row, Y(id(l, i), id(l, i)), 1.0);
                    for (int r = 0; r < k; ++r) b.add_term(row, Y(id(r, i), id(l, j)), -1.0);
                }
            }
        }
    }
    b.begin_psd(N + 1);
    b.add_row(1.0);
    for (int a = 0; a < N; ++a) b.add_row(0.0, {{Y(a, a), kSqrt2}});
    for (int ccol = 0; ccol < N; ++ccol) {
        b.add_row(0.0, {{Y(ccol, ccol), 1.0}});
        for (int a = ccol + 1; a < N; ++a) b.add_row(0.0, {{Y(a, ccol), kSqrt2}});
    }
    BuiltModel m;
    m.prog = b.finish();
    m.layout.n = n;
    m.layout.k = k;
    return m;
}

BuiltModel build_matrix_lifting_full(const Graph& g, int k, int size_cap) {
    const int n = g.n();
    if (k < 1) throw std::invalid_argument("matrix lifting: k must be >= 1");
    if (n + k > size_cap) throw std::invalid_argument("matrix lifting: n+k exceeds the oracle cap");
    ConicBuilder b;
    BuiltModel m;
    m.layout = make_z_layout(g, k, b, false);
    const auto& Z = m.layout.z;
    Eigen::MatrixXi X(n, k);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < k; ++r) X(i, r) = b.add_var(0.0);
    b.begin_zero();  // Z_ii = sum_r X_ir
    for (int i = 0; i < n; ++i) {
        int row = b.add_row(0.0, {{Z(i, i), 1.0}});
        for (int r = 0; r < k; ++r) b.add_term(row, X(i, r), -1.0);
    }
    b.begin_nonneg();  // Z_ii <= 1
    for (int i = 0; i < n; ++i) b.add_row(1.0, {{Z(i, i), -1.0}});
    add_entrywise_nonneg(b, Z, n);
    b.begin_nonneg();  // X >= 0
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < k; ++r) b.add_row(0.0, {{X(i, r), 1.0}});
    // [[I_k, X'],[X, Z]] of order k+n
    b.begin_psd(k + n);
    for (int col = 0; col < k; ++col) {
        b.add_row(1.0);
        for (int l = col + 1; l < k; ++l) b.add_row(0.0);
        for (int i = 0; i < n; ++i) b.add_row(0.0, {{X(i, col), kSqrt2}});
    }
    for (int col = 0; col < n; ++col) {
        b.add_row(0.0, {{Z(col, col), 1.0}});
        for (int i = col + 1; i < n; ++i) b.add_row(0.0, {{Z(i, col), kSqrt2}});
    }
    m.prog = b.finish();
    return m;
}

BuiltModel build_theta_prime_product(const Graph& g, int k, int size_cap) {
    if (k < 1) throw std::invalid_argument("theta prime product: k must be >= 1");
    if (g.n() * k > size_cap)
        throw std::invalid_argument("theta prime product: n*k exceeds the oracle cap");
    return build_theta_prime_k(cartesian_product_complete(k, g), 1);
}

double fan_upper_bound(const Graph& g, int k, double edge_value) {
    const int n = g.n();
    if (k < 1 || k > n) throw std::invalid_argument("fan bound: need 1 <= k <= n");
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
    for (auto [i, j] : g.edges()) {
        a(i, j) = edge_value;
        a(j, i) = edge_value;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += eig.eigenvalues()[n - 1 - i];
    return sum;
}

namespace {

BuiltModel build_partition(const Graph& g, int k, bool vector_form, bool equipartition) {
    const int n = g.n();
    if (k < 2) throw std::invalid_argument("partition models: k must be >= 2");
    if (equipartition && n % k != 0)
        throw std::invalid_argument("equipartition: k must divide n");
    ConicBuilder b;
    BuiltModel m;
    m.layout.n = n;
    m.layout.k = k;
    m.layout.z = Eigen::MatrixXi::Constant(n, n, -1);
    m.layout.x = Eigen::MatrixXi::Constant(n, n, -1);
    auto& Z = m.layout.z;
    auto& X = m.layout.x;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) Z(i, j) = Z(j, i) = b.add_var(0.0);
    if (vector_form) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) X(i, j) = X(j, i) = b.add_var(0.0);
    }
    // objective (1/2)<L,Z> with Z_ii = 1: |E| - sum_{edges} Z_ij, so the cut is
    // maximized by minimizing the edge sum and vice versa
    const double sense = equipartition ? -1.0 : 1.0;
    for (auto [i, j] : g.edges()) b.set_cost(Z(i, j), sense);
    m.sign = -sense;
    m.constant = static_cast<double>(g.edge_count());
    if (equipartition) {
        b.begin_zero();  // Ze = (n/k) e
        for (int i = 0; i < n; ++i) {
            int row = b.add_row(1.0 - double(n) / k);
            for (int j = 0; j < n; ++j)
                if (j != i) b.add_term(row, Z(std::min(i, j), std::max(i, j)), 1.0);
        }
    }
    add_entrywise_nonneg(b, Z, n);
    if (vector_form) {
        add_entrywise_nonneg(b, X, n);
        b.begin_psd(n);  // Z - X
        for (int j = 0; j < n; ++j) {
            b.add_row(1.0);
            for (int i = j + 1; i < n; ++i) {
                int row = b.add_row(0.0);
                b.add_term(row, Z(i, j), kSqrt2);
                b.add_term(row, X(i, j), -kSqrt2);
            }
        }
        b.begin_psd(n);  // Z + (k-1)X - J
        for (int j = 0; j < n; ++j) {
            b.add_row(0.0);
            for (int i = j + 1; i < n; ++i) {
                int row = b.add_row(-kSqrt2);
                b.add_term(row, Z(i, j), kSqrt2);
                b.add_term(row, X(i, j), kSqrt2 * (k - 1));
            }
        }
    } else {
        b.begin_psd(n);  // Z - (1/k) J
        for (int j = 0; j < n; ++j) {
            b.add_row(1.0 - 1.0 / k);
            for (int i = j + 1; i < n; ++i)
                b.add_row(-kSqrt2 / k, {{Z(i, j), kSqrt2}});
        }
    }
    m.prog = b.finish();
    return m;
}

}  // namespace

BuiltModel build_maxkcut_m(const Graph& g, int k) { return build_partition(g, k, false, false); }
BuiltModel build_equipartition_m(const Graph& g, int k) { return build_partition(g, k, false, true); }
BuiltModel build_maxkcut_v(const Graph& g, int k) { return build_partition(g, k, true, false); }
BuiltModel build_equipartition_v(const Graph& g, int k) { return build_partition(g, k, true, true); }

conic::WarmStart pad_warm_start(const conic::SolveResult& from, int nvars, int nrows) {
    if (from.x.size() != nvars || from.s.size() > nrows)
        throw std::invalid_argument("pad_warm_start: source does not prefix the target");
    conic::WarmStart ws;
    ws.x = from.x;
    ws.s = Eigen::VectorXd::Zero(nrows);
    ws.s.head(from.s.size()) = from.s;
    ws.y = Eigen::VectorXd::Zero(nrows);
    ws.y.head(from.y.size()) = from.y;
    return ws;
}

conic::SolveOptions tuned_options(const conic::ConicProgram& p, const BoundOptions& base) {
    conic::SolveOptions o;
    int max_order = 0;
    for (const auto& blk : p.cones.blocks)
        if (blk.type == conic::ConeType::Psd) max_order = std::max(max_order, blk.order);
    o.eps = base.eps > 0.0 ? base.eps : (max_order > 150 ? 1e-5 : 1e-6);
    o.max_iter = base.max_iter;
    o.scaling = base.scaling;
    o.warm_start = base.warm_start;
    return o;
}

SolvedBound solve_model(const BuiltModel& model, const BoundOptions& opts) {
    SolvedBound out;
    out.result = conic::solve(model.prog, tuned_options(model.prog, opts));
    out.value = model.sign * out.result.objective + model.constant;
    return out;
}

ReducedPoint reduced_point(const BuiltModel& model, const conic::SolveResult& r) {
    const int n = model.layout.n;
    ReducedPoint pt;
    pt.k = model.layout.k;
    pt.Z = Eigen::MatrixXd::Zero(n, n);
    pt.X = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (model.layout.z(i, j) >= 0) pt.Z(i, j) = r.x[model.layout.z(i, j)];
            if (model.layout.x(i, j) >= 0) pt.X(i, j) = r.x[model.layout.x(i, j)];
        }
    }
    return pt;
}

namespace {

using CutKey = std::tuple<double, int, int, int, int, int>;  // (-viol, fam, var, i, j, p)

CutKey key_of(const BqpCut& c) { return {-c.violation, c.family, c.variant, c.i, c.j, c.p}; }

}  // namespace

std::vector<BqpCut> separate_bqp(const ReducedPoint& point, int max_cuts, double cut_eps) {
    const int n = static_cast<int>(point.Z.rows());
    const int k = point.k;
    std::vector<BqpCut> kept;
    if (max_cuts <= 0 || n < 3) return kept;
    auto worse = [](const BqpCut& a, const BqpCut& b) { return key_of(a) < key_of(b); };
    std::priority_queue<BqpCut, std::vector<BqpCut>, decltype(worse)> heap(worse);
    auto offer = [&](int family, int variant, int i, int j, int p, double viol) {
        if (viol <= cut_eps) return;
        BqpCut c{family, variant, i, j, p, viol};
        if (static_cast<int>(heap.size()) < max_cuts) {
            heap.push(c);
        } else if (key_of(c) < key_of(heap.top())) {
            heap.pop();
            heap.push(c);
        }
    };
    const auto& Z = point.Z;
    const auto& X = point.X;
    for (int p = 0; p < n; ++p) {
        for (int i = 0; i < n; ++i) {
            if (i == p) continue;
            for (int j = i + 1; j < n; ++j) {
                if (j == p) continue;
                const double zpp = Z(p, p);
                if (k >= 3) offer(31, 0, i, j, p, X(i, p) + X(j, p) - zpp - X(i, j));
                offer(31, 1, i, j, p, Z(i, p) + Z(j, p) - zpp - Z(i, j));
                offer(31, 2, i, j, p, X(i, p) + X(j, p) - zpp - Z(i, j));
                offer(31, 3, i, j, p, X(i, p) + Z(j, p) - zpp - X(i, j));
                offer(31, 4, i, j, p, Z(i, p) + X(j, p) - zpp - X(i, j));
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int p = j + 1; p < n; ++p) {
                const double s3 = Z(i, i) + Z(j, j) + Z(p, p) - k;
                if (k >= 3) offer(32, 0, i, j, p, s3 - X(i, j) - X(i, p) - X(j, p));
                offer(32, 1, i, j, p, s3 - Z(i, j) - Z(i, p) - Z(j, p));
                offer(32, 2, i, j, p, s3 - Z(i, j) - X(i, p) - X(j, p));
                offer(32, 3, i, j, p, s3 - X(i, j) - Z(i, p) - X(j, p));
                offer(32, 4, i, j, p, s3 - X(i, j) - X(i, p) - Z(j, p));
            }
        }
    }
    kept.reserve(heap.size());
    while (!heap.empty()) {
        kept.push_back(heap.top());
        heap.pop();
    }
    std::reverse(kept.begin(), kept.end());
    return kept;
}

namespace {

// theta1 plus accumulated BQP cut rows appended as a trailing NonNeg block.
BuiltModel build_theta1_with_cuts(const Graph& g, int k, const std::vector<BqpCut>& cuts) {
    BuiltModel base = build_theta1(g, k);
    if (cuts.empty()) return base;
    const auto& lay = base.layout;
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> rhs;
    auto term = [&](int row, int var, double coeff) {
        if (var >= 0 && coeff != 0.0) trips.emplace_back(row, var, -coeff);
    };
    int row = 0;
    for (const auto& c : cuts) {
        // slack = RHS - LHS of the inequality
        if (c.family == 31) {
            rhs.push_back(0.0);
            term(row, lay.z(c.p, c.p), 1.0);
            const bool xi = c.variant == 0 || c.variant == 3 || c.variant == 4;
            term(row, xi ? lay.x(c.i, c.j) : lay.z(c.i, c.j), 1.0);
            const bool xa = c.variant == 0 || c.variant == 2 || c.variant == 3;
            term(row, xa ? lay.x(c.i, c.p) : lay.z(c.i, c.p), -1.0);
            const bool xb = c.variant == 0 || c.variant == 2 || c.variant == 4;
            term(row, xb ? lay.x(c.j, c.p) : lay.z(c.j, c.p), -1.0);
        } else {
            rhs.push_back(double(k));
            term(row, lay.z(c.i, c.i), -1.0);
            term(row, lay.z(c.j, c.j), -1.0);
            term(row, lay.z(c.p, c.p), -1.0);
            const bool zij = c.variant == 1 || c.variant == 2;
            term(row, zij ? lay.z(c.i, c.j) : lay.x(c.i, c.j), 1.0);
            const bool zip = c.variant == 1 || c.variant == 3;
            term(row, zip ? lay.z(c.i, c.p) : lay.x(c.i, c.p), 1.0);
            const bool zjp = c.variant == 1 || c.variant == 4;
            term(row, zjp ? lay.z(c.j, c.p) : lay.x(c.j, c.p), 1.0);
        }
        ++row;
    }
    const int m0 = static_cast<int>(base.prog.A.rows());
    const int nc = row;
    Eigen::SparseMatrix<double> extra(nc, base.prog.A.cols());
    extra.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseMatrix<double> stacked(m0 + nc, base.prog.A.cols());
    std::vector<Eigen::Triplet<double>> all;
    all.reserve(base.prog.A.nonZeros() + extra.nonZeros());
    for (int col = 0; col < base.prog.A.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(base.prog.A, col); it; ++it)
            all.emplace_back(it.row(), it.col(), it.value());
    for (int col = 0; col < extra.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(extra, col); it; ++it)
            all.emplace_back(m0 + it.row(), it.col(), it.value());
    stacked.setFromTriplets(all.begin(), all.end());
    base.prog.A.swap(stacked);
    Eigen::VectorXd b2(m0 + nc);
    b2.head(m0) = base.prog.b;
    for (int i = 0; i < nc; ++i) b2[m0 + i] = rhs[i];
    base.prog.b.swap(b2);
    base.prog.cones.blocks.push_back(conic::ConeSpec::nonneg(nc));
    return base;
}

}  // namespace

BqpOutcome solve_theta1_bqp(const Graph& g, int k, int rounds, int max_cuts,
                            const BoundOptions& opts, double cut_eps) {
    BqpOutcome out;
    if (max_cuts < 0) max_cuts = 2 * g.n();
    BuiltModel model = build_theta1(g, k);
    SolvedBound sb = solve_model(model, opts);
    out.rounds.push_back({0, sb.value, sb.result.iterations});
    if (k < 2) {  // the reduced BQP families degenerate; report plain theta1
        out.value = sb.value;
        out.result = std::move(sb.result);
        return out;
    }
    std::vector<BqpCut> pool;
    for (int round = 1; round <= rounds; ++round) {
        ReducedPoint pt = reduced_point(model, sb.result);
        auto cuts = separate_bqp(pt, max_cuts, cut_eps);
        if (cuts.empty()) break;
        pool.insert(pool.end(), cuts.begin(), cuts.end());
        model = build_theta1_with_cuts(g, k, pool);
        conic::WarmStart ws;
        const int m_new = static_cast<int>(model.prog.A.rows());
        ws.x = sb.result.x;
        ws.s = Eigen::VectorXd::Zero(m_new);
        ws.s.head(sb.result.s.size()) = sb.result.s;
        ws.y = Eigen::VectorXd::Zero(m_new);
        ws.y.head(sb.result.y.size()) = sb.result.y;
        BoundOptions o2 = opts;
        o2.warm_start = &ws;
        sb = solve_model(model, o2);
        out.rounds.push_back({static_cast<int>(cuts.size()), sb.value, sb.result.iterations});
    }
    out.total_cuts = static_cast<int>(pool.size());
    out.value = sb.value;
    out.result = std::move(sb.result);
    return out;
}

SolvedBound solve_bound(const Graph& g, BoundModel model, int k, const BoundOptions& opts,
                        double fan_edge_value) {
    switch (model) {
        case BoundModel::ThetaK: return solve_model(build_theta_k(g, k), opts);
        case BoundModel::ThetaPrimeK: return solve_model(build_theta_prime_k(g, k), opts);
        case BoundModel::Theta3: return solve_model(build_theta3(g, k), opts);
        case BoundModel::Theta2: return solve_model(build_theta2(g, k), opts);
        case BoundModel::Theta1: return solve_model(build_theta1(g, k), opts);
        case BoundModel::Theta1Bqp: {
            auto o = solve_theta1_bqp(g, k, 4, -1, opts);
            return {o.value, std::move(o.result)};
        }
        case BoundModel::FanEigenvalue: {
            auto t0 = std::chrono::steady_clock::now();
            SolvedBound sb;
            sb.value = fan_upper_bound(g, k, fan_edge_value);
            sb.result.status = conic::SolveStatus::Optimal;
            sb.result.objective = sb.value;
            sb.result.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return sb;
        }
        case BoundModel::VectorLiftFull:
            return solve_model(build_vector_lifting_full(g, k, true), opts);
        case BoundModel::MatrixLiftFull: return solve_model(build_matrix_lifting_full(g, k), opts);
        case BoundModel::ThetaPrimeProduct:
            return solve_model(build_theta_prime_product(g, k), opts);
        case BoundModel::MaxKCutM: return solve_model(build_maxkcut_m(g, k), opts);
        case BoundModel::EquipartitionM: return solve_model(build_equipartition_m(g, k), opts);
    }
    throw std::invalid_argument("unknown bound model");
}

}  // namespace mkcs::relax
