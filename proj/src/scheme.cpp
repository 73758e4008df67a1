#include "mkcs/scheme.hpp"

#include <algorithm>
#include <stdexcept>

#include "conic_builder.hpp"
#include "mkcs/graph.hpp"

namespace mkcs::scheme {

BigInt binomial(int a, int b) {
    if (b < 0 || a < 0 || b > a) return 0;
    b = std::min(b, a - b);
    BigInt r = 1;
    for (int i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;
    }
    return r;
}

BigInt krawtchouk(int d, int q, int i, int u) {
    if (i < 0 || i > d || u < 0 || u > d) throw std::invalid_argument("krawtchouk: range");
    BigInt sum = 0;
    for (int j = 0; j <= i; ++j) {
        BigInt term = binomial(u, j) * binomial(d - u, i - j);
        if (term == 0) continue;
        BigInt pow = 1;
        for (int t = 0; t < i - j; ++t) pow *= q - 1;
        term *= pow;
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

BigInt eberlein(int v, int d, int i, int u) {
    if (i < 0 || i > d || u < 0 || u > d || 2 * d > v)
        throw std::invalid_argument("eberlein: range (need d <= v/2)");
    BigInt sum = 0;
    for (int j = 0; j <= i; ++j) {
        BigInt term = binomial(u, j) * binomial(d - u, i - j) * binomial(v - d - u, i - j);
        if (term == 0) continue;
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

long long SchemeSpec::edge_count() const {
    BigInt sum = 0;
    for (int s : edge_classes) sum += valencies[s];
    sum *= n;
    sum /= 2;
    return static_cast<long long>(sum);
}

double SchemeSpec::density_percent() const {
    return 100.0 * 2.0 * static_cast<double>(edge_count()) /
           (static_cast<double>(n) * (static_cast<double>(n) - 1.0));
}

namespace {

void self_check(const SchemeSpec& s) {
    const int d = s.classes;
    // row 0 of P is all ones, P[i][0] = valency
    for (int u = 0; u <= d; ++u)
        if (s.P[0][u] != 1) throw std::logic_error("scheme: P[0][u] != 1");
    BigInt total = 0;
    for (int i = 0; i <= d; ++i) total += s.valencies[i];
    if (total != s.n) throw std::logic_error("scheme: valencies do not sum to n");
    // orthogonality: sum_u m_u P[i][u] P[i'][u] = delta * n * k_i
    for (int i = 0; i <= d; ++i) {
        for (int i2 = i; i2 <= d; ++i2) {
            BigInt acc = 0;
            for (int u = 0; u <= d; ++u) acc += s.multiplicities[u] * s.P[i][u] * s.P[i2][u];
            BigInt expect = (i == i2) ? BigInt(s.n) * s.valencies[i] : BigInt(0);
            if (acc != expect) throw std::logic_error("scheme: row orthogonality failed");
        }
    }
    for (int c : s.edge_classes)
        if (c < 1 || c > d) throw std::invalid_argument("scheme: edge class out of range");
}

}  // namespace

SchemeSpec hamming_scheme(int d, int q, std::vector<int> edge_classes) {
    if (d < 1 || q < 2) throw std::invalid_argument("hamming scheme: need d >= 1, q >= 2");
    BigInt n = 1;
    for (int i = 0; i < d; ++i) n *= q;
    if (n > BigInt(1) << 40) throw std::invalid_argument("hamming scheme: size exceeds cap");
    SchemeSpec s;
    s.family = SchemeFamily::Hamming;
    s.p1 = d;
    s.p2 = q;
    s.n = static_cast<long long>(n);
    s.classes = d;
    s.P.assign(d + 1, std::vector<BigInt>(d + 1));
    for (int i = 0; i <= d; ++i)
        for (int u = 0; u <= d; ++u) s.P[i][u] = krawtchouk(d, q, i, u);
    s.valencies.resize(d + 1);
    s.multiplicities.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
        s.valencies[i] = s.P[i][0];
        BigInt pow = 1;
        for (int t = 0; t < i; ++t) pow *= q - 1;
        s.multiplicities[i] = binomial(d, i) * pow;
    }
    std::sort(edge_classes.begin(), edge_classes.end());
    s.edge_classes = std::move(edge_classes);
    self_check(s);
    return s;
}

SchemeSpec johnson_scheme(int v, int d, std::vector<int> edge_classes) {
    if (d < 1 || 2 * d > v) throw std::invalid_argument("johnson scheme: need 1 <= d <= v/2");
    SchemeSpec s;
    s.family = SchemeFamily::Johnson;
    s.p1 = v;
    s.p2 = d;
    s.n = static_cast<long long>(binomial(v, d));
    s.classes = d;
    s.P.assign(d + 1, std::vector<BigInt>(d + 1));
    for (int i = 0; i <= d; ++i)
        for (int u = 0; u <= d; ++u) s.P[i][u] = eberlein(v, d, i, u);
    s.valencies.resize(d + 1);
    s.multiplicities.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
        s.valencies[i] = s.P[i][0];
        s.multiplicities[i] = binomial(v, i) - binomial(v, i - 1);
    }
    std::sort(edge_classes.begin(), edge_classes.end());
    s.edge_classes = std::move(edge_classes);
    self_check(s);
    return s;
}

namespace {

std::vector<long> parse_params(const std::string& csv) {
    std::vector<long> out;
    std::size_t i = 0;
    while (i <= csv.size() && !csv.empty()) {
        auto comma = csv.find(',', i);
        out.push_back(std::stol(csv.substr(i, comma - i)));
        if (comma == std::string::npos) break;
        i = comma + 1;
    }
    return out;
}

struct ParsedFamily {
    std::string name;
    std::vector<long> p;
    bool complemented = false;
};

bool parse_family(const std::string& spec, ParsedFamily& out) {
    std::string s = spec;
    if (s.rfind("complement:", 0) == 0) {
        out.complemented = !out.complemented;
        s = s.substr(11);
    }
    if (s.rfind("family:", 0) != 0) return false;
    s = s.substr(7);
    auto colon = s.find(':');
    out.name = s.substr(0, colon);
    if (colon != std::string::npos) out.p = parse_params(s.substr(colon + 1));
    return true;
}

}  // namespace

bool family_spec_has_scheme(const std::string& spec) {
    ParsedFamily f;
    if (!parse_family(spec, f)) return false;
    return f.name == "hamming" || f.name == "hamming_le" || f.name == "johnson" ||
           f.name == "kneser" || f.name == "petersen";
}

SchemeSpec scheme_for_family_spec(const std::string& spec) {
    ParsedFamily f;
    if (!parse_family(spec, f))
        throw std::invalid_argument("not a scheme family spec: " + spec);
    SchemeSpec s;
    if (f.name == "hamming" || f.name == "hamming_le") {
        if (f.p.size() != 3) throw std::invalid_argument("hamming family expects (d,q,j)");
        const int d = int(f.p[0]), q = int(f.p[1]), j = int(f.p[2]);
        if (j < 1 || j > d) throw std::invalid_argument("hamming family: need 1 <= j <= d");
        std::vector<int> cls;
        if (f.name == "hamming")
            cls = {j};
        else
            for (int t = 1; t <= j; ++t) cls.push_back(t);
        s = hamming_scheme(d, q, std::move(cls));
    } else if (f.name == "johnson" || f.name == "kneser" || f.name == "petersen") {
        int v, d, q;
        if (f.name == "petersen") {
            v = 5; d = 2; q = 0;
        } else if (f.name == "kneser") {
            if (f.p.size() != 2) throw std::invalid_argument("kneser family expects (v,d)");
            v = int(f.p[0]); d = int(f.p[1]); q = 0;
        } else {
            if (f.p.size() != 3) throw std::invalid_argument("johnson family expects (v,d,q)");
            v = int(f.p[0]); d = int(f.p[1]); q = int(f.p[2]);
        }
        if (d < 1 || d > v || q < 0 || q >= d)
            throw std::invalid_argument("johnson family: need 1 <= d <= v, 0 <= q < d");
        // distance class d-q is preserved by the subset-complement remap
        const int cls = d - q;
        if (2 * d > v) d = v - d;
        if (cls > d) throw std::invalid_argument("johnson family: class outside scheme");
        s = johnson_scheme(v, d, {cls});
    } else {
        throw std::invalid_argument("family has no association scheme: " + f.name);
    }
    if (f.complemented) {
        std::vector<int> comp;
        for (int t = 1; t <= s.classes; ++t)
            if (!std::binary_search(s.edge_classes.begin(), s.edge_classes.end(), t))
                comp.push_back(t);
        s.edge_classes = std::move(comp);
    }
    return s;
}

conic::SolveOptions default_scheme_options() {
    conic::SolveOptions so;
    so.eps = 1e-9;
    so.max_iter = 2000000;
    so.check_interval = 50;
    return so;
}

ReducedBound reduced_bound(const SchemeSpec& spec, ReducedModel model, int k, double eps,
                           int max_iter) {
    conic::SolveOptions so = default_scheme_options();
    so.eps = eps;
    so.max_iter = max_iter;
    return reduced_bound(spec, model, k, so);
}

ReducedProgram build_reduced_program(const SchemeSpec& spec, ReducedModel model, int k) {
    if (k < 1) throw std::invalid_argument("reduced_bound: k must be >= 1");
    const int d = spec.classes;
    const double n = static_cast<double>(spec.n);
    Eigen::MatrixXd P(d + 1, d + 1);
    for (int i = 0; i <= d; ++i)
        for (int u = 0; u <= d; ++u) P(i, u) = static_cast<double>(spec.P[i][u]);
    std::vector<bool> is_edge(d + 1, false);
    for (int c : spec.edge_classes) is_edge[c] = true;

    ConicBuilder b;
    std::vector<int> zv(d + 1, -1), xv(d + 1, -1);

    if (model == ReducedModel::ThetaRed || model == ReducedModel::ThetaPrimeRed) {
        // z_0 = k/n fixed; z_s = 0 on edge classes; maximize k + sum z_i <J,B_i>
        for (int i = 1; i <= d; ++i)
            if (!is_edge[i]) zv[i] = b.add_var(-n * P(i, 0));
        if (model == ReducedModel::ThetaPrimeRed) {
            b.begin_nonneg();
            for (int i = 1; i <= d; ++i)
                if (zv[i] >= 0) b.add_row(0.0, {{zv[i], 1.0}});
        }
        b.begin_nonneg();  // Z and I-Z eigenvalues per eigenspace
        for (int u = 0; u <= d; ++u) {
            int row = b.add_row(double(k) / n);
            for (int i = 1; i <= d; ++i) b.add_term(row, zv[i], P(i, u));
            row = b.add_row(1.0 - double(k) / n);
            for (int i = 1; i <= d; ++i) b.add_term(row, zv[i], -P(i, u));
        }
        ReducedProgram rp;
        rp.prog = b.finish();
        rp.z_var = zv;
        rp.x_var = xv;
        rp.objective_sign = -1.0;
        rp.constant = double(k);
        return rp;
    }

    // theta3 / theta2 / theta1 reductions: z_0 variable, objective n*z_0
    const bool with_x = (model != ReducedModel::Theta3Red) && k >= 2;
    zv[0] = b.add_var(-n);
    for (int i = 1; i <= d; ++i)
        if (!is_edge[i]) zv[i] = b.add_var(0.0);
    if (with_x)
        for (int i = 1; i <= d; ++i) xv[i] = b.add_var(0.0);

    b.begin_nonneg();
    b.add_row(1.0, {{zv[0], -1.0}});  // z_0 <= 1
    b.add_row(0.0, {{zv[0], 1.0}});   // z_0 >= 0
    for (int i = 1; i <= d; ++i)
        if (zv[i] >= 0) b.add_row(0.0, {{zv[i], 1.0}});
    if (with_x)
        for (int i = 1; i <= d; ++i) b.add_row(0.0, {{xv[i], 1.0}});

    if (model != ReducedModel::Theta3Red) {
        b.begin_nonneg();  // (Z - X) eigenvalues
        for (int u = 0; u <= d; ++u) {
            int row = b.add_row(0.0);
            for (int i = 0; i <= d; ++i) {
                b.add_term(row, zv[i], P(i, u));
                if (with_x) b.add_term(row, xv[i], -P(i, u));
            }
        }
    }
    if (model == ReducedModel::Theta1Red) {
        b.begin_nonneg();  // 1 - 2 z_0 + z_i + (k-1) x_i >= 0
        for (int i = 1; i <= d; ++i) {
            int row = b.add_row(1.0);
            b.add_term(row, zv[0], -2.0);
            b.add_term(row, zv[i], 1.0);
            if (with_x) b.add_term(row, xv[i], double(k - 1));
        }
    }
    // eigenvalues of Z + (k-1)X (theta2/theta1) or Z scaled (theta3), u >= 1
    b.begin_nonneg();
    for (int u = 1; u <= d; ++u) {
        int row = b.add_row(0.0);
        for (int i = 0; i <= d; ++i) {
            b.add_term(row, zv[i], P(i, u));
            if (with_x) b.add_term(row, xv[i], double(k - 1) * P(i, u));
        }
    }
    // eigenspace 0 carries the rank-one term: T - c0 * z_0^2 >= 0 with
    // T = sum (z_i + (k-1)x_i) k_i. Rotated-cone form 2*(T/c0)*(1/2) >= z_0^2,
    // split so both cone legs live on the same scale as z_0.
    const double c0 = (model == ReducedModel::Theta3Red) ? n / k : n;
    b.begin_soc();
    {
        int row = b.add_row(0.5);  // T/c0 + 1/2
        for (int i = 0; i <= d; ++i) {
            b.add_term(row, zv[i], P(i, 0) / c0);
            if (with_x) b.add_term(row, xv[i], double(k - 1) * P(i, 0) / c0);
        }
        row = b.add_row(-0.5);  // T/c0 - 1/2
        for (int i = 0; i <= d; ++i) {
            b.add_term(row, zv[i], P(i, 0) / c0);
            if (with_x) b.add_term(row, xv[i], double(k - 1) * P(i, 0) / c0);
        }
        b.add_row(0.0, {{zv[0], std::sqrt(2.0)}});  // sqrt(2) z_0
    }

    ReducedProgram rp;
    rp.prog = b.finish();
    rp.z_var = zv;
    rp.x_var = xv;
    rp.objective_sign = -1.0;
    rp.constant = 0.0;
    return rp;
}

ReducedBound reduced_bound(const SchemeSpec& spec, ReducedModel model, int k,
                           const conic::SolveOptions& opts) {
    ReducedProgram rp = build_reduced_program(spec, model, k);
    const int d = spec.classes;
    ReducedBound out;
    out.result = conic::solve(rp.prog, opts);
    out.value = rp.objective_sign * out.result.objective + rp.constant;
    out.z = Eigen::VectorXd::Zero(d + 1);
    out.x = Eigen::VectorXd::Zero(d + 1);
    if (model == ReducedModel::ThetaRed || model == ReducedModel::ThetaPrimeRed)
        out.z[0] = double(k) / static_cast<double>(spec.n);
    for (int i = 0; i <= d; ++i) {
        if (rp.z_var[i] >= 0) out.z[i] = out.result.x[rp.z_var[i]];
        if (rp.x_var[i] >= 0) out.x[i] = out.result.x[rp.x_var[i]];
    }
    return out;
}

Eigen::MatrixXd lift_class_combination(const SchemeSpec& spec, const Eigen::VectorXd& coeff,
                                       int vertex_cap) {
    if (spec.n > vertex_cap) throw std::invalid_argument("lift: scheme too large");
    if (coeff.size() != spec.classes + 1) throw std::invalid_argument("lift: bad coefficients");
    const int n = static_cast<int>(spec.n);
    Eigen::MatrixXd M(n, n);
    if (spec.family == SchemeFamily::Hamming) {
        const int d = spec.p1, q = spec.p2;
        std::vector<std::vector<int>> words(n, std::vector<int>(d));
        for (int v = 0; v < n; ++v) {
            int rest = v;
            for (int pos = d - 1; pos >= 0; --pos) {
                words[v][pos] = rest % q;
                rest /= q;
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int c = a; c < n; ++c) {
                int dist = 0;
                for (int pos = 0; pos < d; ++pos) dist += (words[a][pos] != words[c][pos]);
                M(a, c) = M(c, a) = coeff[dist];
            }
        }
    } else {
        const int v = spec.p1, d = spec.p2;
        std::vector<std::vector<int>> sets;
        std::vector<int> cur(d);
        for (int i = 0; i < d; ++i) cur[i] = i;
        while (true) {
            sets.push_back(cur);
            int pos = d - 1;
            while (pos >= 0 && cur[pos] == v - d + pos) --pos;
            if (pos < 0) break;
            ++cur[pos];
            for (int i = pos + 1; i < d; ++i) cur[i] = cur[i - 1] + 1;
        }
        for (int a = 0; a < n; ++a) {
            for (int c = a; c < n; ++c) {
                int inter = 0;
                std::size_t ia = 0, ib = 0;
                while (ia < sets[a].size() && ib < sets[c].size()) {
                    if (sets[a][ia] == sets[c][ib]) { ++inter; ++ia; ++ib; }
                    else if (sets[a][ia] < sets[c][ib]) ++ia;
                    else ++ib;
                }
                M(a, c) = M(c, a) = coeff[d - inter];
            }
        }
    }
    return M;
}

}  // namespace mkcs::scheme
