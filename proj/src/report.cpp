#include "mkcs/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace mkcs::report {

namespace {

const std::vector<std::pair<std::string, ModelId>> kModelNames = {
    {"theta", ModelId::Theta},
    {"theta_prime", ModelId::ThetaPrime},
    {"theta3", ModelId::Theta3},
    {"theta2", ModelId::Theta2},
    {"theta1", ModelId::Theta1},
    {"theta1_bqp", ModelId::Theta1Bqp},
    {"fan", ModelId::Fan},
    {"vector_full", ModelId::VectorFull},
    {"matrix_full", ModelId::MatrixFull},
    {"theta_prime_product", ModelId::ThetaPrimeProduct},
    {"maxkcut", ModelId::MaxKCut},
    {"equipartition", ModelId::Equipartition},
    {"theta_red", ModelId::ThetaRed},
    {"theta_prime_red", ModelId::ThetaPrimeRed},
    {"theta3_red", ModelId::Theta3Red},
    {"theta2_red", ModelId::Theta2Red},
    {"theta1_red", ModelId::Theta1Red},
};

}  // namespace

std::optional<ModelId> model_from_name(const std::string& name) {
    for (const auto& [nm, id] : kModelNames)
        if (nm == name) return id;
    return std::nullopt;
}

std::string model_name(ModelId id) {
    for (const auto& [nm, mid] : kModelNames)
        if (mid == id) return nm;
    return "?";
}

std::vector<std::string> all_model_names() {
    std::vector<std::string> out;
    for (const auto& [nm, id] : kModelNames) out.push_back(nm);
    return out;
}

bool is_scheme_model(ModelId id) {
    switch (id) {
        case ModelId::ThetaRed:
        case ModelId::ThetaPrimeRed:
        case ModelId::Theta3Red:
        case ModelId::Theta2Red:
        case ModelId::Theta1Red: return true;
        default: return false;
    }
}

int heuristic_lb(const Graph& g, int k, unsigned seed) {
    heur::TabuParams params;
    params.rng_seed = seed;
    int best = heur::tabu_lb(g, k, params).value();
    if (static_cast<long long>(g.n()) * k <= 500000)
        best = std::max(best, heur::product_heuristic_lb(g, k).value());
    return best;
}

namespace {

scheme::ReducedModel to_reduced(ModelId id) {
    switch (id) {
        case ModelId::ThetaRed: return scheme::ReducedModel::ThetaRed;
        case ModelId::ThetaPrimeRed: return scheme::ReducedModel::ThetaPrimeRed;
        case ModelId::Theta3Red: return scheme::ReducedModel::Theta3Red;
        case ModelId::Theta2Red: return scheme::ReducedModel::Theta2Red;
        default: return scheme::ReducedModel::Theta1Red;
    }
}

relax::BoundModel to_bound_model(ModelId id) {
    switch (id) {
        case ModelId::Theta: return relax::BoundModel::ThetaK;
        case ModelId::ThetaPrime: return relax::BoundModel::ThetaPrimeK;
        case ModelId::Theta3: return relax::BoundModel::Theta3;
        case ModelId::Theta2: return relax::BoundModel::Theta2;
        case ModelId::Theta1: return relax::BoundModel::Theta1;
        case ModelId::Theta1Bqp: return relax::BoundModel::Theta1Bqp;
        case ModelId::Fan: return relax::BoundModel::FanEigenvalue;
        case ModelId::VectorFull: return relax::BoundModel::VectorLiftFull;
        case ModelId::MatrixFull: return relax::BoundModel::MatrixLiftFull;
        case ModelId::ThetaPrimeProduct: return relax::BoundModel::ThetaPrimeProduct;
        case ModelId::MaxKCut: return relax::BoundModel::MaxKCutM;
        default: return relax::BoundModel::EquipartitionM;
    }
}

}  // namespace

BoundReport compute_bound(const std::string& graph_spec, ModelId model, int k,
                          const ComputeOptions& opts) {
    BoundReport r;
    r.graph = graph_spec;
    r.k = k;
    r.model = model_name(model);
    if (is_scheme_model(model)) {
        auto spec = scheme::scheme_for_family_spec(graph_spec);
        r.n = static_cast<int>(spec.n);
        r.m = spec.edge_count();
        r.density_pct = spec.density_percent();
        const double eps = opts.eps > 0 ? opts.eps : 1e-9;
        auto rb = scheme::reduced_bound(spec, to_reduced(model), k, eps);
        r.bound = rb.value;
        r.time_s = rb.result.wall_time_s;
        r.iters = rb.result.iterations;
        r.status = conic::status_name(rb.result.status);
        return r;
    }
    Graph g = graph_from_spec(graph_spec);
    r.n = g.n();
    r.m = static_cast<long long>(g.edge_count());
    r.density_pct = g.n() >= 2 ? g.density_percent() : 0.0;
    relax::BoundOptions bo;
    bo.eps = opts.eps;
    bo.max_iter = opts.max_iter;
    if (model == ModelId::Theta1Bqp) {
        auto outc = relax::solve_theta1_bqp(g, k, opts.bqp_rounds, opts.bqp_max_cuts, bo);
        r.bound = outc.value;
        double total_time = 0.0;
        int total_iters = 0;
        for (const auto& rd : outc.rounds) total_iters += rd.iterations;
        total_time = outc.result.wall_time_s;  // final solve; see cut_rounds for the trail
        r.time_s = total_time;
        r.iters = total_iters;
        r.status = conic::status_name(outc.result.status);
        r.cut_rounds = static_cast<int>(outc.rounds.size()) - 1;
    } else {
        auto sb = relax::solve_bound(g, to_bound_model(model), k, bo, opts.fan_edge_value);
        r.bound = sb.value;
        r.time_s = sb.result.wall_time_s;
        r.iters = sb.result.iterations;
        r.status = conic::status_name(sb.result.status);
    }
    if (opts.with_lb) r.lb = heuristic_lb(g, k, opts.lb_seed);
    return r;
}

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string fmt2(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << round2(v);
    return os.str();
}

}  // namespace

std::string csv_header() { return "graph,n,m,density_pct,k,model,bound,lb,time_s,iters,status"; }

std::string csv_row(const BoundReport& r) {
    std::ostringstream os;
    os << r.graph << ',' << r.n << ',' << r.m << ',' << fmt2(r.density_pct) << ',' << r.k << ','
       << r.model << ',' << fmt2(r.bound) << ',';
    if (r.lb) os << fmt2(*r.lb);
    os << ',' << fmt2(r.time_s) << ',' << r.iters << ',' << r.status;
    return os.str();
}

BoundReport parse_csv_row(const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            f.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    f.push_back(cur);
    if (f.size() != 11) throw std::invalid_argument("csv row: expected 11 fields");
    BoundReport r;
    r.graph = f[0];
    r.n = std::stoi(f[1]);
    r.m = std::stoll(f[2]);
    r.density_pct = std::stod(f[3]);
    r.k = std::stoi(f[4]);
    r.model = f[5];
    r.bound = std::stod(f[6]);
    if (!f[7].empty()) r.lb = std::stod(f[7]);
    r.time_s = std::stod(f[8]);
    r.iters = std::stoi(f[9]);
    r.status = f[10];
    return r;
}

std::string json_row(const BoundReport& r) {
    nlohmann::json j;
    j["graph"] = r.graph;
    j["n"] = r.n;
    j["m"] = r.m;
    j["density_pct"] = r.density_pct;
    j["k"] = r.k;
    j["model"] = r.model;
    j["bound"] = r.bound;
    if (r.lb) j["lb"] = *r.lb;
    j["time_s"] = r.time_s;
    j["iters"] = r.iters;
    j["status"] = r.status;
    if (r.cut_rounds) j["cut_rounds"] = *r.cut_rounds;
    return j.dump();
}

namespace {

ComputeOptions options_from_json(const nlohmann::json& j, ComputeOptions base) {
    if (j.contains("eps")) base.eps = j["eps"].get<double>();
    if (j.contains("max_iter")) base.max_iter = j["max_iter"].get<int>();
    if (j.contains("bqp_rounds")) base.bqp_rounds = j["bqp_rounds"].get<int>();
    if (j.contains("bqp_max_cuts")) base.bqp_max_cuts = j["bqp_max_cuts"].get<int>();
    if (j.contains("fan_edge_value")) base.fan_edge_value = j["fan_edge_value"].get<double>();
    if (j.contains("lb")) base.with_lb = j["lb"].get<bool>();
    return base;
}

}  // namespace

Manifest parse_manifest(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    Manifest m;
    m.defaults = options_from_json(j, ComputeOptions{});
    if (j.contains("out")) m.out_path = j["out"].get<std::string>();
    for (const auto& job : j.value("jobs", nlohmann::json::array())) {
        ManifestJob mj;
        mj.graph = job.at("graph").get<std::string>();
        for (const auto& k : job.at("k")) mj.ks.push_back(k.get<int>());
        for (const auto& name : job.at("models")) {
            auto id = model_from_name(name.get<std::string>());
            if (!id) throw std::invalid_argument("manifest: unknown model " + name.get<std::string>());
            mj.models.push_back(*id);
        }
        mj.opts = options_from_json(job, m.defaults);
        m.jobs.push_back(std::move(mj));
    }
    return m;
}

BenchResult run_manifest(const Manifest& manifest, int jobs) {
    const int njobs = static_cast<int>(manifest.jobs.size());
    std::vector<std::vector<BoundReport>> per_job(njobs);
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            int idx = next.fetch_add(1);
            if (idx >= njobs) break;
            const auto& job = manifest.jobs[idx];
            for (int k : job.ks) {
                for (auto model : job.models) {
                    BoundReport row;
                    try {
                        row = compute_bound(job.graph, model, k, job.opts);
                    } catch (const std::runtime_error& e) {
                        row.graph = job.graph;
                        row.k = k;
                        row.model = model_name(model);
                        row.status = "error:io";
                    } catch (const std::exception& e) {
                        row.graph = job.graph;
                        row.k = k;
                        row.model = model_name(model);
                        row.status = "error:model";
                    }
                    per_job[idx].push_back(std::move(row));
                }
            }
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    BenchResult out;
    for (int i = 0; i < njobs; ++i)
        for (auto& row : per_job[i]) {
            out.model_time_s[row.model] += row.time_s;
            out.rows.push_back(std::move(row));
        }
    return out;
}

std::string bench_to_csv(const BenchResult& r) {
    std::ostringstream os;
    os << csv_header() << '\n';
    for (const auto& row : r.rows) os << csv_row(row) << '\n';
    return os.str();
}

std::string bench_to_json(const BenchResult& r) {
    nlohmann::json j;
    auto rows = nlohmann::json::array();
    for (const auto& row : r.rows) rows.push_back(nlohmann::json::parse(json_row(row)));
    j["rows"] = rows;
    nlohmann::json summary;
    for (const auto& [model, t] : r.model_time_s) summary[model] = t;
    j["summary"]["model_time_s"] = summary;
    return j.dump(2);
}

chrom::PsiResult psi_for_model(const std::string& graph_spec, ModelId model, int k_max,
                               double margin, const ComputeOptions& opts) {
    int n;
    if (is_scheme_model(model)) {
        n = static_cast<int>(scheme::scheme_for_family_spec(graph_spec).n);
    } else {
        n = graph_from_spec(graph_spec).n();
    }
    const double eps_for_margin = opts.eps > 0 ? opts.eps : (is_scheme_model(model) ? 1e-9 : 1e-6);
    if (margin <= 0) margin = chrom::default_margin(eps_for_margin, n);
    auto eval = [&](int k) { return compute_bound(graph_spec, model, k, opts).bound; };
    return chrom::psi_lower_bound(n, eval, k_max, margin, model_name(model));
}

}  // namespace mkcs::report
