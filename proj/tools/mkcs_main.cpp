#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mkcs/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void write_rows(const std::vector<mkcs::report::BoundReport>& rows, const std::string& out_path) {
    if (out_path.empty()) return;
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    if (out_path.size() > 5 && out_path.substr(out_path.size() - 5) == ".json") {
        out << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            out << "  " << mkcs::report::json_row(rows[i]) << (i + 1 < rows.size() ? ",\n" : "\n");
        out << "]\n";
    } else {
        out << mkcs::report::csv_header() << '\n';
        for (const auto& r : rows) out << mkcs::report::csv_row(r) << '\n';
    }
}

int run_bound(const std::string& graph, const std::string& ks, const std::string& models,
              bool bqp, bool lb, double eps, int max_iter, int rounds, const std::string& out_path,
              const std::string& dump_path) {
    mkcs::report::ComputeOptions opts;
    opts.eps = eps;
    opts.max_iter = max_iter;
    opts.bqp_rounds = rounds;
    opts.with_lb = lb;
    std::vector<int> kvals;
    for (const auto& tok : split_csv(ks)) kvals.push_back(std::stoi(tok));
    std::vector<mkcs::report::ModelId> ids;
    for (const auto& name : split_csv(models)) {
        auto id = mkcs::report::model_from_name(name);
        if (!id) {
            std::cerr << "unknown model: " << name << '\n';
            return kExitUsage;
        }
        if (bqp && *id == mkcs::report::ModelId::Theta1) id = mkcs::report::ModelId::Theta1Bqp;
        ids.push_back(*id);
    }
    if (!dump_path.empty() && ids.size() == 1 && kvals.size() == 1 &&
        !mkcs::report::is_scheme_model(ids[0])) {
        auto g = mkcs::graph_from_spec(graph);
        auto built = mkcs::relax::build_theta1(g, kvals[0]);  // overwritten below when needed
        switch (ids[0]) {
            case mkcs::report::ModelId::Theta: built = mkcs::relax::build_theta_k(g, kvals[0]); break;
            case mkcs::report::ModelId::ThetaPrime:
                built = mkcs::relax::build_theta_prime_k(g, kvals[0]);
                break;
            case mkcs::report::ModelId::Theta3: built = mkcs::relax::build_theta3(g, kvals[0]); break;
            case mkcs::report::ModelId::Theta2: built = mkcs::relax::build_theta2(g, kvals[0]); break;
            default: break;
        }
        mkcs::conic::dump_program_json(built.prog, dump_path);
    }
    std::vector<mkcs::report::BoundReport> rows;
    std::cout << mkcs::report::csv_header() << '\n';
    for (int k : kvals) {
        for (auto id : ids) {
            auto row = mkcs::report::compute_bound(graph, id, k, opts);
            rows.push_back(row);
            std::cout << mkcs::report::csv_row(row) << std::endl;
        }
    }
    write_rows(rows, out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified upper bounds and heuristic lower bounds for the maximum k-colorable "
                 "subgraph number, with chromatic-number lower bounds derived from them"};
    app.require_subcommand(1);

    // ---- bound
    std::string graph, ks = "1", models = "theta1", out_path, dump_path;
    bool bqp = false, with_lb = false;
    double eps = 0.0;
    int max_iter = 200000, rounds = 4;
    auto* bound = app.add_subcommand("bound", "compute upper bounds for alpha_k");
    bound->add_option("--graph", graph, "DIMACS path or family:<name>:<params>")->required();
    bound->add_option("--k", ks, "comma-separated color counts");
    bound->add_option("--model", models, "comma-separated model names");
    bound->add_flag("--bqp", bqp, "apply BQP cutting planes to theta1");
    bound->add_flag("--lb", with_lb, "also compute a heuristic lower bound");
    bound->add_option("--eps", eps, "solver tolerance (0 = auto)");
    bound->add_option("--max-iter", max_iter, "solver iteration cap");
    bound->add_option("--rounds", rounds, "cutting-plane rounds");
    bound->add_option("--out", out_path, "write rows to .csv or .json");
    bound->add_option("--dump-program", dump_path, "debug-dump the conic program as JSON");

    // ---- chrom
    std::string cg, cmodel = "theta3";
    int kmax = 8;
    double margin = -1.0, ceps = 0.0;
    auto* chromc = app.add_subcommand("chrom", "lower bound on the chromatic number");
    chromc->add_option("--graph", cg, "DIMACS path or family spec")->required();
    chromc->add_option("--model", cmodel, "upper-bound model driving psi");
    chromc->add_option("--kmax", kmax, "largest k to test");
    chromc->add_option("--margin", margin, "margin guarding solver noise (<=0 = auto)");
    chromc->add_option("--eps", ceps, "solver tolerance (0 = auto)");

    // ---- heur
    std::string hg, method = "best";
    int hk = 1, hiters = 20000, tenure = 10;
    unsigned seed = 0;
    auto* heurc = app.add_subcommand("heur", "heuristic lower bounds for alpha_k");
    heurc->add_option("--graph", hg, "DIMACS path or family spec")->required();
    heurc->add_option("--k", hk, "number of colors");
    heurc->add_option("--method", method, "tabu | product | best");
    heurc->add_option("--seed", seed, "tabu rng seed");
    heurc->add_option("--iters", hiters, "tabu iteration budget");
    heurc->add_option("--tenure", tenure, "tabu tenure");

    // ---- gen
    std::string family, gout;
    long v = -1, d = -1, q = -1, jj = -1, nn = -1, kk = -1, groups = -1, rr = -1, tt = -1;
    long grows = -1, gcols = -1, gdim = -1;
    bool complement_flag = false;
    auto* gen = app.add_subcommand("gen", "write a generated family to DIMACS");
    gen->add_option("--family", family,
                    "kneser|johnson|hamming|hamming_le|complete|cycle|queen|myciel|insertions|"
                    "keller|fatring|petersen")
        ->required();
    gen->add_option("--v", v);
    gen->add_option("--d", d);
    gen->add_option("--q", q);
    gen->add_option("--j", jj);
    gen->add_option("--n", nn);
    gen->add_option("--k", kk);
    gen->add_option("--groups", groups);
    gen->add_option("--r", rr);
    gen->add_option("--t", tt);
    gen->add_option("--rows", grows);
    gen->add_option("--cols", gcols);
    gen->add_option("--dim", gdim);
    gen->add_flag("--complement", complement_flag, "write the complement graph");
    gen->add_option("--out", gout, "output path")->required();

    // ---- bench
    std::string manifest_path, bench_out;
    int jobs = 1;
    auto* bench = app.add_subcommand("bench", "run a manifest of bound jobs");
    bench->add_option("--manifest", manifest_path, "manifest JSON path")->required();
    bench->add_option("--out", bench_out, "output path (.csv or .json), overrides manifest");
    bench->add_option("--jobs", jobs, "parallel jobs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : kExitOk;
    }

    try {
        if (bound->parsed())
            return run_bound(graph, ks, models, bqp, with_lb, eps, max_iter, rounds, out_path,
                             dump_path);
        if (chromc->parsed()) {
            auto id = mkcs::report::model_from_name(cmodel);
            if (!id) {
                std::cerr << "unknown model: " << cmodel << '\n';
                return kExitUsage;
            }
            mkcs::report::ComputeOptions opts;
            opts.eps = ceps;
            auto res = mkcs::report::psi_for_model(cg, *id, kmax, margin, opts);
            for (const auto& e : res.trace) {
                const char* verdict = e.verdict == mkcs::chrom::Verdict::BelowN ? "< n"
                                      : e.verdict == mkcs::chrom::Verdict::Inconclusive
                                          ? "inconclusive"
                                          : ">= n";
                std::cout << "k=" << e.k << " bound=" << e.bound << " [" << verdict << "]\n";
            }
            std::cout << "psi = " << res.psi << '\n';
            return kExitOk;
        }
        if (heurc->parsed()) {
            auto g = mkcs::graph_from_spec(hg);
            int best = 0;
            if (method == "tabu" || method == "best") {
                mkcs::heur::TabuParams params;
                params.max_iterations = hiters;
                params.tenure = tenure;
                params.rng_seed = seed;
                best = std::max(best, mkcs::heur::tabu_lb(g, hk, params).value());
            }
            if (method == "product" || method == "best")
                best = std::max(best, mkcs::heur::product_heuristic_lb(g, hk).value());
            if (method != "tabu" && method != "product" && method != "best") {
                std::cerr << "unknown method: " << method << '\n';
                return kExitUsage;
            }
            std::cout << "lb = " << best << '\n';
            return kExitOk;
        }
        if (gen->parsed()) {
            std::ostringstream spec;
            spec << "family:" << family << ':';
            if (family == "kneser") spec << v << ',' << d;
            else if (family == "johnson") spec << v << ',' << d << ',' << q;
            else if (family == "hamming" || family == "hamming_le") spec << d << ',' << q << ',' << jj;
            else if (family == "complete") spec << (nn >= 0 ? nn : kk);
            else if (family == "cycle") spec << nn;
            else if (family == "queen") spec << grows << ',' << gcols;
            else if (family == "myciel") spec << tt;
            else if (family == "insertions") spec << rr << ',' << tt;
            else if (family == "keller") spec << gdim;
            else if (family == "fatring") spec << nn << ',' << groups;
            else if (family == "petersen") {}
            else {
                std::cerr << "unknown family: " << family << '\n';
                return kExitUsage;
            }
            std::string s = spec.str();
            if (s.back() == ':') s.pop_back();
            if (complement_flag) s = "complement:" + s;
            auto g = mkcs::graph_from_spec(s);
            std::ofstream out(gout);
            if (!out) {
                std::cerr << "cannot write " << gout << '\n';
                return kExitIo;
            }
            out << mkcs::write_dimacs(g);
            std::cout << "wrote " << gout << " (n=" << g.n() << ", m=" << g.edge_count() << ")\n";
            return kExitOk;
        }
        if (bench->parsed()) {
            std::ifstream in(manifest_path);
            if (!in) {
                std::cerr << "cannot read manifest: " << manifest_path << '\n';
                return kExitIo;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            auto manifest = mkcs::report::parse_manifest(buf.str());
            if (!bench_out.empty()) manifest.out_path = bench_out;
            auto result = mkcs::report::run_manifest(manifest, jobs);
            std::string payload;
            bool json = manifest.out_path.size() > 5 &&
                        manifest.out_path.substr(manifest.out_path.size() - 5) == ".json";
            payload = json ? mkcs::report::bench_to_json(result) : mkcs::report::bench_to_csv(result);
            if (manifest.out_path.empty()) {
                std::cout << payload;
            } else {
                std::ofstream out(manifest.out_path);
                if (!out) {
                    std::cerr << "cannot write " << manifest.out_path << '\n';
                    return kExitIo;
                }
                out << payload;
            }
            std::cout << "# summary (per-model aggregate solver seconds)\n";
            for (const auto& [model, t] : result.model_time_s)
                std::cout << "# " << model << ' ' << t << '\n';
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const mkcs::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}
