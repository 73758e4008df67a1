#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mkcs/chrom.hpp"
#include "mkcs/graph.hpp"
#include "mkcs/heur.hpp"
#include "mkcs/relax.hpp"
#include "mkcs/scheme.hpp"

namespace mkcs::report {

/// Every bound the CLI can compute. The *_red entries are the
/// association-scheme reductions and require a scheme family graph spec.
enum class ModelId {
    Theta,
    ThetaPrime,
    Theta3,
    Theta2,
    Theta1,
    Theta1Bqp,
    Fan,
    VectorFull,
    MatrixFull,
    ThetaPrimeProduct,
    MaxKCut,
    Equipartition,
    ThetaRed,
    ThetaPrimeRed,
    Theta3Red,
    Theta2Red,
    Theta1Red,
};

std::optional<ModelId> model_from_name(const std::string& name);
std::string model_name(ModelId id);
std::vector<std::string> all_model_names();
bool is_scheme_model(ModelId id);

struct ComputeOptions {
    double eps = 0.0;  // 0 = auto
    int max_iter = 200000;
    int bqp_rounds = 4;
    int bqp_max_cuts = -1;  // -1 = 2n
    double fan_edge_value = 0.0;
    bool with_lb = false;  // also run the heuristics and fill lb
    unsigned lb_seed = 0;
};

struct BoundReport {
    std::string graph;
    int n = 0;
    long long m = 0;
    double density_pct = 0.0;
    int k = 0;
    std::string model;
    double bound = 0.0;
    std::optional<double> lb;
    double time_s = 0.0;
    int iters = 0;
    std::string status;
    std::optional<int> cut_rounds;
};

/// One bound evaluation; graph_spec is a DIMACS path or family spec.
BoundReport compute_bound(const std::string& graph_spec, ModelId model, int k,
                          const ComputeOptions& opts = {});

/// Best-of-both-heuristics lower bound.
int heuristic_lb(const Graph& g, int k, unsigned seed = 0);

std::string csv_header();
std::string csv_row(const BoundReport& r);
BoundReport parse_csv_row(const std::string& line);
std::string json_row(const BoundReport& r);  // full precision

struct ManifestJob {
    std::string graph;
    std::vector<int> ks;
    std::vector<ModelId> models;
    ComputeOptions opts;
};

struct Manifest {
    std::vector<ManifestJob> jobs;
    ComputeOptions defaults;
    std::string out_path;
};

Manifest parse_manifest(const std::string& json_text);

struct BenchResult {
    std::vector<BoundReport> rows;                 // manifest order
    std::map<std::string, double> model_time_s;    // per-model aggregate solver time
};

/// Runs every job (optionally across `jobs` worker threads); per-job errors
/// become rows with an error status and the run continues.
BenchResult run_manifest(const Manifest& manifest, int jobs = 1);

std::string bench_to_csv(const BenchResult& r);
std::string bench_to_json(const BenchResult& r);

/// Psi driver with the model dispatched through compute_bound. margin <= 0
/// picks the default max(0.01, 10*eps*n).
chrom::PsiResult psi_for_model(const std::string& graph_spec, ModelId model, int k_max,
                               double margin = -1.0, const ComputeOptions& opts = {});

}  // namespace mkcs::report
