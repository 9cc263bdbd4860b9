#include "metriclust/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "metriclust/datagen.hpp"
#include "metriclust/eval.hpp"
#include "metriclust/ingest.hpp"
#include "metriclust/kmeans.hpp"
#include "metriclust/linalg.hpp"
#include "metriclust/maha.hpp"
#include "metriclust/preprocess.hpp"

namespace metriclust::cli {

namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    return rows;
}

Json centroids_json(const std::vector<Vector>& centroids) {
    Json rows = Json::array();
    for (const auto& c : centroids) rows.push_back(c);
    return rows;
}

void write_json(const fs::path& path, const Json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw data_error("write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw data_error("cannot create output directory " + dir.string());
}

/// Dataset as loaded plus the matrix the algorithms see.
struct Prepared {
    LabeledDataset raw;
    DataMatrix points;
    std::optional<StandardizationParams> scaling;

    bool labelled() const { return !raw.labels.empty(); }
};

Prepared prepare(const RunConfig& cfg) {
    Prepared p;
    if (cfg.uses_simulation()) {
        p.raw = simulate_benchmark(cfg.data_seed.value_or(cfg.seed));
    } else {
        DatasetSchema schema;
        schema.feature_columns = cfg.features;
        if (!cfg.label_col.empty()) schema.label_column = cfg.label_col;
        schema.class_filter = cfg.classes;
        schema.rename = cfg.rename;
        p.raw = load_csv(cfg.data, schema);
    }
    if (cfg.standardize) {
        auto s = standardize(p.raw.data);
        p.points = std::move(s.data);
        p.scaling = std::move(s.params);
    } else {
        p.points = p.raw.data;
    }
    return p;
}

Json scaling_json(const Prepared& p) {
    if (!p.scaling) return nullptr;
    Json zero = Json::array();
    for (std::size_t j = 0; j < p.scaling->zero_variance.size(); ++j)
        if (p.scaling->zero_variance[j]) zero.push_back(p.raw.feature_names.at(j));
    return Json{{"mean", p.scaling->mean}, {"sd", p.scaling->sd}, {"zero_variance_columns", zero}};
}

std::vector<Vector> class_means(const DataMatrix& points, const Labels& labels, std::size_t classes) {
    std::vector<Vector> means(classes, Vector(points.cols(), 0.0));
    std::vector<std::size_t> counts(classes, 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        ++counts[c];
        for (std::size_t j = 0; j < points.cols(); ++j) means[c][j] += points(i, j);
    }
    for (std::size_t c = 0; c < classes; ++c)
        if (counts[c] > 0)
            for (double& v : means[c]) v /= static_cast<double>(counts[c]);
    return means;
}

Json evaluation_json(const Prepared& p, const Labels& predicted, std::size_t k) {
    if (!p.labelled()) return nullptr;
    const auto cm = confusion(p.raw.labels, predicted, p.raw.class_count(), k);
    Json grid = Json::array();
    for (std::size_t t = 0; t < cm.true_classes(); ++t) {
        Json row = Json::array();
        for (std::size_t c = 0; c < cm.predicted_clusters(); ++c) row.push_back(cm.at(t, c));
        grid.push_back(row);
    }
    Json doc{{"true_classes", p.raw.class_names},
             {"confusion", grid},
             {"row_totals", cm.row_totals()},
             {"col_totals", cm.col_totals()}};
    if (std::max(cm.true_classes(), cm.predicted_clusters()) > kMaxAlignClusters) {
        doc["permutation"] = nullptr;
        doc["misclassified"] = nullptr;
        doc["per_cluster_correct"] = nullptr;
    } else {
        const auto aligned = align_and_score(cm);
        doc["permutation"] = aligned.permutation;
        doc["misclassified"] = aligned.misclassified;
        doc["per_cluster_correct"] = aligned.per_cluster_correct;
    }
    Json bars = Json::array();
    for (std::size_t c = 0; c < cm.predicted_clusters(); ++c)
        for (std::size_t t = 0; t < cm.true_classes(); ++t)
            bars.push_back(Json{{"cluster", c}, {"true_class", t}, {"count", cm.at(t, c)}});
    doc["bars"] = bars;
    return doc;
}

Json result_json(const Prepared& p, const ClusteringResult& r, std::size_t k) {
    std::vector<std::size_t> sizes(k, 0);
    for (int l : r.labels) ++sizes[static_cast<std::size_t>(l)];
    return Json{{"wss", r.wss},
                {"iterations", r.iterations_run},
                {"converged", r.converged},
                {"restart_index", r.restart_index},
                {"cluster_sizes", sizes},
                {"evaluation", evaluation_json(p, r.labels, k)}};
}

Json restarts_json(const ClusteringResult& r) {
    Json rows = Json::array();
    for (const auto& d : r.restarts) {
        rows.push_back(Json{{"seed", d.seed},
                            {"wss", d.wss},
                            {"iterations", d.iterations},
                            {"converged", d.converged},
                            {"empty_repairs", d.empty_repairs}});
    }
    return rows;
}

/// Plot coordinates: the clustered space itself when it is at most 2-D,
/// otherwise the first two principal component scores.
struct PlotSpace {
    std::string kind;
    std::vector<std::string> axes;
    DataMatrix coords;
    std::optional<PcaModel> pca;

    std::vector<Vector> map(const std::vector<Vector>& pts) const {
        if (!pca) return pts;
        const DataMatrix projected = pca_project(*pca, make_data(pts), coords.cols());
        std::vector<Vector> out;
        for (std::size_t i = 0; i < projected.rows(); ++i)
            out.emplace_back(projected.row(i).begin(), projected.row(i).end());
        return out;
    }
};

PlotSpace plot_space(const Prepared& p) {
    PlotSpace space;
    if (p.points.cols() <= 2) {
        space.kind = "data";
        space.axes = p.raw.feature_names;
        space.coords = p.points;
    } else {
        space.kind = "pca";
        space.axes = {"PC1", "PC2"};
        space.pca = pca_fit(p.points);
        space.coords = pca_project(*space.pca, p.points, 2);
    }
    return space;
}

Json scatter_json(const Prepared& p, const PlotSpace& space, const Labels& predicted, const Labels* phase1) {
    Json points = Json::array();
    for (std::size_t i = 0; i < space.coords.rows(); ++i) {
        Json pt{{"coords", std::vector<double>(space.coords.row(i).begin(), space.coords.row(i).end())},
                {"true", p.labelled() ? Json(p.raw.labels[i]) : Json(nullptr)},
                {"predicted", predicted[i]}};
        if (phase1) pt["phase1"] = (*phase1)[i];
        points.push_back(pt);
    }
    return Json{{"coordinates", space.kind}, {"axes", space.axes}, {"points", points}};
}

void collect(std::vector<std::string>& into, const std::vector<std::string>& more) {
    into.insert(into.end(), more.begin(), more.end());
}

void raise_if_any(const std::vector<std::string>& problems) {
    if (problems.empty()) return;
    throw config_error("invalid configuration:\n  - " + join(problems, "\n  - "));
}

int cmd_simulate(std::uint64_t seed, const std::string& out_path, std::ostream& out) {
    const auto ds = simulate_benchmark(seed);
    const fs::path path(out_path);
    if (path.has_parent_path()) ensure_dir(path.parent_path());
    write_csv(path, ds);
    out << "wrote " << ds.data.rows() << " rows to " << path.string() << '\n';
    return ok;
}

int cmd_cluster(const RunConfig& cfg, std::ostream& out) {
    raise_if_any(validate(cfg, "cluster"));
    const Prepared p = prepare(cfg);
    const std::size_t n = p.points.rows();

    MahaConfig maha;
    KMeansConfig km;
    std::vector<std::string> problems;
    if (cfg.mahalanobis) {
        maha.k = cfg.k;
        maha.euclid_iter = cfg.euclid_iter;
        maha.euclid_starts = cfg.euclid_starts;
        maha.maha_iter = cfg.maha_iter;
        maha.seed = cfg.seed;
        maha.min_cluster_for_cov = cfg.min_cluster_for_cov;
        maha.threads = cfg.threads;
        collect(problems, validate(maha, n));
    } else {
        km.k = cfg.k;
        km.max_iter = cfg.max_iter;
        km.n_start = cfg.n_start;
        km.metric = parse_metric(cfg.metric);
        km.seed = cfg.seed;
        km.kmeans_pp = cfg.kmeans_pp;
        km.threads = cfg.threads;
        collect(problems, validate(km, n));
    }
    raise_if_any(problems);

    const fs::path dir(cfg.out);
    ensure_dir(dir);
    const PlotSpace space = plot_space(p);

    Json report{{"command", "cluster"},
                {"algorithm", cfg.mahalanobis ? "mahalanobis" : "kmeans"},
                {"metric", cfg.mahalanobis ? "mahalanobis" : to_string(km.metric)},
                {"k", cfg.k},
                {"n", n},
                {"d", p.points.cols()},
                {"seed", cfg.seed},
                {"features", p.raw.feature_names},
                {"standardization", scaling_json(p)}};
    Json centroids{{"space", cfg.standardize ? "standardized" : "raw"},
                   {"plot_coordinates", space.kind}};
    if (p.labelled()) {
        const auto truth = class_means(p.points, p.raw.labels, p.raw.class_count());
        centroids["true"] = centroids_json(truth);
        centroids["true_plot"] = centroids_json(space.map(truth));
    }

    const ClusteringResult* final_result = nullptr;
    MahaResult two_phase;
    ClusteringResult single;
    Json scatter;
    if (cfg.mahalanobis) {
        two_phase = mahalanobis_kmeans(p.points, maha);
        final_result = &two_phase.final;
        report["phase1"] = result_json(p, two_phase.phase1, cfg.k);
        report["phase1"]["restarts"] = restarts_json(two_phase.phase1);
        report["final"] = result_json(p, two_phase.final, cfg.k);
        Json rank = Json::array();
        for (const auto& s : two_phase.final_stats) rank.push_back(s.rank_deficient);
        report["phase2"] = Json{{"iterations", two_phase.maha_iterations},
                                {"converged", two_phase.converged},
                                {"empty_repairs", two_phase.empty_repairs},
                                {"label_changes", two_phase.label_changes},
                                {"rank_deficient", rank}};
        centroids["phase1"] = centroids_json(two_phase.phase1.centroids);
        centroids["phase1_plot"] = centroids_json(space.map(two_phase.phase1.centroids));
        scatter = scatter_json(p, space, two_phase.final.labels, &two_phase.phase1.labels);
    } else {
        single = kmeans(p.points, km);
        final_result = &single;
        report["final"] = result_json(p, single, cfg.k);
        report["final"]["restarts"] = restarts_json(single);
        scatter = scatter_json(p, space, single.labels, nullptr);
    }
    centroids["fitted"] = centroids_json(final_result->centroids);
    centroids["fitted_plot"] = centroids_json(space.map(final_result->centroids));

    write_json(dir / "config.json", to_json(cfg));
    write_json(dir / "report.json", report);
    write_json(dir / "scatter.json", scatter);
    write_json(dir / "centroids.json", centroids);

    out << "wss " << format_real(final_result->wss);
    if (const auto& ev = report["final"]["evaluation"]; !ev.is_null() && !ev["misclassified"].is_null()) {
        if (cfg.mahalanobis) {
            out << ", misclassified " << report["phase1"]["evaluation"]["misclassified"].get<std::size_t>()
                << " -> " << ev["misclassified"].get<std::size_t>();
        } else {
            out << ", misclassified " << ev["misclassified"].get<std::size_t>();
        }
        out << " of " << n;
    }
    out << "; outputs in " << dir.string() << '\n';
    return ok;
}

int cmd_scree(const RunConfig& cfg, std::ostream& out) {
    raise_if_any(validate(cfg, "scree"));
    const Prepared p = prepare(cfg);
    KMeansConfig km;
    km.max_iter = cfg.max_iter;
    km.n_start = cfg.n_start;
    km.metric = parse_metric(cfg.metric);
    km.seed = cfg.seed;
    km.kmeans_pp = cfg.kmeans_pp;
    km.threads = cfg.threads;
    km.k = cfg.k_max;
    raise_if_any(validate(km, p.points.rows()));

    std::vector<std::size_t> ks;
    for (std::size_t k = cfg.k_min; k <= cfg.k_max; ++k) ks.push_back(k);
    const auto curve = scree(p.points, ks, km);
    const auto drop = largest_relative_drop(curve);

    Json points = Json::array();
    for (const auto& pt : curve) points.push_back(Json{{"k", pt.k}, {"wss", pt.wss}});
    const Json doc{{"command", "scree"},
                   {"metric", to_string(km.metric)},
                   {"seed", cfg.seed},
                   {"points", points},
                   {"largest_drop_k", drop ? Json(*drop) : Json(nullptr)}};
    const fs::path dir(cfg.out);
    ensure_dir(dir);
    write_json(dir / "config.json", to_json(cfg));
    write_json(dir / "scree.json", doc);
    out << "largest relative drop at k=" << (drop ? std::to_string(*drop) : "n/a") << "; wrote "
        << (dir / "scree.json").string() << '\n';
    return ok;
}

int cmd_project(const RunConfig& cfg, std::ostream& out) {
    raise_if_any(validate(cfg, "project"));
    const Prepared p = prepare(cfg);
    if (cfg.components > p.points.cols()) {
        raise_if_any({"components (" + std::to_string(cfg.components) + ") exceeds data dimension (" +
                      std::to_string(p.points.cols()) + ")"});
    }
    const PcaModel model = pca_fit(p.points);
    const DataMatrix scores = pca_project(model, p.points, cfg.components);

    Vector cumulative;
    double run = 0.0;
    for (double r : model.explained_variance_ratio) cumulative.push_back(run += r);
    Json score_rows = Json::array();
    for (std::size_t i = 0; i < scores.rows(); ++i)
        score_rows.push_back(std::vector<double>(scores.row(i).begin(), scores.row(i).end()));

    const Json doc{{"command", "project"},
                   {"features", p.raw.feature_names},
                   {"standardized", cfg.standardize},
                   {"eigenvalues", model.eigenvalues},
                   {"explained_variance_ratio", model.explained_variance_ratio},
                   {"cumulative_ratio", cumulative},
                   {"components", matrix_json(model.components)},
                   {"scores", score_rows},
                   {"true_classes", p.raw.class_names},
                   {"labels", p.labelled() ? Json(p.raw.labels) : Json(nullptr)}};
    const fs::path dir(cfg.out);
    ensure_dir(dir);
    write_json(dir / "config.json", to_json(cfg));
    write_json(dir / "pca.json", doc);
    const std::size_t shown = std::min<std::size_t>(2, cumulative.size());
    out << "cumulative explained variance (" << shown << " components): "
        << format_real(cumulative[shown - 1]) << "; wrote " << (dir / "pca.json").string() << '\n';
    return ok;
}

void add_data_options(CLI::App& cmd, RunConfig& cfg, std::uint64_t& data_seed, std::string& features,
                      std::string& classes, std::string& rename, bool& no_standardize) {
    cmd.add_option("--data", cfg.data, "'sim' for the built-in two-Gaussian benchmark, or a CSV path");
    cmd.add_option("--data-seed", data_seed, "Seed for --data sim (defaults to --seed)");
    cmd.add_option("--features", features, "Comma-separated feature columns (CSV)");
    cmd.add_option("--label-col", cfg.label_col, "Class label column (CSV)");
    cmd.add_option("--classes", classes, "Comma-separated classes to keep, in label order (CSV)");
    cmd.add_option("--rename", rename, "Header renames, Old=New,Other=Name (CSV)");
    cmd.add_flag("--no-standardize", no_standardize, "Cluster the raw columns");
    cmd.add_option("--seed", cfg.seed, "Algorithm seed");
    cmd.add_option("--threads", cfg.threads, "Restart worker threads (default METRICLUST_THREADS or all cores)");
    cmd.add_option("--out", cfg.out, "Output directory");
}

void add_kmeans_options(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--metric", cfg.metric, "euclidean | manhattan | maximum | minkowski:<p>");
    cmd.add_option("--max-iter", cfg.max_iter, "Iteration cap per start");
    cmd.add_option("--n-start", cfg.n_start, "Number of random starts");
    cmd.add_flag("--kmeans-pp", cfg.kmeans_pp, "k-means++ seeding instead of uniform row sampling");
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].starts_with("--config=")) return args[i].substr(9);
    }
    return std::nullopt;
}

}  // namespace

ExitCode exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return config_failure;
        case ErrorKind::data: return data_failure;
        case ErrorKind::numerical: return numerical_failure;
    }
    return numerical_failure;
}

Json to_json(const RunConfig& cfg) {
    Json rename = Json::object();
    for (const auto& [from, to] : cfg.rename) rename[from] = to;
    return Json{{"data", cfg.data},
                {"data_seed", cfg.data_seed ? Json(*cfg.data_seed) : Json(nullptr)},
                {"features", cfg.features},
                {"label_col", cfg.label_col},
                {"classes", cfg.classes},
                {"rename", rename},
                {"standardize", cfg.standardize},
                {"metric", cfg.metric},
                {"mahalanobis", cfg.mahalanobis},
                {"k", cfg.k},
                {"max_iter", cfg.max_iter},
                {"n_start", cfg.n_start},
                {"euclid_iter", cfg.euclid_iter},
                {"euclid_starts", cfg.euclid_starts},
                {"maha_iter", cfg.maha_iter},
                {"min_cluster_for_cov", cfg.min_cluster_for_cov ? Json(*cfg.min_cluster_for_cov) : Json(nullptr)},
                {"kmeans_pp", cfg.kmeans_pp},
                {"seed", cfg.seed},
                {"k_min", cfg.k_min},
                {"k_max", cfg.k_max},
                {"components", cfg.components},
                {"out", cfg.out}};
}

RunConfig run_config_from_json(const Json& doc) {
    RunConfig cfg;
    try {
        auto get = [&](const char* key, auto& field) {
            if (doc.contains(key) && !doc.at(key).is_null()) doc.at(key).get_to(field);
        };
        get("data", cfg.data);
        if (doc.contains("data_seed") && !doc.at("data_seed").is_null()) {
            cfg.data_seed = doc.at("data_seed").get<std::uint64_t>();
        }
        get("features", cfg.features);
        get("label_col", cfg.label_col);
        get("classes", cfg.classes);
        get("rename", cfg.rename);
        get("standardize", cfg.standardize);
        get("metric", cfg.metric);
        get("mahalanobis", cfg.mahalanobis);
        get("k", cfg.k);
        get("max_iter", cfg.max_iter);
        get("n_start", cfg.n_start);
        get("euclid_iter", cfg.euclid_iter);
        get("euclid_starts", cfg.euclid_starts);
        get("maha_iter", cfg.maha_iter);
        if (doc.contains("min_cluster_for_cov") && !doc.at("min_cluster_for_cov").is_null()) {
            cfg.min_cluster_for_cov = doc.at("min_cluster_for_cov").get<std::size_t>();
        }
        get("kmeans_pp", cfg.kmeans_pp);
        get("seed", cfg.seed);
        get("k_min", cfg.k_min);
        get("k_max", cfg.k_max);
        get("components", cfg.components);
        get("out", cfg.out);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config document: ") + e.what());
    }
    return cfg;
}

std::vector<std::string> validate(const RunConfig& cfg, const std::string& command) {
    std::vector<std::string> problems;
    if (cfg.data.empty()) problems.emplace_back("--data is required ('sim' or a CSV path)");
    if (cfg.uses_simulation()) {
        if (!cfg.features.empty()) problems.emplace_back("--features applies to CSV data only");
        if (!cfg.label_col.empty()) problems.emplace_back("--label-col applies to CSV data only");
        if (!cfg.classes.empty()) problems.emplace_back("--classes applies to CSV data only");
    } else {
        DatasetSchema schema;
        schema.feature_columns = cfg.features;
        if (!cfg.label_col.empty()) schema.label_column = cfg.label_col;
        schema.class_filter = cfg.classes;
        collect(problems, validate(schema));
    }
    if (cfg.out.empty()) problems.emplace_back("--out is required");

    if (command == "cluster" || command == "scree") {
        const bool maha = command == "cluster" && cfg.mahalanobis;
        if (!maha) {
            try {
                const Metric m = parse_metric(cfg.metric);
                if (m.kind == MetricKind::mahalanobis) {
                    problems.emplace_back(command == "cluster"
                                              ? "metric 'mahalanobis' runs through --mahalanobis"
                                              : "scree supports point metrics only");
                }
            } catch (const Error& e) {
                problems.emplace_back(e.what());
            }
            if (cfg.max_iter < 1) problems.emplace_back("--max-iter must be >= 1");
            if (cfg.n_start < 1) problems.emplace_back("--n-start must be >= 1");
        } else {
            if (cfg.euclid_iter < 1) problems.emplace_back("--euclid-iter must be >= 1");
            if (cfg.euclid_starts < 1) problems.emplace_back("--euclid-starts must be >= 1");
            if (cfg.maha_iter < 1) problems.emplace_back("--maha-iter must be >= 1");
        }
    }
    if (command == "cluster" && cfg.k < 1) problems.emplace_back("--k must be >= 1");
    if (command == "scree") {
        if (cfg.k_min < 1) problems.emplace_back("--k-min must be >= 1");
        if (cfg.k_max < cfg.k_min) problems.emplace_back("--k-max must be >= --k-min");
    }
    if (command == "project" && cfg.components < 1) problems.emplace_back("--components must be >= 1");
    return problems;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::uint64_t sim_seed = 1;
    std::string sim_out;
    std::uint64_t data_seed = 0;
    std::string features;
    std::string classes;
    std::string rename;
    std::string config_path;
    bool no_standardize = false;

    try {
        if (const auto path = find_config_path(args)) {
            std::ifstream in(*path);
            if (!in) throw config_error("cannot open config " + *path);
            Json doc;
            try {
                doc = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw config_error("config " + *path + ": " + e.what());
            }
            cfg = run_config_from_json(doc);
        }

        CLI::App app{"metriclust: k-means clustering under several distance measures"};
        app.require_subcommand(1);

        auto* simulate = app.add_subcommand("simulate", "Write the two-Gaussian benchmark as CSV");
        simulate->add_option("--seed", sim_seed, "Generator seed");
        simulate->add_option("--out", sim_out, "Output CSV path")->required();

        auto* cluster = app.add_subcommand("cluster", "Cluster a dataset and emit report and plot data");
        auto* scree_cmd = app.add_subcommand("scree", "Within-cluster sum of squares over a range of k");
        auto* project = app.add_subcommand("project", "Principal component projection");
        for (auto* cmd : {cluster, scree_cmd, project}) {
            cmd->add_option("--config", config_path, "RunConfig JSON; command-line flags override it");
            add_data_options(*cmd, cfg, data_seed, features, classes, rename, no_standardize);
        }
        add_kmeans_options(*cluster, cfg);
        cluster->add_option("--k", cfg.k, "Number of clusters");
        cluster->add_flag("--mahalanobis", cfg.mahalanobis, "Two-phase Euclidean then Mahalanobis procedure");
        cluster->add_option("--euclid-iter", cfg.euclid_iter, "Phase-1 iteration cap");
        cluster->add_option("--euclid-starts", cfg.euclid_starts, "Phase-1 random starts");
        cluster->add_option("--maha-iter", cfg.maha_iter, "Phase-2 pass limit");
        auto* min_cov = cluster->add_option("--min-cluster-for-cov", "Smallest cluster given a full inverse (default d+2)")
                            ->check(CLI::PositiveNumber);
        add_kmeans_options(*scree_cmd, cfg);
        scree_cmd->add_option("--k-min", cfg.k_min, "Smallest k");
        scree_cmd->add_option("--k-max", cfg.k_max, "Largest k");
        project->add_option("--components", cfg.components, "Number of score columns");

        std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
        std::reverse(rest.begin(), rest.end());
        try {
            app.parse(rest);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
            app.exit(e, out, err);
            return config_failure;
        }

        if (simulate->parsed()) return cmd_simulate(sim_seed, sim_out, out);

        CLI::App* active = cluster->parsed() ? cluster : scree_cmd->parsed() ? scree_cmd : project;
        if (active->count("--data-seed") > 0) cfg.data_seed = data_seed;
        if (active->count("--features") > 0) cfg.features = split_list(features);
        if (active->count("--classes") > 0) cfg.classes = split_list(classes);
        if (active->count("--rename") > 0) cfg.rename = parse_rename_map(rename);
        if (no_standardize) cfg.standardize = false;
        if (active == cluster && min_cov->count() > 0) cfg.min_cluster_for_cov = min_cov->as<std::size_t>();

        if (active == cluster) return cmd_cluster(cfg, out);
        if (active == scree_cmd) return cmd_scree(cfg, out);
        return cmd_project(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return data_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return config_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return numerical_failure;
    }
}

}  // namespace metriclust::cli
