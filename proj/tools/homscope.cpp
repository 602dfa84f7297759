// homscope command-line front end. JSON goes to stdout; --verbose tables go to stderr.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "homscope/homscope.hpp"

namespace fs = std::filesystem;
using namespace homscope;

namespace {

enum Exit : int {
    ok = 0,
    usage = 1,
    parse_failure = 2,
    invariant_failure = 3,
    resource_failure = 4,
    degenerate_strict = 5,
    internal_failure = 6,
};

/// Named pattern (P3, K3, C4, PAW, vertex) or edge-list file.
Graph load_graph(const std::string & token)
{
    if (fs::is_regular_file(token))
        return read_edge_list_file(token);
    try {
        return parse_pattern_name(token);
    }
    catch (const ParseError &) {
        throw ParseError("'" + token + "' is neither a file nor a pattern name");
    }
}

Task parse_task(const std::string & s)
{
    if (s == "graph")
        return Task::graph;
    if (s == "node")
        return Task::node;
    throw InvalidArgument("task must be graph or node, got '" + s + "'");
}

struct DatasetArgs {
    std::string path;
    std::string name;
    std::string task;

    void add_to(CLI::App * cmd)
    {
        cmd->add_option("--dataset", path, "TU directory or dataset JSON file")->required();
        cmd->add_option("--name", name, "TU dataset name (default: directory name)");
        cmd->add_option("--task", task, "graph or node")->check(CLI::IsMember({"graph", "node"}));
    }

    GraphDataset load() const
    {
        if (fs::is_directory(path)) {
            auto n = name.empty() ? fs::path(path).lexically_normal().filename().string() : name;
            if (n.empty())
                n = fs::path(path).lexically_normal().parent_path().filename().string();
            return parse_tu_dataset(path, n, task.empty() ? Task::graph : parse_task(task));
        }
        auto ds = read_dataset_json(path);
        if (!task.empty() && parse_task(task) != ds.task)
            throw InvalidArgument("dataset '" + path + "' is a " + to_string(ds.task) + "-level dataset");
        return ds;
    }
};

void write_output(const std::string & path, const std::string & text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidArgument("cannot write '" + path + "'");
    out << text;
}

std::string dump(const Json & j) { return j.dump(2) + "\n"; }

void print_bound_table(const BoundReport & r)
{
    std::cerr << std::left << std::setw(6) << "class" << std::setw(8) << "m_c" << std::setw(8) << "pair"
              << std::setw(14) << (r.task == Task::graph ? "beta" : "alpha") << std::setw(14) << "div"
              << std::setw(14) << "conc" << "flag\n";
    for (const auto & t : r.classes)
        std::cerr << std::setw(6) << t.c << std::setw(8) << t.m_c << std::setw(8) << t.pair_size << std::setw(14)
                  << t.beta << std::setw(14) << t.div_term << std::setw(14) << t.conc_term
                  << (t.degenerate ? "degenerate" : "") << "\n";
    std::cerr << "m=" << r.m << " residual=" << r.residual << " bound=" << r.bound << "\n";
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"homscope: homomorphism counts, F-WL features and generalization bounds"};
    app.set_config("--config", "", "key=value config file; command-line flags take precedence");
    app.require_subcommand(1);

    // hom
    auto * hom = app.add_subcommand("hom", "count maps from a pattern into a host");
    std::string hom_pattern, hom_host, hom_mode = "hom";
    std::optional<Vertex> hom_pattern_root, hom_host_root;
    std::uint64_t budget = CountOptions{}.max_search_nodes;
    hom->add_option("--pattern", hom_pattern, "pattern name or edge-list file")->required();
    hom->add_option("--host", hom_host, "host name or edge-list file")->required();
    hom->add_option("--mode", hom_mode, "hom|inj|surj|epi|aut|sub")
        ->check(CLI::IsMember({"hom", "inj", "surj", "epi", "aut", "sub"}));
    hom->add_option("--pattern-root", hom_pattern_root, "root of the pattern (rooted hom count)");
    hom->add_option("--host-root", hom_host_root, "root of the host (rooted hom count)");
    hom->add_option("--budget", budget, "search-node budget");

    // spasm
    auto * sp = app.add_subcommand("spasm", "homomorphic images of a pattern with inversion coefficients");
    std::string sp_pattern;
    sp->add_option("--pattern", sp_pattern, "pattern name or edge-list file")->required();

    // matrix
    auto * mx = app.add_subcommand("matrix", "hom matrix of a pattern set, its rank and redundant patterns");
    std::string mx_patterns, mx_literal, mx_csv;
    auto * mx_p = mx->add_option("--patterns", mx_patterns, "comma-separated pattern names or files");
    auto * mx_l = mx->add_option("--literal", mx_literal, "CSV file holding a given matrix");
    mx_p->excludes(mx_l);
    mx->add_option("--csv", mx_csv, "also write the matrix as CSV to this file ('-' for stdout only CSV)");

    // featurize
    auto * ft = app.add_subcommand("featurize", "F-WL colour-histogram features of a dataset");
    DatasetArgs ft_data;
    ft_data.add_to(ft);
    std::string ft_patterns = "vertex", ft_level = "graph", ft_out, ft_format;
    std::size_t ft_depth = 1;
    bool ft_ego = false;
    ft->add_option("--patterns", ft_patterns, "comma-separated pattern names or files");
    ft->add_option("--depth", ft_depth, "refinement depth L");
    ft->add_option("--level", ft_level, "graph or node")->check(CLI::IsMember({"graph", "node"}));
    ft->add_flag("--ego", ft_ego, "node level: refine each node's L-hop ego-graph on its own");
    ft->add_option("--out", ft_out, "output file (default stdout)");
    ft->add_option("--format", ft_format, "csv or json (default from --out extension, else json)")
        ->check(CLI::IsMember({"csv", "json"}));

    // bound
    auto * bd = app.add_subcommand("bound", "data-dependent generalization bound");
    DatasetArgs bd_data;
    bd_data.add_to(bd);
    std::string bd_patterns = "vertex", bd_kl = "knn", bd_csv;
    std::size_t bd_depth = 1, bd_pairs = 1, bd_k = 1, bd_repeats = 0;
    double bd_delta = 0.01;
    std::optional<double> bd_lip;
    std::uint64_t bd_seed = 0;
    bool bd_ego = false, bd_strict = false, bd_verbose = false;
    bd->add_option("--patterns", bd_patterns, "comma-separated pattern names or files");
    bd->add_option("--depth", bd_depth, "refinement depth L");
    bd->add_option("--n-pairs", bd_pairs, "sample pairs per class");
    bd->add_option("--delta", bd_delta, "confidence parameter");
    bd->add_option("--lip-over-gamma", bd_lip, "L_c/gamma (default 3 for graph, 6 for node tasks)");
    bd->add_option("--seed", bd_seed, "sampling seed");
    bd->add_option("--knn-k", bd_k, "k-NN order of the KL estimator");
    bd->add_option("--kl-method", bd_kl, "knn or plugin")->check(CLI::IsMember({"knn", "plugin"}));
    bd->add_option("--repeats", bd_repeats, "Monte-Carlo repeats of the expectation surrogate");
    bd->add_flag("--ego", bd_ego, "node task: ego-graph featurization");
    bd->add_flag("--strict", bd_strict, "exit with an error when a class is degenerate");
    bd->add_flag("--verbose", bd_verbose, "print a table to stderr");
    bd->add_option("--csv", bd_csv, "append a summary row to this CSV file");

    // shearer
    auto * sh = app.add_subcommand("shearer", "Shearer coefficient of a pattern against the edge");
    std::string sh_pattern;
    sh->add_option("--pattern", sh_pattern, "pattern name or edge-list file")->required();

    // convert
    auto * cv = app.add_subcommand("convert", "convert a TU dataset directory to dataset JSON");
    DatasetArgs cv_data;
    cv_data.add_to(cv);
    std::string cv_out;
    cv->add_option("--out", cv_out, "output file (default stdout)");

    // trees
    auto * tr = app.add_subcommand("trees", "enumerate F-pattern trees");
    std::string tr_patterns = "vertex";
    std::size_t tr_depth = 1, tr_budget = 8;
    tr->add_option("--patterns", tr_patterns, "comma-separated pattern names or files");
    tr->add_option("--depth", tr_depth, "backbone depth L");
    tr->add_option("--budget", tr_budget, "maximum vertex count of a tree");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return Exit::usage;
    }

    try {
        CountOptions counting;
        counting.max_search_nodes = budget;

        if (*hom) {
            const auto f = load_graph(hom_pattern);
            const auto g = load_graph(hom_host);
            Count c;
            if (hom_pattern_root || hom_host_root) {
                if (!hom_pattern_root || !hom_host_root || hom_mode != "hom")
                    throw InvalidArgument("rooted counts need --pattern-root, --host-root and --mode hom");
                c = count_hom_rooted(RootedGraph(f, *hom_pattern_root), RootedGraph(g, *hom_host_root), counting);
            }
            else if (hom_mode == "hom")
                c = count_hom(f, g, counting);
            else if (hom_mode == "inj")
                c = count_inj(f, g, counting);
            else if (hom_mode == "surj")
                c = count_surj(f, g, counting);
            else if (hom_mode == "epi")
                c = count_edge_surj(f, g, counting);
            else if (hom_mode == "aut")
                c = count_aut(f, counting);
            else
                c = count_sub(f, g, counting);
            std::cout << c << "\n";
        }
        else if (*sp) {
            std::cout << dump(spasm_to_json(spasm(load_graph(sp_pattern))));
        }
        else if (*mx) {
            HomMatrix m;
            if (!mx_literal.empty())
                m = parse_matrix_csv(read_text_file(mx_literal));
            else if (!mx_patterns.empty())
                m = build_hom_matrix(parse_pattern_list(mx_patterns), counting);
            else
                throw InvalidArgument("matrix needs --patterns or --literal");
            const auto rep = find_redundant_patterns(m);
            if (mx_csv == "-") {
                std::cout << to_csv(m);
            }
            else {
                if (!mx_csv.empty())
                    write_output(mx_csv, to_csv(m));
                Json rows = Json::array();
                for (const auto & row : m.entries) {
                    Json r = Json::array();
                    for (const auto & x : row)
                        r.push_back(x.str());
                    rows.push_back(std::move(r));
                }
                auto j = redundancy_to_json(m, rep);
                j["names"] = m.names;
                j["matrix"] = std::move(rows);
                std::cout << dump(j);
            }
        }
        else if (*ft) {
            const auto ds = ft_data.load();
            FeaturizeOptions opt;
            opt.depth = ft_depth;
            opt.level = parse_task(ft_level);
            opt.ego = ft_ego;
            opt.counting = counting;
            const auto fm = dataset_featurize(ds, parse_pattern_list(ft_patterns), opt);
            auto format = ft_format;
            if (format.empty())
                format = fs::path(ft_out).extension() == ".csv" ? "csv" : "json";
            write_output(ft_out, format == "csv" ? features_to_csv(fm) : dump(features_to_json(fm)));
        }
        else if (*bd) {
            const auto ds = bd_data.load();
            const auto patterns = parse_pattern_list(bd_patterns);
            auto p = default_bound_params(ds.task);
            if (bd_lip)
                p.lip_over_gamma = *bd_lip;
            p.delta = bd_delta;
            p.n_pairs = bd_pairs;
            p.knn_k = bd_k;
            p.depth = bd_depth;
            p.seed = bd_seed;
            p.kl_method = bd_kl == "knn" ? KlMethod::knn : KlMethod::plugin;
            p.validate();
            if (bd_ego && ds.task != Task::node)
                throw InvalidArgument("--ego applies to node tasks only");

            BoundReport report;
            Json out;
            if (bd_repeats > 0) {
                auto e = monte_carlo_expectation_bound(ds, patterns, p, bd_repeats, bd_ego, counting);
                report = e.first;
                out = expectation_report_to_json(e);
            }
            else {
                report = ds.task == Task::graph ? graph_bound(ds, patterns, p, counting)
                                                : node_bound(ds, patterns, p, bd_ego, counting);
                out = bound_report_to_json(report);
            }
            if (bd_verbose)
                print_bound_table(report);
            if (!bd_csv.empty()) {
                const bool fresh = !fs::exists(bd_csv);
                std::ofstream csv(bd_csv, std::ios::app | std::ios::binary);
                if (fresh)
                    csv << bound_csv_header();
                csv << bound_csv_row(bd_data.path, bd_patterns, report);
            }
            std::cout << dump(out);
            if (bd_strict && report.any_degenerate()) {
                std::cerr << "error: at least one class is too small for its sample pairs\n";
                return Exit::degenerate_strict;
            }
        }
        else if (*sh) {
            std::cout << rational_string(shearer_coefficient(load_graph(sh_pattern))) << "\n";
        }
        else if (*cv) {
            write_output(cv_out, dump(dataset_to_json(cv_data.load())));
        }
        else if (*tr) {
            const auto patterns = parse_pattern_list(tr_patterns);
            std::cout << dump(pattern_trees_to_json(enumerate_pattern_trees(patterns, tr_depth, tr_budget), patterns));
        }
    }
    catch (const ParseError & e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Exit::parse_failure;
    }
    catch (const InvariantError & e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return Exit::invariant_failure;
    }
    catch (const ResourceError & e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return Exit::resource_failure;
    }
    catch (const InvalidArgument & e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    }
    catch (const std::exception & e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Exit::internal_failure;
    }
    return Exit::ok;
}
