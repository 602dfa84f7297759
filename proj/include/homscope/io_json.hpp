#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "homscope/bounds.hpp"
#include "homscope/dataset.hpp"
#include "homscope/fwl.hpp"
#include "homscope/hom_matrix.hpp"
#include "homscope/pattern_trees.hpp"
#include "homscope/spasm.hpp"

// JSON interchange. Exact counts are written as decimal strings.

namespace homscope {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Dataset: {"graphs":[{"n":..,"edges":[[u,v],..],"label":..,"node_labels":[..]}],
//           "num_classes":K, "split":{"train":[..],"test":[..]}}   (split optional)

inline Json graph_to_json(const Graph & g)
{
    Json edges = Json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    return Json{{"n", g.order()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const Json & j)
{
    std::vector<Edge> e;
    for (const auto & p : j.at("edges")) {
        if (!p.is_array() || p.size() != 2)
            throw ParseError("edge must be a [u, v] pair");
        e.emplace_back(p[0].get<Vertex>(), p[1].get<Vertex>());
    }
    return Graph(j.at("n").get<std::size_t>(), e);
}

inline Json dataset_to_json(const GraphDataset & ds)
{
    Json graphs = Json::array();
    for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
        auto g = graph_to_json(ds.graphs[i]);
        if (ds.task == Task::graph)
            g["label"] = ds.graph_labels[i];
        else
            g["node_labels"] = ds.node_labels[i];
        graphs.push_back(std::move(g));
    }
    return Json{{"graphs", std::move(graphs)},
                {"num_classes", ds.num_classes},
                {"split", {{"train", ds.train}, {"test", ds.test}}}};
}

/// The task is node-level when every graph carries "node_labels" and none a "label".
inline GraphDataset dataset_from_json(const Json & j)
{
    try {
        GraphDataset ds;
        const auto & graphs = j.at("graphs");
        bool any_label = false, all_node = !graphs.empty();
        for (const auto & g : graphs) {
            any_label = any_label || g.contains("label");
            all_node = all_node && g.contains("node_labels");
        }
        ds.task = (all_node && !any_label) ? Task::node : Task::graph;
        for (const auto & g : graphs) {
            ds.graphs.push_back(graph_from_json(g));
            if (ds.task == Task::graph)
                ds.graph_labels.push_back(g.at("label").get<std::size_t>());
            else
                ds.node_labels.push_back(g.at("node_labels").get<std::vector<std::size_t>>());
        }
        ds.num_classes = j.at("num_classes").get<std::size_t>();
        if (j.contains("split")) {
            ds.train = j["split"].value("train", std::vector<std::size_t>{});
            ds.test = j["split"].value("test", std::vector<std::size_t>{});
        }
        else {
            use_all_for_training(ds);
        }
        ds.validate();
        return ds;
    }
    catch (const nlohmann::json::exception & e) {
        throw ParseError(std::string("dataset JSON: ") + e.what());
    }
}

inline GraphDataset read_dataset_json(const std::string & path)
{
    try {
        return dataset_from_json(Json::parse(read_text_file(path)));
    }
    catch (const nlohmann::json::parse_error & e) {
        throw ParseError("dataset JSON '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Features

/// {"dim":d, "rows":[{"idx":[..],"val":[..]}, ..], "labels":[..]}
inline Json features_to_json(const FeatureMatrix & fm)
{
    Json rows = Json::array();
    for (const auto & r : fm.rows)
        rows.push_back({{"idx", r.idx}, {"val", r.val}});
    return Json{{"dim", fm.dim}, {"rows", std::move(rows)}, {"labels", fm.labels}};
}

/// Dense CSV with a trailing label column.
inline std::string features_to_csv(const FeatureMatrix & fm)
{
    std::ostringstream out;
    for (std::size_t k = 0; k < fm.dim; ++k)
        out << "f" << k << ",";
    out << "label\n";
    for (std::size_t i = 0; i < fm.rows.size(); ++i) {
        std::vector<double> d(fm.dim, 0.0);
        for (std::size_t k = 0; k < fm.rows[i].idx.size(); ++k)
            d[fm.rows[i].idx[k]] = fm.rows[i].val[k];
        for (double x : d)
            out << x << ",";
        out << fm.labels[i] << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Counting artefacts

inline Json spasm_to_json(const Spasm & s)
{
    Json members = Json::array();
    for (const auto & m : s.members) {
        auto g = graph_to_json(m.graph);
        g["coefficient"] = m.coefficient.str();
        g["partitions"] = m.partitions;
        members.push_back(std::move(g));
    }
    return members;
}

inline std::string rational_string(const Rational & r)
{
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline Json redundancy_to_json(const HomMatrix & m, const RedundancyReport & rep)
{
    Json deps = Json::array();
    for (const auto & d : rep.dependencies) {
        Json terms = Json::array();
        for (std::size_t k = 0; k < d.circuit.size(); ++k)
            terms.push_back({{"pattern", m.names[d.circuit[k]]}, {"coefficient", rational_string(d.coefficients[k])}});
        deps.push_back({{"pattern", m.names[d.pattern]}, {"combination", std::move(terms)}});
    }
    Json kept = Json::array(), span = Json::array();
    for (auto i : rep.kept)
        kept.push_back(m.names[i]);
    for (auto i : rep.in_span_of_others)
        span.push_back(m.names[i]);
    return Json{{"rank", rep.rank},
                {"size", m.size()},
                {"singular", rep.rank < m.size()},
                {"reduced", std::move(kept)},
                {"dependencies", std::move(deps)},
                {"in_span_of_others", std::move(span)}};
}

inline Json pattern_trees_to_json(const std::vector<PatternTree> & trees, const PatternSet & patterns)
{
    Json out = Json::array();
    for (const auto & t : trees) {
        auto j = graph_to_json(t.tree.graph);
        j["root"] = t.tree.root;
        auto b = graph_to_json(t.backbone.graph);
        b["root"] = t.backbone.root;
        Json att = Json::array();
        for (const auto & a : t.attachments)
            att.push_back({{"vertex", a.vertex}, {"pattern", patterns[a.pattern].name}, {"copies", a.copies}});
        j["backbone"] = std::move(b);
        j["attachments"] = std::move(att);
        out.push_back(std::move(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bound reports

inline Json params_to_json(const BoundParams & p)
{
    return Json{{"lip_over_gamma", p.lip_over_gamma}, {"delta", p.delta},   {"n_pairs", p.n_pairs},
                {"knn_k", p.knn_k},                   {"depth", p.depth},   {"seed", p.seed},
                {"kl_method", to_string(p.kl_method)}};
}

inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json bound_report_to_json(const BoundReport & r)
{
    Json classes = Json::array();
    for (const auto & t : r.classes) {
        Json kl = Json::array(), om = Json::array();
        for (double x : t.kl)
            kl.push_back(finite_or_null(x));
        for (double x : t.omega)
            om.push_back(x);
        classes.push_back({{"c", t.c},
                           {"m_c", t.m_c},
                           {"pair_size", t.pair_size},
                           {"weight", t.weight},
                           {r.task == Task::graph ? "beta" : "alpha", t.beta},
                           {"kl", std::move(kl)},
                           {"omega", std::move(om)},
                           {"div_term", t.div_term},
                           {"conc_term", t.conc_term},
                           {"degenerate", t.degenerate}});
    }
    return Json{{"task", to_string(r.task)},
                {"params", params_to_json(r.params)},
                {"num_classes", r.num_classes},
                {"feature_dim", r.feature_dim},
                {"classes", std::move(classes)},
                {"m", r.m},
                {"divergence_component", r.divergence_component},
                {"concentration_component", r.concentration_component},
                {"residual", r.residual},
                {"bound", r.bound}};
}

inline Json expectation_report_to_json(const ExpectationReport & r)
{
    return Json{{"task", to_string(r.task)},
                {"repeats", r.repeats},
                {"divergence_samples", r.divergence_samples},
                {"mean", r.mean},
                {"stderr", r.stderr_},
                {"residual", r.residual},
                {"bound", r.bound},
                {"first_repeat", bound_report_to_json(r.first)}};
}

/// One CSV line per (dataset, patterns, depth) run.
inline std::string bound_csv_header() { return "dataset,patterns,depth,task,m,residual,bound\n"; }

inline std::string bound_csv_row(const std::string & dataset, const std::string & patterns, const BoundReport & r)
{
    std::ostringstream out;
    out.precision(17);
    out << dataset << ",\"" << patterns << "\"," << r.params.depth << "," << to_string(r.task) << "," << r.m << ","
        << r.residual << "," << r.bound << "\n";
    return out.str();
}

} // namespace homscope
