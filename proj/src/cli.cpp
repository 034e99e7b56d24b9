#include "echoloc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "echoloc/automorphism.hpp"
#include "echoloc/counting.hpp"
#include "echoloc/errors.hpp"
#include "echoloc/graph.hpp"
#include "echoloc/graph_spectrum.hpp"
#include "echoloc/inversion.hpp"
#include "echoloc/io.hpp"
#include "echoloc/models.hpp"
#include "echoloc/transforms.hpp"

namespace echoloc::cli {

namespace {

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError(std::string(what) + ": bad number `" + item + "`");
        }
    }
    if (out.empty()) throw ParseError(std::string(what) + ": empty list");
    return out;
}

Point parse_point(const std::string& text) {
    auto v = parse_double_list(text, "point");
    if (v.size() == 1) return Point(v[0]);
    if (v.size() == 2) return Point(v[0], v[1]);
    throw ParseError("point: expected 1 or 2 coordinates");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("io", "cannot read `" + path + "`");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        atomic_write(out_path, content);
}

struct RunConfig {
    int threads = 0;
    double freq_tol = 1e-9;
    double weight_tol = 1e-9;
    double cluster_tol = -1.0;
    double acceptance_residual = -1.0;  // < 0: per-mode default
    std::size_t block_budget = 5'000'000;
    unsigned long long seed = 0;  // reserved for randomized workflows

    EnumerationOptions enum_opts() const { return {block_budget}; }
    LocateOptions locate_opts() const {
        LocateOptions o;
        o.frequency_tol = freq_tol;
        o.threads = threads;
        if (acceptance_residual >= 0.0) {
            o.acceptance_residual_closed = acceptance_residual;
            o.acceptance_residual_generic = acceptance_residual;
        }
        return o;
    }
};

std::vector<Graph> load_graphs(const std::string& path, std::string format,
                               bool lenient,
                               std::vector<std::string>* graph_ids) {
    if (format == "auto") {
        if (path.ends_with(".g6")) format = "graph6";
        else if (path.ends_with(".edges") || path.ends_with(".txt")) format = "edges";
        else
            throw ParseError("cannot infer graph format from `" + path +
                             "`; pass --format graph6|edges");
    }
    std::vector<Graph> graphs;
    std::string text = read_file(path);
    if (format == "edges") {
        graphs.push_back(parse_edge_list(text));
        if (graph_ids) graph_ids->push_back(to_graph6(graphs.back()));
        return graphs;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            graphs.push_back(parse_graph6(line));
            if (graph_ids) graph_ids->push_back(line);
        } catch (const Error& e) {
            if (!lenient) throw;
            std::cerr << "warning: line " << lineno << ": " << e.what() << "\n";
        }
    }
    if (graphs.empty()) throw ParseError("no graphs in `" + path + "`");
    return graphs;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"echoloc: pointwise spectral counting functions, audible "
                 "transforms, and echolocation on model geometries and graphs"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);
    app.allow_config_extras(false);

    RunConfig cfg;
    app.add_option("--threads", cfg.threads, "parallelism degree (0 = auto)")
        ->configurable(true);
    app.add_option("--freq-tol", cfg.freq_tol, "frequency matching tolerance")
        ->configurable(true);
    app.add_option("--weight-tol", cfg.weight_tol, "weight matching tolerance")
        ->configurable(true);
    app.add_option("--cluster-tol", cfg.cluster_tol,
                   "eigenvalue clustering tolerance (< 0 = relative default)")
        ->configurable(true);
    app.add_option("--acceptance-residual", cfg.acceptance_residual,
                   "override the locate acceptance residual")
        ->configurable(true);
    app.add_option("--block-budget", cfg.block_budget, "eigenvalue count cap")
        ->configurable(true);
    app.add_option("--seed", cfg.seed, "seed for randomized workflows")
        ->configurable(true);

    std::string model_spec, point_str, point2_str, out_path, target_path;
    std::string format = "json", t_list, t_schedule = "1e-2,5e-3,2.5e-3";
    std::string graph_input, graph_format = "auto", graph_operator = "adjacency";
    double cutoff = 0.0, sigma = 0.0, t_min = 0.0, t_max = 0.0;
    double threshold_ratio = 0.25;
    int t_count = 0, grid = 64, refine = 200, counting_vertex = -1;
    bool half = false, detect = false, force_generic = false;
    bool find_failures = false, cospectral = false, orbits_mode = false;
    std::string peaks_out;

    auto* sc_spectrum = app.add_subcommand("spectrum", "enumerate eigenspace blocks");
    sc_spectrum->add_option("--model", model_spec)->required();
    sc_spectrum->add_option("--cutoff", cutoff)->required();
    sc_spectrum->add_option("--out", out_path);

    auto* sc_count = app.add_subcommand("count", "pointwise counting function N_x");
    sc_count->add_option("--model", model_spec)->required();
    sc_count->add_option("--point", point_str)->required();
    sc_count->add_option("--cutoff", cutoff)->required();
    sc_count->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    sc_count->add_option("--out", out_path);

    auto* sc_timbre = app.add_subcommand("timbre", "per-frequency amplitudes");
    sc_timbre->add_option("--model", model_spec)->required();
    sc_timbre->add_option("--point", point_str)->required();
    sc_timbre->add_option("--cutoff", cutoff)->required();
    sc_timbre->add_option("--out", out_path);

    auto* sc_heat = app.add_subcommand("heat", "heat trace of dN_x");
    sc_heat->add_option("--model", model_spec)->required();
    sc_heat->add_option("--point", point_str)->required();
    sc_heat->add_option("--cutoff", cutoff)->required();
    sc_heat->add_option("--t", t_list, "comma-separated times")->required();
    sc_heat->add_flag("--half", half, "Brownian convention exp(-t lambda^2/2)");
    sc_heat->add_option("--out", out_path);

    auto* sc_curv = app.add_subcommand("curvature", "scalar curvature estimate");
    sc_curv->add_option("--model", model_spec)->required();
    sc_curv->add_option("--point", point_str)->required();
    sc_curv->add_option("--t-schedule", t_schedule, "ratio-2 decreasing schedule");
    sc_curv->add_option("--out", out_path);

    auto* sc_wave = app.add_subcommand("wave", "smoothed wave trace");
    sc_wave->add_option("--model", model_spec)->required();
    sc_wave->add_option("--point", point_str)->required();
    sc_wave->add_option("--cutoff", cutoff)->required();
    sc_wave->add_option("--sigma", sigma)->required();
    sc_wave->add_option("--t-min", t_min)->required();
    sc_wave->add_option("--t-max", t_max)->required();
    sc_wave->add_option("--t-count", t_count)->required();
    sc_wave->add_flag("--detect", detect, "also detect looping times");
    sc_wave->add_option("--threshold-ratio", threshold_ratio);
    sc_wave->add_option("--peaks-out", peaks_out);
    sc_wave->add_option("--out", out_path);

    auto* sc_locate = app.add_subcommand("locate", "recover the point up to isometry");
    sc_locate->add_option("--target", target_path, "counting-function JSON")->required();
    sc_locate->add_option("--model", model_spec, "override the target's model");
    sc_locate->add_option("--grid", grid);
    sc_locate->add_option("--refine", refine);
    sc_locate->add_flag("--generic", force_generic, "skip closed-form inversions");
    sc_locate->add_option("--out", out_path);

    auto* sc_kuz = app.add_subcommand("kuznecov2", "two-point Kuznecov sum N_{x,y}");
    sc_kuz->add_option("--model", model_spec)->required();
    sc_kuz->add_option("--x", point_str)->required();
    sc_kuz->add_option("--y", point2_str)->required();
    sc_kuz->add_option("--cutoff", cutoff)->required();
    sc_kuz->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    sc_kuz->add_option("--out", out_path);

    auto* sc_graph = app.add_subcommand("graph", "vertex counting functions and "
                                                 "cospectrality on graphs");
    sc_graph->add_option("--input", graph_input)->required();
    sc_graph->add_option("--format", graph_format)
        ->check(CLI::IsMember({"auto", "graph6", "edges"}));
    sc_graph->add_option("--operator", graph_operator)
        ->check(CLI::IsMember({"adjacency", "normalized"}));
    sc_graph->add_flag("--find-failures", find_failures,
                       "graphs with non-similar cospectral pairs");
    sc_graph->add_flag("--cospectral", cospectral, "all cospectral pairs");
    sc_graph->add_flag("--orbits", orbits_mode, "automorphism orbits");
    sc_graph->add_option("--counting", counting_vertex,
                         "counting function of one vertex");
    sc_graph->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*sc_spectrum) {
            SpectralModel model(parse_model_spec(model_spec));
            auto blocks = model.enumerate_blocks(cutoff, cfg.enum_opts());
            std::string out = "{\"model\": \"" + json_escape(model.spec_string()) +
                              "\", \"cutoff\": " + fmt_double(cutoff) +
                              ", \"blocks\": [";
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                if (i) out += ", ";
                out += "{\"lambda\": " + fmt_double(blocks[i].frequency) +
                       ", \"multiplicity\": " + std::to_string(blocks[i].multiplicity) +
                       "}";
            }
            emit(out_path, out + "]}\n");
        } else if (*sc_count) {
            SpectralModel model(parse_model_spec(model_spec));
            auto cf = counting_function(model, parse_point(point_str), cutoff,
                                        cfg.enum_opts());
            bool csv = format == "csv" || (format == "json" && out_path.ends_with(".csv"));
            if (sc_count->count("--format")) csv = format == "csv";
            emit(out_path, csv ? counting_to_csv(cf) : counting_to_json(cf));
        } else if (*sc_timbre) {
            SpectralModel model(parse_model_spec(model_spec));
            auto cf = counting_function(model, parse_point(point_str), cutoff,
                                        cfg.enum_opts());
            Timbre t = timbre(cf);
            std::string out = "{\"model\": \"" + json_escape(cf.provenance_model()) +
                              "\", \"cutoff\": " + fmt_double(cf.cutoff()) +
                              ", \"timbre\": [";
            for (std::size_t i = 0; i < t.notes.size(); ++i) {
                if (i) out += ", ";
                out += "{\"lambda\": " + fmt_double(t.notes[i].lambda) +
                       ", \"amplitude\": " + fmt_double(t.notes[i].amplitude) + "}";
            }
            emit(out_path, out + "]}\n");
        } else if (*sc_heat) {
            SpectralModel model(parse_model_spec(model_spec));
            auto cf = counting_function(model, parse_point(point_str), cutoff,
                                        cfg.enum_opts());
            std::string out = "t,value,tail_bound\n";
            for (double t : parse_double_list(t_list, "--t")) {
                HeatTraceResult h = heat_trace(cf, t, half);
                out += fmt_double(h.t) + "," + fmt_double(h.value) + "," +
                       fmt_double(h.tail_bound) + "\n";
            }
            emit(out_path, out);
        } else if (*sc_curv) {
            SpectralModel model(parse_model_spec(model_spec));
            auto schedule = parse_double_list(t_schedule, "--t-schedule");
            double k = estimate_scalar_curvature(model, parse_point(point_str),
                                                 schedule);
            std::string out = "{\"model\": \"" + json_escape(model.spec_string()) +
                              "\", \"t_schedule\": [";
            for (std::size_t i = 0; i < schedule.size(); ++i) {
                if (i) out += ", ";
                out += fmt_double(schedule[i]);
            }
            out += "], \"scalar_curvature\": " + fmt_double(k) + "}\n";
            emit(out_path, out);
        } else if (*sc_wave) {
            SpectralModel model(parse_model_spec(model_spec));
            auto cf = counting_function(model, parse_point(point_str), cutoff,
                                        cfg.enum_opts());
            if (t_count < 2) throw ArgumentError("--t-count must be at least 2");
            std::vector<double> grid_t(static_cast<std::size_t>(t_count));
            for (int i = 0; i < t_count; ++i)
                grid_t[static_cast<std::size_t>(i)] =
                    t_min + (t_max - t_min) * i / (t_count - 1);
            auto samples = smoothed_wave_trace(cf, grid_t, sigma, cfg.threads);
            std::string out = "t,value\n";
            for (const auto& s : samples)
                out += fmt_double(s.t) + "," + fmt_double(s.value) + "\n";
            emit(out_path, out);
            if (detect) {
                auto times = detect_looping_times(samples, threshold_ratio);
                std::string pk = "{\"sigma\": " + fmt_double(sigma) +
                                 ", \"threshold_ratio\": " + fmt_double(threshold_ratio) +
                                 ", \"looping_times\": [";
                for (std::size_t i = 0; i < times.size(); ++i) {
                    if (i) pk += ", ";
                    pk += fmt_double(times[i]);
                }
                emit(peaks_out, pk + "]}\n");
            }
        } else if (*sc_locate) {
            CountingFunction target = counting_from_json(read_file(target_path));
            std::string spec = sc_locate->count("--model") ? model_spec
                                                           : target.provenance_model();
            SpectralModel model(parse_model_spec(spec));
            LocateOptions opts = cfg.locate_opts();
            opts.grid_resolution = grid;
            opts.refine_steps = refine;
            opts.force_generic = force_generic;
            emit(out_path, report_to_json(locate(model, target, opts)));
        } else if (*sc_kuz) {
            SpectralModel model(parse_model_spec(model_spec));
            auto cf = two_point_counting(model, parse_point(point_str),
                                         parse_point(point2_str), cutoff,
                                         cfg.enum_opts());
            bool csv = format == "csv";
            emit(out_path, csv ? counting_to_csv(cf) : counting_to_json(cf));
        } else if (*sc_graph) {
            int modes = (find_failures ? 1 : 0) + (cospectral ? 1 : 0) +
                        (orbits_mode ? 1 : 0) +
                        (sc_graph->count("--counting") ? 1 : 0);
            if (modes != 1) {
                std::cerr << "usage error: pick exactly one of --find-failures, "
                             "--cospectral, --orbits, --counting\n";
                return 2;
            }
            GraphOperator op = graph_operator == "adjacency"
                                   ? GraphOperator::adjacency
                                   : GraphOperator::normalized_laplacian;
            std::vector<std::string> ids;
            auto graphs = load_graphs(graph_input, graph_format, find_failures, &ids);
            std::string out;
            if (find_failures) {
                FailureScan scan = find_echolocation_failures(graphs, op);
                for (const auto& [idx, err] : scan.errors)
                    std::cerr << "warning: graph " << idx << ": " << err << "\n";
                for (const auto& [idx, rep] : scan.failures)
                    out += failure_to_json(ids[idx], rep);
            } else if (cospectral) {
                for (std::size_t i = 0; i < graphs.size(); ++i) {
                    auto pairs = cospectral_vertex_pairs(graphs[i], op);
                    out += "{\"graph6\": \"" + json_escape(ids[i]) + "\", \"pairs\": [";
                    for (std::size_t k = 0; k < pairs.size(); ++k) {
                        if (k) out += ", ";
                        out += "[" + std::to_string(pairs[k].first) + ", " +
                               std::to_string(pairs[k].second) + "]";
                    }
                    out += "]}\n";
                }
            } else if (orbits_mode) {
                for (std::size_t i = 0; i < graphs.size(); ++i) {
                    auto orb = automorphism_orbits(graphs[i]);
                    out += "{\"graph6\": \"" + json_escape(ids[i]) + "\", \"orbits\": [";
                    for (std::size_t k = 0; k < orb.size(); ++k) {
                        if (k) out += ", ";
                        out += "[";
                        for (std::size_t m = 0; m < orb[k].size(); ++m) {
                            if (m) out += ", ";
                            out += std::to_string(orb[k][m]);
                        }
                        out += "]";
                    }
                    out += "]}\n";
                }
            } else {
                if (graphs.size() != 1)
                    throw ArgumentError("--counting expects a single-graph input");
                GraphSpectrum spec = spectrum(graphs[0], op, cfg.cluster_tol);
                auto cf = vertex_counting_function(spec, counting_vertex, ids[0]);
                out = counting_to_json(cf);
            }
            emit(out_path, out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace echoloc::cli
