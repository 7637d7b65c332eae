#include "domrecon/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "domrecon/domset.hpp"
#include "domrecon/errors.hpp"
#include "domrecon/exactgap.hpp"
#include "domrecon/generators.hpp"
#include "domrecon/graph_io.hpp"
#include "domrecon/reconfig.hpp"
#include "domrecon/septree.hpp"
#include "domrecon/serialize.hpp"
#include "domrecon/torus.hpp"

namespace domrecon {

namespace {

std::shared_ptr<spdlog::logger> logger() {
    auto log = spdlog::get("domrecon");
    if (!log) log = spdlog::stderr_logger_mt("domrecon");
    return log;
}

void setup_logging() {
    auto log = logger();
    log->set_pattern("[%l] %v");
    const char* env = std::getenv("DOMRECON_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug") {
        log->set_level(spdlog::level::debug);
    } else if (level == "info") {
        log->set_level(spdlog::level::info);
    } else {
        if (level != "error") log->warn("DOMRECON_LOG={} not recognized, using error", level);
        log->set_level(spdlog::level::err);
    }
}

struct LoadedGraph {
    Graph graph;
    std::optional<TorusInstance> torus;
};

LoadedGraph load_graph(const std::string& path, const std::string& format) {
    const GraphFormat fmt = format == "auto" ? format_from_path(path) : parse_graph_format(format);
    if (fmt == GraphFormat::edge_list) return {read_graph_file(path, fmt), std::nullopt};
    const Json j = read_json_file(path);
    if (j.is_object() && j.contains("k") && j.contains("d_box")) {
        TorusInstance inst = torus_from_json(j);
        Graph g = inst.graph;
        return {std::move(g), std::move(inst)};
    }
    return {graph_from_json(j), std::nullopt};
}

VertexSet load_set(const std::string& path, std::size_t n) { return set_from_json(read_json_file(path), n); }

void emit(const Json& j, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << j.dump(2) << '\n';
    } else {
        write_json_file(path, j);
    }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw InputError("write to '" + path + "' failed");
}

std::unique_ptr<SeparatorStrategy> strategy_for(const std::string& name, const Graph& g) {
    if (name != "auto") return make_strategy(name, g);
    return make_strategy(GridCoordinates::from_labels(g) ? "grid-cut" : "bfs-level", g);
}

std::vector<VertexSet> torus_hints(const LoadedGraph& lg) {
    if (!lg.torus) return {};
    return {lg.torus->d_box, lg.torus->d_circ};
}

Json counts_json(const TypeCounts& c) {
    return {{"left", c.left}, {"right", c.right}, {"zero", c.zero}, {"two", c.two}};
}

// ---- torus ---------------------------------------------------------------

struct TorusGenArgs {
    int k = 4;
    std::string out;
    std::string sets_dir;
};

int cmd_torus_gen(const TorusGenArgs& a, std::ostream& out) {
    const TorusInstance inst = build_torus(a.k);
    logger()->info("torus k={} n={} edges={}", a.k, inst.graph.n(), inst.graph.edges().size());
    emit(torus_to_json(inst), a.out, out);
    if (!a.sets_dir.empty()) {
        write_json_file(a.sets_dir + "/d_box.json", set_to_json(inst.d_box));
        write_json_file(a.sets_dir + "/d_circ.json", set_to_json(inst.d_circ));
    }
    return 0;
}

struct TorusDiagnoseArgs {
    std::string inst;
    std::string set;
    std::string seq;
};

int cmd_torus_diagnose(const TorusDiagnoseArgs& a, std::ostream& out) {
    const TorusInstance inst = torus_from_json(read_json_file(a.inst));
    Json j;
    j["k"] = inst.k;
    if (!a.set.empty()) {
        const VertexSet d = load_set(a.set, inst.graph.n());
        const BoundarySets b = boundary_sets(inst, d);
        j["dominating"] = is_dominating(inst.graph, d);
        j["size"] = d.size();
        j["type_counts"] = counts_json(type_counts(inst, d));
        j["boundary"] = {{"p_prime_left", b.p_prime_left.size()},
                         {"p_star", b.p_star.size()},
                         {"p_star_star", b.p_star_star.size()}};
        j["inefficient"] = inefficient_vertices(inst.graph, d).size();
    }
    if (!a.seq.empty()) {
        const ReconfigSequence seq = sequence_from_json(read_json_file(a.seq), inst.graph.n());
        const auto drop = first_drop_index(inst, seq);
        if (drop) {
            j["first_drop"] = {{"index", drop->index}, {"counts", counts_json(drop->counts)}, {"set_size", drop->set_size}};
        } else {
            j["first_drop"] = nullptr;
        }
    }
    out << j.dump(2) << '\n';
    return 0;
}

// ---- domset --------------------------------------------------------------

struct DomsetArgs {
    std::string input;
    std::string format = "auto";
    std::string mode = "exact";
    std::uint64_t budget = 50'000'000;
    std::vector<std::string> hints;
    std::string out;
};

Json domset_json(const VertexSet& set, bool certified) {
    return {{"size", set.size()}, {"set", set_to_json(set)}, {"certified", certified}};
}

int cmd_domset(const DomsetArgs& a, std::ostream& out, std::ostream& err) {
    const LoadedGraph lg = load_graph(a.input, a.format);
    const Graph& g = lg.graph;
    if (a.mode == "greedy") {
        const VertexSet d = greedy_dominating(g);
        emit(domset_json(d, d.size() == gamma_lower_bound_regular(g)), a.out, out);
        return 0;
    }
    ExactOptions opts;
    opts.budget = a.budget;
    opts.hints = torus_hints(lg);
    for (const auto& h : a.hints) opts.hints.push_back(load_set(h, g.n()));
    try {
        const ExactResult r = gamma_exact(g, opts);
        logger()->info("gamma={} via {} ({} nodes)", r.size, r.method, r.nodes);
        Json j = domset_json(r.set, r.certified);
        j["method"] = r.method;
        emit(j, a.out, out);
    } catch (const BudgetExceeded& e) {
        emit(domset_json(e.incumbent(), false), a.out, out);
        err << "error: " << e.what() << " (incumbent of size " << e.incumbent().size() << " written)\n";
        return 3;
    }
    return 0;
}

// ---- septree -------------------------------------------------------------

struct SeptreeArgs {
    std::string input;
    std::string format = "auto";
    double alpha = 0.5;
    std::string strategy = "auto";
    std::string out;
};

int cmd_septree(const SeptreeArgs& a, std::ostream& out) {
    const LoadedGraph lg = load_graph(a.input, a.format);
    const auto strategy = strategy_for(a.strategy, lg.graph);
    const SeparatorTree tree = build_tree(lg.graph, a.alpha, *strategy);
    const TreeCheck check = check_tree(lg.graph, tree);
    if (!check.ok()) throw InvariantError("separator tree check failed: " + check.message);
    logger()->info("tree: {} nodes, depth {}, W={}, strategy {}", tree.nodes().size(), tree.depth(),
                   max_path_weight(tree), tree.strategy());
    emit(tree_to_json(tree), a.out, out);
    return 0;
}

// ---- reconfig ------------------------------------------------------------

struct ReconfigRunArgs {
    std::string input;
    std::string format = "auto";
    std::string from;
    std::string to;
    std::string tree;
    std::string strategy = "auto";
    double alpha = 0.5;
    bool via_minimum = false;
    bool greedy_fallback = false;
    std::size_t move_cap = 10'000'000;
    std::uint64_t budget = 50'000'000;
    std::string out;
};

bool certify_minimum(const LoadedGraph& lg, const VertexSet& d, std::uint64_t budget) {
    if (d.size() == gamma_lower_bound_regular(lg.graph)) return true;
    ExactOptions opts;
    opts.budget = budget;
    opts.hints = torus_hints(lg);
    opts.hints.push_back(d);
    try {
        const ExactResult r = gamma_exact(lg.graph, opts);
        return r.certified && r.size == d.size();
    } catch (const ResourceError&) {
        return false;
    }
}

int cmd_reconfig_run(const ReconfigRunArgs& a, std::ostream& out) {
    const LoadedGraph lg = load_graph(a.input, a.format);
    const Graph& g = lg.graph;
    const VertexSet d = load_set(a.from, g.n());
    const VertexSet d_prime = load_set(a.to, g.n());
    SeparatorTree tree;
    if (a.tree.empty()) {
        const auto strategy = strategy_for(a.strategy, g);
        tree = build_tree(g, a.alpha, *strategy);
    } else {
        tree = tree_from_json(read_json_file(a.tree), g.n());
    }
    const TreeCheck check = check_tree(g, tree);
    if (!check.ok()) throw ContractError("tree is not a valid separator tree: " + check.message);

    ReconfigSequence seq;
    if (a.via_minimum) {
        RouteOptions opts;
        opts.solver.budget = a.budget;
        opts.solver.hints = torus_hints(lg);
        opts.solver.hints.push_back(d_prime);
        opts.greedy_fallback = a.greedy_fallback;
        opts.move_cap = a.move_cap;
        RouteResult r = route_via_minimum(g, d, d_prime, tree, opts);
        logger()->info("routed via a set of size {} (certified: {})", r.via.size(), r.via_certified_minimum);
        seq = std::move(r.sequence);
    } else {
        TransformOptions opts;
        opts.move_cap = a.move_cap;
        opts.d_prime_minimum = certify_minimum(lg, d_prime, a.budget);
        seq = transform(g, d, d_prime, tree, opts);
    }
    const VerifyReport report = verify_sequence(g, seq);
    if (!report.valid) throw InvariantError("produced sequence failed verification: " + report.message);
    logger()->info("{} moves, width {}", seq.moves.size(), seq.width);
    emit(sequence_to_json(seq), a.out, out);
    return 0;
}

struct ReconfigVerifyArgs {
    std::string input;
    std::string format = "auto";
    std::string seq;
    std::string to;
    std::string tree;
};

int cmd_reconfig_verify(const ReconfigVerifyArgs& a, std::ostream& out, std::ostream& err) {
    const LoadedGraph lg = load_graph(a.input, a.format);
    const Graph& g = lg.graph;
    Json sj = read_json_file(a.seq);
    if (sj.is_object() && sj.contains("witness")) sj = sj.at("witness");
    const ReconfigSequence seq = sequence_from_json(sj, g.n());
    const VerifyReport report = verify_sequence(g, seq);
    Json j;
    j["valid"] = report.valid;
    j["moves"] = seq.moves.size();
    j["width"] = report.width;
    j["first_violation"] = report.first_violation ? Json(*report.first_violation) : Json(nullptr);
    if (!report.message.empty()) j["message"] = report.message;
    bool ok = report.valid;
    if (report.valid && seq.width != report.width) {
        ok = false;
        j["message"] = "recorded width " + std::to_string(seq.width) + " differs from replayed width";
    }
    if (report.valid && !a.to.empty()) {
        const bool match = report.end == load_set(a.to, g.n());
        j["end_matches"] = match;
        ok = ok && match;
    }
    if (report.valid && !a.tree.empty()) {
        const SeparatorTree tree = tree_from_json(read_json_file(a.tree), g.n());
        const CheckpointAudit audit = audit_checkpoints(seq, max_path_weight(tree));
        j["audit"] = {{"W", max_path_weight(tree)},
                      {"max_checkpoint_distance", audit.max_checkpoint_distance},
                      {"checkpoint_violations", audit.checkpoint_violations},
                      {"width_within_bound", audit.width_within_bound}};
        ok = ok && audit.checkpoint_violations.empty() && audit.width_within_bound;
    }
    out << j.dump(2) << '\n';
    if (!ok) {
        err << "error: sequence rejected\n";
        return 1;
    }
    return 0;
}

// ---- exactgap ------------------------------------------------------------

struct GapArgs {
    std::string input;
    std::string format = "auto";
    std::string from;
    std::string to;
    std::uint64_t max_states = 50'000'000;
    std::size_t max_n = 20;
    std::string out;
};

int cmd_exactgap(const GapArgs& a, std::ostream& out, std::ostream& err) {
    const LoadedGraph lg = load_graph(a.input, a.format);
    const Graph& g = lg.graph;
    const VertexSet d = load_set(a.from, g.n());
    const VertexSet d_prime = load_set(a.to, g.n());
    GapLimits limits;
    limits.max_n = a.max_n;
    limits.max_states = a.max_states;
    try {
        const GapReport report = exact_gap(g, d, d_prime, limits);
        Json j = gap_report_to_json(report);
        const GapBoundCheck bound = gap_upper_bound_check(g, report);
        j["bound_check"] = {{"pass", bound.pass},
                            {"gamma", bound.gamma},
                            {"half_floor", bound.half_floor},
                            {"needs_review", bound.needs_review}};
        if (bound.needs_review) logger()->warn("gap {} equals (n-1)/2 for odd n={}; flagged for review", report.gap, g.n());
        emit(j, a.out, out);
    } catch (const GapBudgetExceeded& e) {
        err << "error: " << e.what();
        if (e.largest_insufficient()) err << " (no transformation within cap " << *e.largest_insufficient() << ")";
        err << '\n';
        return 3;
    }
    return 0;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
    std::uint64_t seed = 1;
    std::size_t count = 200;
    std::size_t max_n = 24;
    std::vector<int> ks{4, 8, 12};
    std::size_t gap_max_n = 10;
    std::uint64_t max_states = 5'000'000;
    unsigned threads = 1;
    std::string csv;
    std::string md;
};

struct BenchRow {
    std::string name;
    std::size_t n = 0;
    std::size_t d_size = 0;
    std::size_t d_prime_size = 0;
    std::size_t w = 0;
    std::size_t width = 0;
    std::size_t bound = 0;
    bool certified = false;
    bool verified = false;
    std::optional<std::size_t> gap;
    std::string gap_note;
    double wall_ms = 0.0;
    int k = 0;

    std::size_t excess() const { return width - std::max(d_size, d_prime_size); }
};

BenchRow bench_torus(int k) {
    const auto t0 = std::chrono::steady_clock::now();
    const TorusInstance inst = build_torus(k);
    const GridCutStrategy strategy(GridCoordinates::from_torus(inst));
    const SeparatorTree tree = build_tree(inst.graph, 0.5, strategy);
    ExactOptions eo;
    eo.hints = {inst.d_circ};
    const ExactResult ex = gamma_exact(inst.graph, eo);
    TransformOptions to;
    to.d_prime_minimum = ex.certified && ex.size == inst.d_circ.size();
    const ReconfigSequence seq = transform(inst.graph, inst.d_box, inst.d_circ, tree, to);
    BenchRow row;
    row.name = "torus-k" + std::to_string(k);
    row.k = k;
    row.n = inst.graph.n();
    row.d_size = inst.d_box.size();
    row.d_prime_size = inst.d_circ.size();
    row.w = max_path_weight(tree);
    row.width = seq.width;
    row.bound = std::max(row.d_size, row.d_prime_size) + 4 * row.w;
    row.certified = to.d_prime_minimum;
    row.verified = verify_sequence(inst.graph, seq).valid;
    row.gap_note = "n/a";
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

BenchRow bench_random(const BenchArgs& a, std::size_t index) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(derive_seed(a.seed, index));
    std::uniform_int_distribution<std::size_t> pick_n(2, std::max<std::size_t>(2, a.max_n));
    const std::size_t n = pick_n(rng);
    std::uniform_real_distribution<double> pick_p(0.0, 0.3);
    const Graph g = random_connected_graph(n, pick_p(rng), rng);
    const VertexSet d = random_dominating_set(g, rng);
    const VertexSet d_prime = random_minimal_dominating_set(g, rng);
    const BfsLevelStrategy strategy;
    const SeparatorTree tree = build_tree(g, 0.5, strategy);
    RouteOptions ro;
    ro.solver.hints = {d_prime};
    ro.greedy_fallback = true;
    const RouteResult r = route_via_minimum(g, d, d_prime, tree, ro);
    BenchRow row;
    row.name = "random-" + std::to_string(index);
    row.n = n;
    row.d_size = d.size();
    row.d_prime_size = d_prime.size();
    row.w = max_path_weight(tree);
    row.width = r.sequence.width;
    row.bound = std::max(row.d_size, row.d_prime_size) + 4 * row.w;
    row.certified = r.via_certified_minimum;
    row.verified = verify_sequence(g, r.sequence).valid;
    if (n <= a.gap_max_n) {
        GapLimits limits;
        limits.max_states = a.max_states;
        try {
            row.gap = exact_gap(g, d, d_prime, limits).gap;
        } catch (const ResourceError&) {
            row.gap_note = "budget";
        }
    } else {
        row.gap_note = "n/a";
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

std::string gap_cell(const BenchRow& r) { return r.gap ? std::to_string(*r.gap) : r.gap_note; }

std::string fixed(double x, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << x;
    return s.str();
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    std::vector<BenchRow> rows(a.ks.size() + a.count);
    std::atomic<std::size_t> next{0};
    std::mutex error_lock;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            try {
                rows[i] = i < a.ks.size() ? bench_torus(a.ks[i]) : bench_random(a, i - a.ks.size());
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, a.threads);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::ostringstream csv;
    csv << "instance,n,|D|,|D'|,W,width,width-max,bound,certified,verified,exact_gap,wall_ms\n";
    for (const auto& r : rows) {
        csv << r.name << ',' << r.n << ',' << r.d_size << ',' << r.d_prime_size << ',' << r.w << ',' << r.width << ','
            << r.excess() << ',' << r.bound << ',' << (r.certified ? 1 : 0) << ',' << (r.verified ? 1 : 0) << ','
            << gap_cell(r) << ',' << fixed(r.wall_ms, 1) << '\n';
    }

    std::size_t unverified = 0, over_bound = 0, gap_above = 0, gaps = 0;
    for (const auto& r : rows) {
        if (!r.verified) ++unverified;
        if (r.certified && r.width > r.bound) ++over_bound;
        if (r.gap) {
            ++gaps;
            if (*r.gap > r.excess()) ++gap_above;
        }
    }
    std::ostringstream md;
    md << "# domrecon bench (seed " << a.seed << ")\n\n";
    md << "- instances: " << rows.size() << " (" << a.ks.size() << " torus, " << a.count << " random)\n";
    md << "- sequences failing verification: " << unverified << '\n';
    md << "- certified instances above max + 4W: " << over_bound << '\n';
    md << "- exact gaps computed: " << gaps << ", exceeding width-max: " << gap_above << "\n\n";
    md << "## Torus trend\n\n";
    md << "| k | n | sqrt(n) | W | width | width-max | (width-max)/sqrt(n) | wall ms |\n";
    md << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        if (r.k == 0) continue;
        const double root = std::sqrt(static_cast<double>(r.n));
        md << "| " << r.k << " | " << r.n << " | " << fixed(root, 2) << " | " << r.w << " | " << r.width << " | "
           << r.excess() << " | " << fixed(static_cast<double>(r.excess()) / root, 3) << " | " << fixed(r.wall_ms, 1)
           << " |\n";
    }
    md << "\n## Instances\n\n";
    md << "| instance | n | \\|D\\| | \\|D'\\| | W | width | width-max | exact gap | wall ms |\n";
    md << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        md << "| " << r.name << " | " << r.n << " | " << r.d_size << " | " << r.d_prime_size << " | " << r.w << " | "
           << r.width << " | " << r.excess() << " | " << gap_cell(r) << " | " << fixed(r.wall_ms, 1) << " |\n";
    }

    write_text(a.csv, csv.str(), out);
    if (a.md.empty()) {
        if (!a.csv.empty()) out << md.str();
    } else {
        write_text(a.md, md.str(), out);
    }
    return unverified == 0 && over_bound == 0 && gap_above == 0 ? 0 : 1;
}

// ---- export --------------------------------------------------------------

struct ExportArgs {
    std::string input;
    std::string format = "auto";
    std::string set;
    std::string tree;
    std::string seq;
    std::string out;
};

int cmd_export_graph(const ExportArgs& a, std::ostream& out) {
    const LoadedGraph lg = load_graph(a.input, a.format);
    std::optional<VertexSet> highlight;
    if (!a.set.empty()) highlight = load_set(a.set, lg.graph.n());
    std::ostringstream dot;
    write_dot(dot, lg.graph, highlight);
    write_text(a.out, dot.str(), out);
    return 0;
}

int cmd_export_tree(const ExportArgs& a, std::ostream& out) {
    const LoadedGraph lg = load_graph(a.input, a.format);
    const SeparatorTree tree = tree_from_json(read_json_file(a.tree), lg.graph.n());
    std::ostringstream dot;
    dot << "graph septree {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
        const TreeNode& node = tree.node(i);
        dot << "  t" << i << " [label=\"t" << i << " (" << node.part.size() << ")\\n";
        const auto members = node.part.members();
        for (std::size_t m = 0; m < members.size(); ++m) dot << (m ? "," : "") << members[m];
        dot << "\"];\n";
    }
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
        const TreeNode& node = tree.node(i);
        if (node.is_leaf()) continue;
        dot << "  t" << i << " -- t" << *node.child0 << " [label=\"0\"];\n";
        dot << "  t" << i << " -- t" << *node.child1 << " [label=\"1\"];\n";
    }
    dot << "}\n";
    write_text(a.out, dot.str(), out);
    return 0;
}

int cmd_export_plot(const ExportArgs& a, std::ostream& out) {
    const LoadedGraph lg = load_graph(a.input, a.format);
    Json sj = read_json_file(a.seq);
    if (sj.is_object() && sj.contains("witness")) sj = sj.at("witness");
    const ReconfigSequence seq = sequence_from_json(sj, lg.graph.n());
    const auto sizes = seq.state_sizes();
    const double w = 800, h = 400, margin = 50;
    std::size_t top = *std::max_element(sizes.begin(), sizes.end());
    if (seq.guarantee) top = std::max(top, seq.guarantee->bound);
    std::size_t bottom = *std::min_element(sizes.begin(), sizes.end());
    if (top == bottom) ++top;
    const double steps = static_cast<double>(std::max<std::size_t>(1, sizes.size() - 1));
    auto px = [&](std::size_t i) { return margin + (w - 2 * margin) * static_cast<double>(i) / steps; };
    auto py = [&](double s) {
        return h - margin - (h - 2 * margin) * (s - static_cast<double>(bottom)) / static_cast<double>(top - bottom);
    };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin << "\" y2=\"" << h - margin
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << h - margin
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 15 << "\" text-anchor=\"middle\">step (" << seq.moves.size()
        << " moves)</text>\n";
    svg << "<text x=\"15\" y=\"" << h / 2 << "\" transform=\"rotate(-90 15 " << h / 2
        << ")\" text-anchor=\"middle\">|D_i|</text>\n";
    svg << "<text x=\"" << margin - 5 << "\" y=\"" << py(static_cast<double>(top)) << "\" text-anchor=\"end\">" << top
        << "</text>\n";
    svg << "<text x=\"" << margin - 5 << "\" y=\"" << py(static_cast<double>(bottom)) << "\" text-anchor=\"end\">"
        << bottom << "</text>\n";
    if (seq.guarantee) {
        const double y = py(static_cast<double>(seq.guarantee->bound));
        svg << "<line x1=\"" << margin << "\" y1=\"" << y << "\" x2=\"" << w - margin << "\" y2=\"" << y
            << "\" stroke=\"red\" stroke-dasharray=\"4 4\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        svg << (i ? " " : "") << fixed(px(i), 2) << ',' << fixed(py(static_cast<double>(sizes[i])), 2);
    }
    svg << "\"/>\n";
    for (const auto& cp : seq.checkpoints) {
        svg << "<circle cx=\"" << fixed(px(cp.index), 2) << "\" cy=\"" << fixed(py(static_cast<double>(sizes[cp.index])), 2)
            << "\" r=\"2\" fill=\"black\"/>\n";
    }
    svg << "</svg>\n";
    write_text(a.out, svg.str(), out);
    return 0;
}

std::vector<int> parse_ks(const std::string& text) {
    std::vector<int> ks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int k = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            ks.push_back(k);
        } catch (const std::exception&) {
            throw InputError("--ks: '" + item + "' is not an integer");
        }
    }
    return ks;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dominating-set reconfiguration toolkit", "domrecon"};
    app.set_config("--config", "", "Config file (TOML/INI); command-line flags take precedence");
    app.require_subcommand(1);

    auto* torus = app.add_subcommand("torus", "Toroidal grid instances");
    torus->require_subcommand(1);
    TorusGenArgs gen;
    auto* torus_gen = torus->add_subcommand("gen", "Build the instance for a given k");
    torus_gen->add_option("--k", gen.k, "Lattice scale")->required();
    torus_gen->add_option("--out", gen.out, "Output file (stdout if omitted)");
    torus_gen->add_option("--sets-dir", gen.sets_dir, "Also write d_box.json and d_circ.json here");
    TorusDiagnoseArgs diag;
    auto* torus_diag = torus->add_subcommand("diagnose", "Pair types, boundary sets and inefficiency of a set");
    torus_diag->add_option("--inst", diag.inst, "Instance JSON from torus gen")->required();
    torus_diag->add_option("--set", diag.set, "Vertex set JSON");
    torus_diag->add_option("--seq", diag.seq, "Sequence JSON starting at d_box (reports the first drop index)");

    auto* domset = app.add_subcommand("domset", "Dominating sets");
    domset->require_subcommand(1);
    DomsetArgs ds;
    auto* solve = domset->add_subcommand("solve", "Minimum (exact) or greedy dominating set");
    solve->add_option("--input", ds.input, "Graph file")->required();
    solve->add_option("--format", ds.format, "json, edge-list or auto")->check(CLI::IsMember({"auto", "json", "edge-list"}));
    solve->add_option("--mode", ds.mode, "exact or greedy")->check(CLI::IsMember({"exact", "greedy"}));
    solve->add_option("--budget", ds.budget, "Branch-and-bound node limit");
    solve->add_option("--hint", ds.hints, "Known dominating set JSON (repeatable)");
    solve->add_option("--out", ds.out, "Output file (stdout if omitted)");

    auto* septree = app.add_subcommand("septree", "Separator trees");
    septree->require_subcommand(1);
    SeptreeArgs st;
    auto* build = septree->add_subcommand("build", "Recursive balanced-separator decomposition");
    build->add_option("--input", st.input, "Graph file")->required();
    build->add_option("--format", st.format, "json, edge-list or auto")->check(CLI::IsMember({"auto", "json", "edge-list"}));
    build->add_option("--alpha", st.alpha, "Leaf threshold exponent, 0 < alpha < 1");
    build->add_option("--strategy", st.strategy, "grid-cut, bfs-level, exact or auto")
        ->check(CLI::IsMember({"auto", "grid-cut", "bfs-level", "exact"}));
    build->add_option("--out", st.out, "Output file (stdout if omitted)");

    auto* reconfig = app.add_subcommand("reconfig", "Reconfiguration sequences");
    reconfig->require_subcommand(1);
    ReconfigRunArgs rr;
    auto* rrun = reconfig->add_subcommand("run", "Transform one dominating set into another");
    rrun->add_option("--input", rr.input, "Graph file")->required();
    rrun->add_option("--format", rr.format, "json, edge-list or auto")->check(CLI::IsMember({"auto", "json", "edge-list"}));
    rrun->add_option("--from", rr.from, "Source set JSON")->required();
    rrun->add_option("--to", rr.to, "Target set JSON")->required();
    rrun->add_option("--tree", rr.tree, "Tree JSON (built on the fly if omitted)");
    rrun->add_option("--strategy", rr.strategy, "Strategy for an on-the-fly tree")
        ->check(CLI::IsMember({"auto", "grid-cut", "bfs-level", "exact"}));
    rrun->add_option("--alpha", rr.alpha, "Alpha for an on-the-fly tree");
    rrun->add_flag("--route-via-minimum", rr.via_minimum, "Pass through a minimum dominating set");
    rrun->add_flag("--greedy-fallback", rr.greedy_fallback, "Route via a greedy minimal set if the solver gives up");
    rrun->add_option("--move-cap", rr.move_cap, "Refuse sequences longer than this");
    rrun->add_option("--budget", rr.budget, "Node limit for the exact solver");
    rrun->add_option("--out", rr.out, "Output file (stdout if omitted)");
    ReconfigVerifyArgs rv;
    auto* rverify = reconfig->add_subcommand("verify", "Replay and check a sequence");
    rverify->add_option("--input", rv.input, "Graph file")->required();
    rverify->add_option("--format", rv.format, "json, edge-list or auto")->check(CLI::IsMember({"auto", "json", "edge-list"}));
    rverify->add_option("--seq", rv.seq, "Sequence JSON or gap report")->required();
    rverify->add_option("--to", rv.to, "Expected final set");
    rverify->add_option("--tree", rv.tree, "Tree JSON; audits checkpoints against W");

    GapArgs ga;
    auto* gap = app.add_subcommand("exactgap", "Exact reconfiguration gap by state-space search");
    gap->add_option("--input", ga.input, "Graph file")->required();
    gap->add_option("--format", ga.format, "json, edge-list or auto")->check(CLI::IsMember({"auto", "json", "edge-list"}));
    gap->add_option("--from", ga.from, "Source set JSON")->required();
    gap->add_option("--to", ga.to, "Target set JSON")->required();
    gap->add_option("--max-states", ga.max_states, "State budget per search");
    gap->add_option("--max-n", ga.max_n, "Largest order accepted");
    gap->add_option("--out", ga.out, "Output file (stdout if omitted)");

    BenchArgs ba;
    std::string ks_text = "4,8,12";
    auto* bench = app.add_subcommand("bench", "Seeded campaign over random graphs and torus instances");
    bench->add_option("--seed", ba.seed, "Campaign seed");
    bench->add_option("--count", ba.count, "Random connected graphs");
    bench->add_option("--max-n", ba.max_n, "Largest random order");
    bench->add_option("--ks", ks_text, "Comma-separated torus scales");
    bench->add_option("--gap-max-n", ba.gap_max_n, "Run the exact oracle up to this order");
    bench->add_option("--max-states", ba.max_states, "Oracle state budget");
    bench->add_option("--threads", ba.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    bench->add_option("--csv", ba.csv, "CSV output (stdout if omitted)");
    bench->add_option("--md", ba.md, "Markdown summary output");

    auto* exp = app.add_subcommand("export", "DOT and SVG renderings");
    exp->require_subcommand(1);
    ExportArgs ea;
    auto* eg = exp->add_subcommand("graph", "Graph as DOT, optionally highlighting a set");
    eg->add_option("--input", ea.input, "Graph file")->required();
    eg->add_option("--format", ea.format, "json, edge-list or auto")->check(CLI::IsMember({"auto", "json", "edge-list"}));
    eg->add_option("--set", ea.set, "Vertex set JSON to fill");
    eg->add_option("--out", ea.out, "Output file (stdout if omitted)");
    auto* et = exp->add_subcommand("tree", "Separator tree as DOT with 0/1 edge labels");
    et->add_option("--input", ea.input, "Graph file")->required();
    et->add_option("--tree", ea.tree, "Tree JSON")->required();
    et->add_option("--out", ea.out, "Output file (stdout if omitted)");
    auto* ep = exp->add_subcommand("plot", "Width-vs-step SVG of a sequence");
    ep->add_option("--input", ea.input, "Graph file")->required();
    ep->add_option("--seq", ea.seq, "Sequence JSON or gap report")->required();
    ep->add_option("--out", ea.out, "Output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    setup_logging();
    try {
        if (*torus_gen) return cmd_torus_gen(gen, out);
        if (*torus_diag) return cmd_torus_diagnose(diag, out);
        if (*solve) return cmd_domset(ds, out, err);
        if (*build) return cmd_septree(st, out);
        if (*rrun) return cmd_reconfig_run(rr, out);
        if (*rverify) return cmd_reconfig_verify(rv, out, err);
        if (*gap) return cmd_exactgap(ga, out, err);
        if (*bench) {
            ba.ks = parse_ks(ks_text);
            return cmd_bench(ba, out);
        }
        if (*eg) return cmd_export_graph(ea, out);
        if (*et) return cmd_export_tree(ea, out);
        if (*ep) return cmd_export_plot(ea, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what();
        if (e.line() > 0) err << " (line " << e.line() << ")";
        if (e.offset() != std::string::npos) err << " (offset " << e.offset() << ")";
        err << '\n';
        return 1;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace domrecon
