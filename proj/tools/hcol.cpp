// Command-line front end. Exit codes: 0 success, 1 usage error, 2 ceiling or
// feasibility abort (including rejected inputs), 3 invariant violation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <hcol/hcol.hpp>

using namespace hcol;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint64_t seed = 1;
    Ceilings ceilings;
    std::string output;
    std::string format = "text";
    unsigned threads = 0;
};

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    return in;
}

template <class Reader>
auto load(const std::string& path, Reader read)
{
    auto in = open_input(path);
    return read(in);
}

std::string fixed(double x, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string set_text(const VertexSet& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

FieldSpec parse_field(const std::string& text, const Ceilings& c)
{
    const auto caret = text.find('^');
    std::uint32_t p = 0, m = 1;
    try {
        std::size_t used = 0;
        const std::string ps = text.substr(0, caret);
        p = static_cast<std::uint32_t>(std::stoul(ps, &used));
        if (used != ps.size())
            throw UsageError("");
        if (caret != std::string::npos) {
            const std::string ms = text.substr(caret + 1);
            m = static_cast<std::uint32_t>(std::stoul(ms, &used));
            if (used != ms.size())
                throw UsageError("");
        }
    } catch (const std::exception&) {
        throw UsageError("--field expects p or p^m, got '" + text + "'");
    }
    return field_make(p, m, c);
}

// ---------------------------------------------------------------------------

struct WitnessArgs {
    std::string graph;
};

void cmd_witness(const WitnessArgs& a, const RunConfig& cfg, std::ostream& out)
{
    const Graph g = load(a.graph, read_graph);
    const auto w = witness_number(g, cfg.ceilings);
    if (cfg.format == "json") {
        std::vector<std::string> labels;
        for (Vertex v : w.witness_set)
            labels.push_back(g.label(v));
        out << json{{"q", w.q}, {"witness", w.witness_set.ids()}, {"labels", labels}}.dump() << '\n';
        return;
    }
    out << "q=" << w.q << ", witness=" << set_text(w.witness_set) << '\n';
}

struct KernelizeArgs {
    std::string instance, target, mode = "combinatorial", rep;
    int q = 0;
    bool verify = false;
};

int cmd_kernelize(const KernelizeArgs& a, const RunConfig& cfg, std::ostream& out)
{
    const auto inst = load(a.instance, read_instance);
    const Graph h = load(a.target, read_graph);
    KernelResult r;
    int exponent = 0;
    if (a.mode == "combinatorial") {
        if (!a.rep.empty())
            throw UsageError("--rep applies to the algebraic mode only");
        const int qh = target_witness_number(h, cfg.ceilings);
        exponent = a.q ? a.q : qh;
        require(exponent >= qh, "--q " + std::to_string(a.q) + " is below q(H) = " + std::to_string(qh));
        r = combinatorial_kernel(inst, exponent, cfg.ceilings);
    } else {
        if (a.rep.empty() || a.q)
            throw UsageError("algebraic mode takes --rep and no --q");
        const auto rep = load(a.rep, read_rep);
        exponent = rep.d;
        r = algebraic_kernel(inst, h, rep, cfg.ceilings);
    }
    const auto size = kernel_size_report(r, inst.k(), exponent);
    std::optional<EquivalenceReport> eq;
    if (a.verify)
        eq = verify_kernel_equivalence(inst, r, h, cfg.ceilings);

    if (cfg.format == "json") {
        json j{{"stats", stats_to_json(r.stats)},
            {"size", {{"vertex_bound", size.vertex_bound}, {"bit_bound", size.bit_bound}, {"ratio", fixed(size.ratio)}, {"within_bound", size.within_bound}}}};
        if (eq)
            j["verify"] = {{"original_colorable", eq->original_colorable}, {"kernel_colorable", eq->kernel_colorable}, {"agree", eq->agree()}};
        out << j.dump() << '\n';
    } else {
        write_kernel_result(out, r);
        if (eq)
            out << "# verify: original_colorable=" << eq->original_colorable << " kernel_colorable=" << eq->kernel_colorable
                << (eq->agree() ? " agree" : " DISAGREE") << '\n';
    }
    if (eq && !eq->agree()) {
        std::cerr << "hcol: kernel is not equivalent to the input\n";
        return 3;
    }
    if (!size.within_bound) {
        std::cerr << "hcol: kernel exceeds its closed-form bound\n";
        return 3;
    }
    return 0;
}

struct RepresentArgs {
    std::string family, graph, field;
    int m = 0, r = 0, d = 0;
    bool normalize = false, projective = false;
};

void cmd_represent(const RepresentArgs& a, const RunConfig& cfg, std::ostream& out)
{
    Representation rep;
    if (a.family == "kneser") {
        if (a.m <= 0 || a.r <= 0)
            throw UsageError("kneser needs --m and --r");
        const FieldSpec f = a.field.empty() ? field_make(next_prime_above(std::max<std::uint64_t>(kneser_field_threshold(a.m, a.r), static_cast<std::uint64_t>(a.m))), 1, cfg.ceilings)
                                            : parse_field(a.field, cfg.ceilings);
        rep = kneser_rep(a.m, a.r, f, cfg.seed, cfg.ceilings);
    } else if (a.family == "vandermonde") {
        if (a.graph.empty())
            throw UsageError("vandermonde needs --graph");
        const Graph g = load(a.graph, read_graph);
        const FieldSpec f = a.field.empty() ? field_make(next_prime_above(g.size() == 0 ? 1 : g.size() - 1), 1, cfg.ceilings) : parse_field(a.field, cfg.ceilings);
        rep = vandermonde_rep(g, f);
    } else {
        if (a.d <= 0 || a.field.empty())
            throw UsageError("ortho needs --d and --field");
        rep = ortho_graph(parse_field(a.field, cfg.ceilings), a.d, a.projective, cfg.ceilings);
    }
    if (a.normalize)
        rep = normalize_first_entry(rep.kind == RepKind::Orthogonal ? as_independent(rep) : rep, cfg.seed, cfg.ceilings);
    write_rep(out, rep);
}

struct ReduceArgs {
    std::string from, input, target, gadget;
    int max_gadget_vertices = 7;
    bool verify = false;
};

EdgeGadget obtain_gadget(const ReduceArgs& a, const Graph& h, const RunConfig& cfg)
{
    if (!a.gadget.empty()) {
        auto g = load(a.gadget, read_gadget);
        return make_edge_gadget(h, g.f, g.a, g.b, g.family.empty() ? "file" : g.family, cfg.ceilings);
    }
    const auto found = find_edge_gadget(h, a.max_gadget_vertices, cfg.ceilings);
    if (!found.gadget)
        throw Infeasible("no edge gadget found within " + std::to_string(a.max_gadget_vertices) + " vertices (inconclusive)");
    return *found.gadget;
}

int cmd_reduce(const ReduceArgs& a, const RunConfig& cfg, std::ostream& out)
{
    const Graph h = load(a.target, read_graph);
    if (a.from == "nae-sat") {
        const auto phi = load(a.input, parse_dimacs);
        const auto t = find_tight_witness_set(h, cfg.ceilings);
        const auto gadget = obtain_gadget(a, h, cfg);
        const auto r = reduce_naesat_to_hcol(phi, h, t, gadget, cfg.ceilings);
        std::optional<std::pair<bool, bool>> check;
        if (a.verify)
            check = std::pair{nae_sat_brute(phi, cfg.ceilings), is_h_colorable(r.instance.graph, h, cfg.ceilings)};
        if (cfg.format == "json") {
            json j{{"vertices", r.instance.graph.order()}, {"edges", r.instance.graph.edge_count()}, {"x", r.instance.k()}, {"x_formula", r.x_formula},
                {"gadget_copies", r.gadget_copies}, {"gadget_vertices", gadget.f.order()}, {"gadget_family", gadget.family}, {"witness", t.ids()}};
            if (check)
                j["verify"] = {{"nae_satisfiable", check->first}, {"colorable", check->second}, {"agree", check->first == check->second}};
            out << j.dump() << '\n';
        } else {
            out << "# x=" << r.instance.k() << " x_formula=" << r.x_formula << " gadget_copies=" << r.gadget_copies << " gadget_vertices=" << gadget.f.order()
                << " witness=" << set_text(t) << '\n';
            write_instance(out, r.instance);
            if (check)
                out << "# verify: nae_satisfiable=" << check->first << " colorable=" << check->second << (check->first == check->second ? " agree" : " DISAGREE") << '\n';
        }
        return check && check->first != check->second ? 3 : 0;
    }
    const auto li = load(a.input, read_list_instance);
    require(is_core(h), "list reduction: target graph must be a core");
    const auto gadget = obtain_gadget(a, h, cfg);
    const Graph g = reduce_list_to_plain(li.graph, li.lists, h, gadget, cfg.ceilings);
    std::optional<std::pair<bool, bool>> check;
    if (a.verify)
        check = std::pair{find_list_homomorphism(li.graph, h, li.lists).has_value(), is_h_colorable(g, h, cfg.ceilings)};
    if (cfg.format == "json") {
        json j{{"vertices", g.order()}, {"edges", g.edge_count()}, {"gadget_vertices", gadget.f.order()}, {"gadget_family", gadget.family}};
        if (check)
            j["verify"] = {{"list_colorable", check->first}, {"colorable", check->second}, {"agree", check->first == check->second}};
        out << j.dump() << '\n';
    } else {
        write_graph(out, g);
        if (check)
            out << "# verify: list_colorable=" << check->first << " colorable=" << check->second << (check->first == check->second ? " agree" : " DISAGREE") << '\n';
    }
    return check && check->first != check->second ? 3 : 0;
}

struct SweepArgs {
    std::string experiment;
    std::vector<int> n{16, 24, 32};
    std::vector<int> k{2, 3, 4, 5, 6};
    int trials = 20;
    int q = 2;
};

void cmd_sweep(const SweepArgs& a, const RunConfig& cfg, std::ostream& out)
{
    if (a.trials < 0)
        throw UsageError("--trials must be non-negative");
    Rng rng(cfg.seed);
    const bool as_json = cfg.format == "json";
    json rows = json::array();
    if (a.experiment == "random-q") {
        const std::vector<std::string> header{"n", "trials", "mean_q", "max_q", "bound", "fraction_within"};
        if (!as_json)
            out << "n,trials,mean_q,max_q,bound,fraction_within\n";
        for (int n : a.n) {
            if (a.trials == 0)
                break;
            require(n >= 1, "random-q: n must be positive");
            const double bound = 2.0 * std::log2(static_cast<double>(n));
            int within = 0, max_q = 0;
            long long sum = 0;
            for (int t = 0; t < a.trials; ++t) {
                const int q = witness_number(random_graph(n, 1, 2, rng), cfg.ceilings).q;
                sum += q;
                max_q = std::max(max_q, q);
                within += q <= bound;
            }
            const double mean = static_cast<double>(sum) / a.trials, frac = static_cast<double>(within) / a.trials;
            if (as_json)
                rows.push_back({{"n", n}, {"trials", a.trials}, {"mean_q", fixed(mean)}, {"max_q", max_q}, {"bound", fixed(bound)}, {"fraction_within", fixed(frac)}});
            else
                out << n << ',' << a.trials << ',' << fixed(mean) << ',' << max_q << ',' << fixed(bound) << ',' << fixed(frac) << '\n';
        }
    } else {
        require(a.q >= 1, "kernel-growth: --q must be positive");
        if (!as_json)
            out << "k,trials,mean_vertices,max_vertices,vertex_bound,max_ratio\n";
        for (int k : a.k) {
            if (a.trials == 0)
                break;
            require(k >= 0, "kernel-growth: k must be non-negative");
            std::uint64_t max_v = 0, sum = 0, bound = 0;
            double max_ratio = 0.0;
            for (int t = 0; t < a.trials; ++t) {
                // three outside vertices per cover vertex, so most subsets get realised
                const auto inst = random_cover_instance(4 * k, k, 1, 2, rng);
                const auto r = combinatorial_kernel(inst, a.q, cfg.ceilings);
                const auto s = kernel_size_report(r, inst.k(), a.q);
                sum += s.vertices;
                max_v = std::max(max_v, s.vertices);
                bound = s.vertex_bound;
                max_ratio = std::max(max_ratio, s.ratio);
            }
            const double mean = static_cast<double>(sum) / a.trials;
            if (as_json)
                rows.push_back({{"k", k}, {"trials", a.trials}, {"mean_vertices", fixed(mean)}, {"max_vertices", max_v}, {"vertex_bound", bound}, {"max_ratio", fixed(max_ratio)}});
            else
                out << k << ',' << a.trials << ',' << fixed(mean) << ',' << max_v << ',' << bound << ',' << fixed(max_ratio) << '\n';
        }
    }
    if (as_json)
        out << rows.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kernelization and reduction tools for H-colouring"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--seed", cfg.seed, "random seed")->envname("HCOL_SEED");
    app.add_option("--oracle-vertices", cfg.ceilings.oracle_vertices, "homomorphism oracle ceiling")->envname("HCOL_ORACLE_VERTICES")->check(CLI::PositiveNumber);
    app.add_option("--witness-vertices", cfg.ceilings.witness_vertices, "witness number ceiling")->envname("HCOL_WITNESS_VERTICES")->check(CLI::PositiveNumber);
    app.add_option("--gadget-vertices", cfg.ceilings.gadget_vertices, "gadget enumeration ceiling")->envname("HCOL_GADGET_VERTICES")->check(CLI::PositiveNumber);
    app.add_option("--field-degree", cfg.ceilings.field_degree, "extension degree ceiling")->envname("HCOL_FIELD_DEGREE")->check(CLI::PositiveNumber);
    app.add_option("-o,--output", cfg.output, "output path (default stdout)")->envname("HCOL_OUTPUT");
    app.add_option("--format", cfg.format, "text or json")->envname("HCOL_FORMAT")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", cfg.threads, "worker threads (commands currently run single-threaded)")->envname("HCOL_THREADS")->check(CLI::PositiveNumber);

    WitnessArgs wa;
    auto* witness = app.add_subcommand("witness", "non-adjacency witness number and a tight witness set");
    witness->add_option("graph", wa.graph, "graph file")->required();

    KernelizeArgs ka;
    auto* kernelize = app.add_subcommand("kernelize", "kernel for H-colouring parameterised by a vertex cover");
    kernelize->add_option("instance", ka.instance, "instance file")->required();
    kernelize->add_option("--target", ka.target, "target graph file")->required();
    kernelize->add_option("--mode", ka.mode)->check(CLI::IsMember({"combinatorial", "algebraic"}));
    kernelize->add_option("--q", ka.q, "subset size cap (default q(H))")->check(CLI::PositiveNumber);
    kernelize->add_option("--rep", ka.rep, "representation JSON for the algebraic mode");
    kernelize->add_flag("--verify", ka.verify, "check equivalence with the homomorphism oracle");

    RepresentArgs ra;
    auto* represent = app.add_subcommand("represent", "build a faithful representation");
    represent->add_option("--family", ra.family)->required()->check(CLI::IsMember({"kneser", "vandermonde", "ortho"}));
    represent->add_option("--m", ra.m);
    represent->add_option("--r", ra.r);
    represent->add_option("--d", ra.d);
    represent->add_option("--graph", ra.graph);
    represent->add_option("--field", ra.field, "p or p^m");
    represent->add_flag("--normalize", ra.normalize, "make every first entry 1");
    represent->add_flag("--projective", ra.projective, "one vertex per line (ortho)");

    ReduceArgs da;
    auto* reduce = app.add_subcommand("reduce", "build an H-colouring instance from another problem");
    reduce->add_option("--from", da.from)->required()->check(CLI::IsMember({"nae-sat", "list-hcol"}));
    reduce->add_option("input", da.input, "DIMACS formula or list instance")->required();
    reduce->add_option("--target", da.target)->required();
    reduce->add_option("--gadget", da.gadget, "edge gadget file (searched for when absent)");
    reduce->add_option("--max-gadget-vertices", da.max_gadget_vertices)->check(CLI::Range(2, 64));
    reduce->add_flag("--verify", da.verify, "check equivalence with the brute-force oracles");

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "experiment tables");
    sweep->add_option("--experiment", sa.experiment)->required()->check(CLI::IsMember({"random-q", "kernel-growth"}));
    sweep->add_option("--n", sa.n, "graph sizes (random-q)")->delimiter(',');
    sweep->add_option("--k", sa.k, "cover sizes (kernel-growth)")->delimiter(',');
    sweep->add_option("--trials", sa.trials);
    sweep->add_option("--q", sa.q, "subset size cap (kernel-growth)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::ostringstream out;
    int code = 0;
    try {
        if (*witness)
            cmd_witness(wa, cfg, out);
        else if (*kernelize)
            code = cmd_kernelize(ka, cfg, out);
        else if (*represent)
            cmd_represent(ra, cfg, out);
        else if (*reduce)
            code = cmd_reduce(da, cfg, out);
        else
            cmd_sweep(sa, cfg, out);
    } catch (const UsageError& e) {
        std::cerr << "hcol: " << e.what() << '\n';
        return 1;
    } catch (const InvariantViolation& e) {
        std::cerr << "hcol: internal error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "hcol: " << e.what() << '\n';
        return 2;
    }

    if (cfg.output.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!(f << out.str())) {
            std::cerr << "hcol: cannot write " << cfg.output << '\n';
            return 1;
        }
    }
    return code;
}
