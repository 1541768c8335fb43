// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance --cli <path to hcol> --samples <samples dir>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <hcol/hcol.hpp>

using namespace hcol;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_samples;
fs::path g_tmp;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (notes.size() < 8)
                notes.push_back("violated: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

// Runs the CLI with stdout sent to `out`; returns its exit status.
int run_cli(const std::string& args, const fs::path& out)
{
    const std::string cmd = quote(g_cli) + " " + args + " > " + quote(out.string()) + " 2> " + quote(out.string() + ".err");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string sample(const std::string& name) { return quote((g_samples / name).string()); }

VertexCoverInstance sample_instance(Rng& rng, int max_n)
{
    const int n = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_n)));
    const int k = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n) + 1));
    return random_cover_instance(n, k, 1 + uniform_below(rng, 4), 6, rng);
}

// ---------------------------------------------------------------------------

Outcome witness_table()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::tuple<std::string, Graph, int>> rows;
    for (int m = 1; m <= 6; ++m)
        rows.emplace_back("K" + std::to_string(m), make_complete(m), m);
    rows.emplace_back("C3", make_cycle(3), 3);
    rows.emplace_back("C6", make_cycle(6), 3);
    for (int m : {4, 5, 7, 8, 9})
        rows.emplace_back("C" + std::to_string(m), make_cycle(m), 2);
    for (auto [m, r] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {6, 2}, {7, 3}})
        rows.emplace_back("K(" + std::to_string(m) + "," + std::to_string(r) + ")", make_kneser(m, r), m - 2 * r + 2);
    for (int n : {1, 3, 5})
        rows.emplace_back("E" + std::to_string(n), make_edgeless(n), 1);
    for (const auto& [name, g, expect] : rows) {
        const auto w = witness_number(g);
        o.check(w.q == expect, "q(" + name + ") = " + std::to_string(w.q) + ", expected " + std::to_string(expect));
        if (expect > 1)
            o.check(w.witness_set.size() == static_cast<std::size_t>(w.q) && is_critical_set(g, w.witness_set), "certificate for " + name);
    }
    const double s = seconds_since(t0);
    o.check(s < 10.0, "runtime " + secs(s) + " >= 10 s");
    o.note(std::to_string(rows.size()) + " graphs in " + secs(s));
    return o;
}

Outcome sandwich_and_cores()
{
    Outcome o;
    Rng rng(2024);
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 10));
        const Graph g = random_graph(n, 1, 2, rng);
        const int q = witness_number(g).q, w = clique_number(g), delta = max_degree(g);
        if (!(w <= q && q <= delta + 1))
            ++violations;
    }
    o.check(violations == 0, std::to_string(violations) + " sandwich violations");
    int core_violations = 0;
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 9));
        const Graph g = random_graph(n, 1, 2, rng);
        if (witness_number(compute_core(g)).q > witness_number(g).q)
            ++core_violations;
    }
    o.check(core_violations == 0, std::to_string(core_violations) + " core monotonicity violations");
    o.note("200 sandwich and 100 core samples");
    return o;
}

Outcome combinatorial_kernels()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(31);
    int agree = 0, total = 0, bound_violations = 0;
    for (const Graph& h : {make_complete(3), make_cycle(5), make_cycle(7), make_kneser(4, 2)}) {
        const int q = target_witness_number(h);
        for (int trial = 0; trial < 100; ++trial) {
            const auto inst = sample_instance(rng, 14);
            const auto r = combinatorial_kernel(inst, q);
            ++total;
            agree += verify_kernel_equivalence(inst, r, h).agree();
            bound_violations += !kernel_size_report(r, inst.k(), q).within_bound;
        }
    }
    o.check(agree == total, "equivalence " + std::to_string(agree) + "/" + std::to_string(total));
    o.check(bound_violations == 0, std::to_string(bound_violations) + " size bound violations");
    const double s = seconds_since(t0);
    o.check(s < 120.0, "runtime " + secs(s) + " >= 2 min");
    o.note("equivalence " + std::to_string(agree) + "/" + std::to_string(total) + " in " + secs(s));
    return o;
}

Outcome algebraic_kernels()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto petersen = normalize_first_entry(kneser_rep(5, 2, field_make(167, 1), 3), 1);
    const auto ortho = normalize_first_entry(as_independent(ortho_graph(field_make(2, 1), 3)), 1);
    const std::vector<std::pair<std::string, Representation>> targets{
        {"K3/Vandermonde", vandermonde_rep(make_complete(3), field_make(5, 1))}, {"Petersen/Kneser", petersen}, {"ortho(GF(2),3)", ortho}};
    Rng rng(47);
    int agree = 0, total = 0;
    std::uint64_t dropped = 0;
    for (const auto& [name, rep] : targets) {
        o.check(rep.d == 3, name + " has d = 3");
        for (int trial = 0; trial < 50; ++trial) {
            const auto inst = sample_instance(rng, 12);
            const auto full = combinatorial_kernel(inst, rep.d);
            const auto r = algebraic_kernel(inst, rep.graph, rep);
            ++total;
            agree += verify_kernel_equivalence(inst, r, rep.graph).agree();
            std::set<VertexSet> full_sets;
            for (const auto& [v, s] : full.provenance)
                full_sets.insert(s);
            for (const auto& [v, s] : r.provenance)
                o.check(full_sets.count(s) == 1, name + ": kernel set outside the combinatorial kernel");
            o.check(r.stats.basis_kept <= binomial(inst.k() * 2, 2) && r.stats.y_bound == binomial(inst.k() * 2, 2), name + ": |Y'| bound");
            o.check(r.certificate && verify_algebraic_certificate(*r.certificate), name + ": basis certificate");
            dropped += r.stats.basis_dropped;
        }
    }
    o.check(agree == total, "equivalence " + std::to_string(agree) + "/" + std::to_string(total));
    o.check(dropped > 0, "no determinant was ever dropped, certificates untested");
    const double s = seconds_since(t0);
    o.check(s < 300.0, "runtime " + secs(s) + " >= 5 min");
    o.note("equivalence " + std::to_string(agree) + "/" + std::to_string(total) + ", " + std::to_string(dropped) + " dropped sets reconstructed, " + secs(s));
    return o;
}

Outcome representation_suite()
{
    Outcome o;
    std::vector<Graph> gs;
    for (int m = 3; m <= 8; ++m)
        gs.push_back(make_cycle(m));
    for (int m = 1; m <= 5; ++m)
        gs.push_back(make_complete(m));
    for (int m = 2; m <= 5; ++m)
        gs.push_back(make_path(m));
    gs.push_back(make_kneser(5, 2));
    gs.push_back(make_kneser(6, 2));
    gs.push_back(make_edgeless(3));
    gs.push_back(make_random(9, 1));
    gs.push_back(make_random(9, 2));
    for (const auto& g : gs)
        o.check(static_cast<bool>(check_faithful(vandermonde_rep(g, field_make(next_prime_above(g.size() - 1), 1)))), "Vandermonde faithful");

    const std::vector<Representation> to_normalize{vandermonde_rep(make_cycle(7), field_make(7, 1)),
        as_independent(reduce_integer_fixture(petersen_fixture(), 31)), as_independent(ortho_graph(field_make(2, 1), 3)),
        vandermonde_rep(make_kneser(5, 2), field_make(11, 1))};
    int ok = 0, runs = 0;
    for (const auto& rep : to_normalize)
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto out = normalize_first_entry(rep, seed);
            ++runs;
            ok += out.unit_first_entries() && static_cast<bool>(check_faithful(out));
        }
    o.check(ok == runs, "normalisation " + std::to_string(ok) + "/" + std::to_string(runs));

    const auto kc = kneser_construction(5, 2, field_make(167, 1), 1);
    o.check(kc.rep.d == 3 && static_cast<bool>(check_faithful(kc.rep)), "kneser_rep(5,2) faithful with d = 3");
    for (int dim : kc.u_dims)
        o.check(dim <= 2, "dim(U_B) <= m - 2r + 1");
    for (std::uint32_t p : {17u, 31u})
        o.check(static_cast<bool>(check_faithful(reduce_integer_fixture(petersen_fixture(), p))), "Petersen fixture orthogonal over GF(" + std::to_string(p) + ")");
    o.note(std::to_string(gs.size()) + " fixture graphs, " + std::to_string(runs) + " normalisations");
    return o;
}

Outcome det_poly_oracle()
{
    Outcome o;
    Rng rng(6);
    int ok = 0, total = 0;
    for (const auto& f : {field_make(101, 1), field_make(2, 4)})
        for (int d = 2; d <= 4; ++d) {
            std::vector<Vertex> s;
            for (int i = 0; i < d; ++i)
                s.push_back(2 * i + 5);
            const auto p = det_poly(s, d, f);
            for (int t = 0; t < 20; ++t) {
                std::map<std::pair<Vertex, int>, FieldElement> vals;
                Matrix m(f, static_cast<std::size_t>(d), static_cast<std::size_t>(d));
                for (int c = 0; c < d; ++c) {
                    m(0, static_cast<std::size_t>(c)) = f->one();
                    for (int i = 2; i <= d; ++i) {
                        const FieldElement x = f->element(uniform_below(rng, f->order()));
                        vals[{s[static_cast<std::size_t>(c)], i}] = x;
                        m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(c)) = x;
                    }
                }
                ++total;
                ok += p.evaluate([&](Vertex v, int i) { return vals.at({v, i}); }) == determinant(m);
            }
        }
    o.check(ok == total, std::to_string(ok) + "/" + std::to_string(total) + " evaluations match");
    o.note(std::to_string(ok) + "/" + std::to_string(total) + " evaluations match");
    return o;
}

Outcome reduction_equivalence()
{
    Outcome o;
    const Graph k62 = make_kneser(6, 2);
    const Graph k62_gadget(7, {{0, 4}, {0, 5}, {0, 6}, {1, 2}, {1, 3}, {2, 5}, {2, 6}, {3, 4}, {3, 6}, {4, 5}});
    const std::vector<std::tuple<std::string, Graph, EdgeGadget, int>> cases{
        {"K4", make_complete(4), make_edge_gadget(make_complete(4), make_path(2), 0, 1, "edge"), 20},
        {"K(6,2)", k62, make_edge_gadget(k62, k62_gadget, 0, 1, "enumerated"), 10},
    };
    Rng rng(77);
    for (const auto& [name, h, gadget, trials] : cases) {
        const auto t = find_tight_witness_set(h);
        o.check(t.size() == 4, name + " witness set has 4 vertices");
        int agree = 0;
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 1 + static_cast<int>(uniform_below(rng, 3));
            const auto phi = random_cnf(n, 1 + static_cast<int>(uniform_below(rng, 6)), 4, rng);
            const auto r = reduce_naesat_to_hcol(phi, h, t, gadget);
            agree += nae_sat_brute(phi) == find_homomorphism(r.instance.graph, h).has_value();
            const std::uint64_t vh = h.size(), vf = gadget.f.size(), nn = static_cast<std::uint64_t>(n);
            o.check(r.instance.k() == vh + 8 * nn + 8 * (vh - 1) * nn * (vf - 2), name + " |X| closed form");
        }
        o.check(agree == trials, name + " NAE agreement " + std::to_string(agree) + "/" + std::to_string(trials));
        o.note(name + " NAE agreement " + std::to_string(agree) + "/" + std::to_string(trials));
    }

    const Graph c5 = make_cycle(5);
    const auto p4 = make_edge_gadget(c5, make_path(4), 0, 3, "path");
    int agree = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 6));
        const Graph g = random_graph(n, 1, 3, rng);
        ListAssignment lists(static_cast<std::size_t>(n));
        for (auto& l : lists) {
            if (uniform_below(rng, 4) == 0)
                continue;
            std::vector<Vertex> ids;
            for (Vertex x = 0; x < 5; ++x)
                if (coin(rng))
                    ids.push_back(x);
            l = VertexSet(std::move(ids));
        }
        agree += find_list_homomorphism(g, c5, lists).has_value() == find_homomorphism(reduce_list_to_plain(g, lists, c5, p4), c5).has_value();
    }
    o.check(agree == 30, "list reduction agreement " + std::to_string(agree) + "/30");
    o.note("list reduction agreement " + std::to_string(agree) + "/30");
    return o;
}

Outcome gadget_fixtures()
{
    Outcome o;
    for (int m = 1; m <= 3; ++m)
        o.check(verify_edge_gadget(make_cycle(2 * m + 1), make_path(2 * m), 0, 2 * m - 1), "P" + std::to_string(2 * m) + " for C" + std::to_string(2 * m + 1));
    for (int m = 3; m <= 5; ++m)
        o.check(verify_edge_gadget(make_complete(m), make_path(2), 0, 1), "edge for K" + std::to_string(m));
    o.check(!verify_edge_gadget(make_cycle(5), make_path(2), 0, 1), "edge rejected for C5");
    o.note("6 positive fixtures, 1 negative");
    return o;
}

Outcome random_graph_sweep()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path out = g_tmp / "sweep.csv";
    const int code = run_cli("sweep --experiment random-q --n 32 --trials 20 --seed 1", out);
    const double s = seconds_since(t0);
    o.check(code == 0, "sweep exit code " + std::to_string(code));
    std::istringstream csv(slurp(out));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    o.check(header == "n,trials,mean_q,max_q,bound,fraction_within", "CSV header");
    const auto comma = row.rfind(',');
    const double frac = comma == std::string::npos ? 0.0 : std::atof(row.c_str() + comma + 1);
    o.check(frac >= 0.9, "fraction within 2 log2 n is " + std::to_string(frac));
    o.check(s < 300.0, "runtime " + secs(s) + " >= 5 min");
    o.note("row " + row + " in " + secs(s));
    return o;
}

Outcome determinism()
{
    Outcome o;
    // build the representation file the algebraic command reads
    const fs::path rep = g_tmp / "petersen_rep.json";
    o.check(run_cli("represent --family kneser --m 5 --r 2 --normalize --seed 3", rep) == 0, "represent for the algebraic kernel");
    const std::vector<std::string> commands{
        "witness " + sample("petersen.g"),
        "--format json witness " + sample("k62.g"),
        "kernelize " + sample("inst.g") + " --target " + sample("c5.g") + " --mode combinatorial --q 2 --verify",
        "kernelize " + sample("inst.g") + " --target " + sample("petersen.g") + " --mode algebraic --rep " + quote(rep.string()) + " --verify",
        "--format json kernelize " + sample("empty_inst.g") + " --target " + sample("k3.g"),
        "represent --family kneser --m 5 --r 2 --seed 9",
        "represent --family vandermonde --graph " + sample("c5.g") + " --field 7",
        "represent --family ortho --d 3 --field 2 --normalize --seed 4",
        "reduce --from nae-sat " + sample("phi4.cnf") + " --target " + sample("k4.g") + " --verify",
        "reduce --from nae-sat " + sample("phi4.cnf") + " --target " + sample("k62.g") + " --gadget " + sample("k62_gadget.g"),
        "reduce --from list-hcol " + sample("lists.txt") + " --target " + sample("c5.g") + " --verify",
        "sweep --experiment kernel-growth --k 2,3,4 --trials 4 --seed 11",
        "--format json sweep --experiment random-q --n 10,14 --trials 3 --seed 12",
    };
    int identical = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const fs::path a = g_tmp / ("run" + std::to_string(i) + "a"), b = g_tmp / ("run" + std::to_string(i) + "b");
        const int ca = run_cli(commands[i], a), cb = run_cli(commands[i], b);
        o.check(ca == 0, "exit code " + std::to_string(ca) + " for: " + commands[i] + " " + slurp(a.string() + ".err"));
        const bool same = ca == cb && slurp(a) == slurp(b) && !slurp(a).empty();
        o.check(same, "outputs differ for: " + commands[i]);
        identical += same;
    }
    o.check(make_random(20, 5) == make_random(20, 5), "make_random reproducible");
    o.note(std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical on rerun");
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli")
            g_cli = argv[i + 1];
        else if (flag == "--samples")
            g_samples = argv[i + 1];
    }
    if (g_cli.empty() || g_samples.empty()) {
        std::cerr << "usage: acceptance --cli <hcol binary> --samples <dir>\n";
        return 1;
    }
    g_tmp = fs::temp_directory_path() / ("hcol_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(g_tmp);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"witness-number regression table", witness_table},
        {"sandwich bound and core monotonicity", sandwich_and_cores},
        {"combinatorial kernel equivalence and bounds", combinatorial_kernels},
        {"algebraic kernel equivalence, containment and certificates", algebraic_kernels},
        {"representation suite", representation_suite},
        {"det_poly evaluation oracle", det_poly_oracle},
        {"reduction equivalence", reduction_equivalence},
        {"edge-gadget fixtures", gadget_fixtures},
        {"random-graph witness sweep", random_graph_sweep},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << '\n';
        for (const auto& n : o.notes)
            std::cout << "    " << n << '\n';
        std::cout.flush();
    }
    fs::remove_all(g_tmp);
    return failures == 0 ? 0 : 1;
}
