// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are exact and pinned in code.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "cli_lib.hpp"
#include "coarsegraph/cactus.hpp"
#include "coarsegraph/check.hpp"
#include "coarsegraph/generate.hpp"
#include "coarsegraph/io.hpp"
#include "coarsegraph/quasi.hpp"
#include "coarsegraph/serialize.hpp"
#include "coarsegraph/series_parallel.hpp"
#include "support/enumerate_graphs.hpp"

using namespace cg;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string detail;
    bool pass = true;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (detail.empty()) detail = what;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// A big cycle with a parallel chord corridor attached inside the two split
/// balls the pipeline will pick, joined to the main arc by a rung that is
/// longer than the hitting-ball diameter. The in-between component then
/// carries two far parallel corridors and the far-pair branch must produce
/// a fat K4 witness.
Graph scaled_witness_rig() {
    GraphBuilder gb;
    for (int i = 0; i + 1 < 4600; ++i) gb.add_edge(i, i + 1);
    gb.add_edge(0, 4599);
    // chord corridor from 2060 to 2540, length 480
    VertexId prev = 2060;
    VertexId chord_mid = -1;
    for (int i = 0; i + 1 < 480; ++i) {
        VertexId nv = gb.add_vertex();
        gb.add_edge(prev, nv);
        if (i == 239) chord_mid = nv;
        prev = nv;
    }
    gb.add_edge(prev, 2540);
    // rung of length 45 between the arc middle and the chord middle
    prev = 2300;
    for (int i = 0; i + 1 < 45; ++i) {
        VertexId nv = gb.add_vertex();
        gb.add_edge(prev, nv);
        prev = nv;
    }
    gb.add_edge(prev, chord_mid);
    return gb.build();
}

Graph three_spoke_trap(int arm, int cord) {
    GraphBuilder gb;
    VertexId hub = gb.add_vertex();
    std::vector<VertexId> tips;
    for (int s = 0; s < 3; ++s) {
        VertexId prev = hub;
        for (int i = 0; i < arm; ++i) {
            VertexId nv = gb.add_vertex();
            gb.add_edge(prev, nv);
            prev = nv;
        }
        tips.push_back(prev);
    }
    for (int s = 0; s < 2; ++s) {
        VertexId prev = tips[static_cast<std::size_t>(s)];
        for (int i = 0; i < cord; ++i) {
            VertexId nv = gb.add_vertex();
            gb.add_edge(prev, nv);
            prev = nv;
        }
        gb.add_edge(prev, tips[static_cast<std::size_t>(s + 1)]);
    }
    return gb.build();
}

struct NamedGraph {
    std::string name;
    Graph graph;
};

std::vector<NamedGraph> dichotomy_corpus(bool with_k4_traps) {
    std::vector<NamedGraph> out;
    for (int n : {1, 5, 50, 237, 500}) out.push_back({"path:" + std::to_string(n), path_graph(n)});
    for (int n : {3, 12, 60, 499, 500})
        out.push_back({"cycle:" + std::to_string(n), cycle_graph(n)});
    out.push_back({"tree:30", random_tree(30, 1)});
    out.push_back({"tree:120", random_tree(120, 2)});
    out.push_back({"tree:300", random_tree(300, 3)});
    out.push_back({"theta:30:40:50", theta_graph(30, 40, 50)});
    out.push_back({"theta:80:90:100", theta_graph(80, 90, 100)});
    out.push_back({"theta:200:210:220", theta_graph(200, 210, 220)});
    out.push_back({"grid:2:2", grid_graph(2, 2)});
    out.push_back({"grid:5:5", grid_graph(5, 5)});
    out.push_back({"grid:12:12", grid_graph(12, 12)});
    out.push_back({"gnp:20:0.15", gnp_graph(20, 0.15, 3)});
    out.push_back({"gnp:40:0.10", gnp_graph(40, 0.10, 4)});
    out.push_back({"gnp:40:0.30", gnp_graph(40, 0.30, 5)});
    out.push_back({"k4minustrap:60", k4minus_trap(60)});
    out.push_back({"k4minustrap:150", k4minus_trap(150)});
    out.push_back({"spoketrap:300:600", three_spoke_trap(300, 600)});
    if (with_k4_traps) {
        out.push_back({"k4trap:30", k4_trap(30)});
        out.push_back({"k4trap:80", k4_trap(80)});
    }
    return out;
}

/// Validates one dichotomy outcome; returns false (with a reason) on any
/// unverified emission. Also runs the quasi-isometry extraction for
/// criterion 4 when the decomposition branch was taken.
bool check_outcome(const Graph& g, const std::variant<GraphDecomposition, MinorModel>& res,
                   Pattern pattern, int k, long long orw_bound, long long irs_bound,
                   bool& qi_ok, std::string& why) {
    if (std::holds_alternative<GraphDecomposition>(res)) {
        const GraphDecomposition& dec = std::get<GraphDecomposition>(res);
        PartialDecomposition full{dec, dec.bag_union()};
        if (!(full.support == g.vertex_set())) {
            why = "decomposition does not cover the graph";
            return false;
        }
        DecompositionReport rep = validate(g, full);
        if (!rep.ok_honest()) {
            why = "decomposition invalid: " +
                  (rep.violations.empty() ? "?" : rep.violations.front());
            return false;
        }
        if (!(rep.orw <= orw_bound && rep.irs <= irs_bound)) {
            why = "bounds exceeded: orw " + rep.orw.str() + " irs " + rep.irs.str();
            return false;
        }
        if (!is_minor_free(dec.h, pattern)) {
            why = "decomposition graph is not minor-free";
            return false;
        }
        if (g.vertex_count() > 0 && g.is_connected()) {
            QuasiIsometry q = from_decomposition(g, dec);
            if (!verify_qi(dec.h, g, q).ok) {
                qi_ok = false;
                why = "quasi-isometry verification failed";
                return false;
            }
        }
        return true;
    }
    const MinorModel& m = std::get<MinorModel>(res);
    ModelCheck check = validate_model(g, m);
    if (!check.ok) {
        why = "witness invalid: " + check.violation;
        return false;
    }
    if (!(fatness(g, m) >= k)) {
        why = "witness not fat enough";
        return false;
    }
    return true;
}

// ----------------------------------------------------------- criterion 1

Criterion criterion_constants() {
    Criterion c{1, ""};
    for (int k = 1; k <= 100; ++k) {
        ConstantsBundle cb = ConstantsBundle::production(k);
        if (cb.f0 != 25235LL * k + 71) c.fail("f0 mismatch at K=" + std::to_string(k));
        if (cb.f0 != cb.r2 + 2 * cb.r0p + 2) c.fail("f0 display identity broken");

        auto [m4, a4] = qi_constants_for(cb.f0, cb.f1);
        if (m4 != Rational(50470LL * k + 142) || a4 != m4)
            c.fail("k4 qi constants mismatch at K=" + std::to_string(k));
        auto [im4, ia4] = invert_constants(m4, a4);
        if (im4 != m4 || ia4 != Rational(3) * m4 * m4)
            c.fail("k4 inverse constants mismatch at K=" + std::to_string(k));

        auto [mc, ac] = qi_constants_for(42LL * k + 1, 28LL * k + 3);
        if (mc != Rational(84LL * k + 2) || ac != mc)
            c.fail("cactus qi constants mismatch at K=" + std::to_string(k));
        auto [imc, iac] = invert_constants(mc, ac);
        if (imc != mc || iac != Rational(3) * mc * mc)
            c.fail("cactus inverse constants mismatch at K=" + std::to_string(k));
    }
    c.note("K=1..100 exact");
    return c;
}

// -------------------------------------------------------- criteria 2 and 4

Criterion criterion_cactus_dichotomy(bool& qi_all_ok) {
    Criterion c{2, ""};
    int decompositions = 0, witnesses = 0;
    for (int k : {1, 2}) {
        for (const NamedGraph& ng : dichotomy_corpus(false)) {
            try {
                auto res = decompose_cactus(ng.graph, k);
                std::string why;
                bool qi_ok = true;
                if (!check_outcome(ng.graph, res, Pattern::K4Minus, k, 42LL * k + 1,
                                   28LL * k + 3, qi_ok, why)) {
                    qi_all_ok = qi_all_ok && qi_ok;
                    c.fail(ng.name + " K=" + std::to_string(k) + ": " + why);
                } else {
                    (std::holds_alternative<GraphDecomposition>(res) ? decompositions
                                                                     : witnesses)++;
                }
            } catch (const std::exception& e) {
                c.fail(ng.name + " K=" + std::to_string(k) + " threw: " + e.what());
            }
        }
    }
    c.note(std::to_string(decompositions) + " decompositions, " + std::to_string(witnesses) +
           " witnesses");
    return c;
}

// -------------------------------------------------------- criteria 3 and 4

Criterion criterion_sp_dichotomy(bool& qi_all_ok) {
    Criterion c{3, ""};
    int decompositions = 0, witnesses = 0;
    set_check_level(CheckLevel::fast);
    for (const NamedGraph& ng : dichotomy_corpus(true)) {
        try {
            auto res = decompose_series_parallel(ng.graph, 1);
            std::string why;
            bool qi_ok = true;
            if (!check_outcome(ng.graph, res, Pattern::K4, 1, 25306, 22, qi_ok, why)) {
                qi_all_ok = qi_all_ok && qi_ok;
                c.fail(ng.name + ": " + why);
            } else {
                (std::holds_alternative<GraphDecomposition>(res) ? decompositions : witnesses)++;
            }
        } catch (const std::exception& e) {
            c.fail(ng.name + " threw: " + e.what());
        }
    }

    // deep branches under scaled constants, with every branch-local
    // postcondition asserted by the full check level
    set_check_level(CheckLevel::full);
    ConstantsBundle scaled = ConstantsBundle::scaled(1, 4);
    std::vector<NamedGraph> corridors;
    corridors.push_back({"scaled:cycle:3200", cycle_graph(3200)});
    corridors.push_back({"scaled:cycle:4600", cycle_graph(4600)});
    corridors.push_back({"scaled:comb:3200", comb_cycle(3200, 400, 30)});
    corridors.push_back({"scaled:spoketrap", three_spoke_trap(1700, 3600)});
    corridors.push_back({"scaled:witnessrig", scaled_witness_rig()});
    for (const NamedGraph& ng : corridors) {
        try {
            SPOptions opts;
            opts.constants = scaled;
            opts.menger_budget = 500'000'000;
            auto res = decompose_series_parallel(ng.graph, 1, opts);
            std::string why;
            bool qi_ok = true;
            if (!check_outcome(ng.graph, res, Pattern::K4, 1, scaled.f0, 22, qi_ok, why)) {
                qi_all_ok = qi_all_ok && qi_ok;
                c.fail(ng.name + ": " + why);
            } else {
                (std::holds_alternative<GraphDecomposition>(res) ? decompositions : witnesses)++;
            }
        } catch (const std::exception& e) {
            c.fail(ng.name + " threw: " + e.what());
        }
    }
    set_check_level(CheckLevel::fast);
    c.note(std::to_string(decompositions) + " decompositions, " + std::to_string(witnesses) +
           " witnesses");
    return c;
}

// ----------------------------------------------------------- criterion 5

Criterion criterion_oracle() {
    Criterion c{5, ""};
    std::size_t checked = 0;
    for (int n = 1; n <= 8; ++n) {
        std::vector<Graph> graphs;
        try {
            graphs = cgtest::connected_graphs_up_to_iso(n);
        } catch (const std::exception& e) {
            c.fail(std::string("enumeration failed: ") + e.what());
            return c;
        }
        for (const Graph& g : graphs) {
            for (Pattern p : {Pattern::K4, Pattern::K4Minus}) {
                bool free;
                bool found;
                try {
                    free = is_minor_free(g, p);
                    SearchBudget budget{10'000'000};
                    found = brute_force_fat_minor(g, pattern_graph(p), 0, budget).has_value();
                } catch (const std::exception& e) {
                    c.fail(std::string("oracle run threw: ") + e.what());
                    return c;
                }
                if (free == found) {
                    c.fail("disagreement on an n=" + std::to_string(n) + " graph for " +
                           pattern_name(p));
                    return c;
                }
                ++checked;
            }
        }
    }
    c.note(std::to_string(checked) + " oracle comparisons");
    return c;
}

// ----------------------------------------------------------- criterion 6

Criterion criterion_path_balls() {
    Criterion c{6, ""};
    std::mt19937_64 rng(2026);
    int done = 0;
    while (done < 50) {
        std::uniform_int_distribution<int> size(12, 60);
        std::uniform_int_distribution<int> extra(0, 8);
        std::uniform_int_distribution<long long> radius(0, 5);
        int n = size(rng);
        Graph g;
        {
            std::vector<Edge> es;
            std::mt19937_64 sub(rng());
            for (int i = 1; i < n; ++i) {
                std::uniform_int_distribution<int> pick(0, i - 1);
                es.emplace_back(pick(sub), i);
            }
            int add = extra(rng);
            std::uniform_int_distribution<int> pick(0, n - 1);
            for (int t = 0; t < add; ++t) {
                int a = pick(sub), b = pick(sub);
                Edge e{std::min(a, b), std::max(a, b)};
                if (a != b && std::find(es.begin(), es.end(), e) == es.end()) es.push_back(e);
            }
            g = Graph::from_edges(n, es);
        }
        std::uniform_int_distribution<int> pick(0, n - 1);
        VertexId a = pick(rng), b = pick(rng);
        auto p = shortest_path(g, VertexSet::single(a), VertexSet::single(b));
        if (!p || p->length() < 2) continue;
        long long r = radius(rng);
        PartialDecomposition d = path_ball_decomposition(g, *p, r);
        DecompositionReport rep = validate(g, d);
        if (!rep.ok_honest()) {
            c.fail("instance failed validation");
            break;
        }
        if (!(rep.orw <= 2 * r + 1 && rep.irs <= 2 * r + 1)) {
            c.fail("radial bounds exceeded");
            break;
        }
        bool inside = true;
        for (std::size_t i = 0; i < p->vertex_count(); ++i) {
            if (!d.dec.bag(static_cast<VertexId>(i))
                     .is_subset_of(ball_v(g, p->at(i), 2 * r + 1)))
                inside = false;
        }
        if (!inside) {
            c.fail("a bag escaped the doubled ball of its position");
            break;
        }
        ++done;
    }
    c.note("50 random instances");
    return c;
}

// ----------------------------------------------------------- criterion 7

struct MutationRig {
    fs::path dir;
    std::string graph_file;
    std::string dec_file;
    std::string model_file;
    std::string qi_file;
};

Criterion criterion_mutations() {
    Criterion c{7, ""};
    fs::path dir = fs::temp_directory_path() / "coarsegraph-acceptance-mutations";
    fs::create_directories(dir);

    // source certificates from real pipeline runs
    Graph host = cycle_graph(120);
    auto dec_res = decompose_cactus(host, 1);
    if (!std::holds_alternative<GraphDecomposition>(dec_res)) {
        c.fail("expected a decomposition on the cycle");
        return c;
    }
    GraphDecomposition dec = std::get<GraphDecomposition>(dec_res);
    QuasiIsometry qi = from_decomposition(host, dec);

    Graph trap = three_spoke_trap(300, 600);
    auto wit_res = decompose_cactus(trap, 1);
    if (!std::holds_alternative<MinorModel>(wit_res)) {
        c.fail("expected a witness on the trap");
        return c;
    }
    MinorModel model = std::get<MinorModel>(wit_res);

    std::string host_file = (dir / "host.txt").string();
    std::string trap_file = (dir / "trap.txt").string();
    std::string dec_file = (dir / "dec.txt").string();
    std::string model_file = (dir / "model.txt").string();
    std::string qi_file = (dir / "qi.txt").string();
    save_edge_list_file(host, host_file);
    save_edge_list_file(trap, trap_file);
    {
        std::ofstream f(dec_file);
        save_decomposition(dec, f);
        std::ofstream fm(model_file);
        save_model(model, fm);
        std::ofstream fq(qi_file);
        save_qi(qi, fq);
    }

    auto run_verify = [&](const std::string& graph, const std::string& cert,
                          const std::string& kind, const std::string& aux = "") {
        cgcli::VerifyArgs args;
        args.graph = graph;
        args.certificate = cert;
        args.kind = kind;
        args.aux = aux;
        std::ostringstream out, err;
        return cgcli::cmd_verify(args, out, err);
    };

    // the unmutated certificates must verify
    if (run_verify(host_file, dec_file, "decomposition") != cgcli::kExitOk)
        c.fail("baseline decomposition rejected");
    if (run_verify(trap_file, model_file, "model") != cgcli::kExitOk)
        c.fail("baseline model rejected");
    if (run_verify(host_file, qi_file, "qi", dec_file) != cgcli::kExitOk)
        c.fail("baseline quasi-isometry rejected");

    int rejected = 0, total = 0;
    auto expect_rejected = [&](const std::string& graph, const std::string& text,
                               const std::string& kind, const std::string& aux = "") {
        std::string f = (dir / ("mut" + std::to_string(total) + ".txt")).string();
        std::ofstream out(f);
        out << text;
        out.close();
        ++total;
        int code = run_verify(graph, f, kind, aux);
        if (code != cgcli::kExitOk) ++rejected;
        else c.fail("mutation " + std::to_string(total - 1) + " (" + kind + ") was accepted");
    };

    std::mt19937_64 rng(7);

    // 34 bag deletions: remove one vertex everywhere it occurs in the bags
    {
        std::vector<VertexId> vs = host.vertices();
        std::shuffle(vs.begin(), vs.end(), rng);
        for (int i = 0; i < 34; ++i) {
            VertexId victim = vs[static_cast<std::size_t>(i)];
            GraphDecomposition mutant = dec;
            for (auto& [node, bag] : mutant.bags) bag = bag.minus(VertexSet::single(victim));
            expect_rejected(host_file, to_string(mutant), "decomposition");
        }
    }

    // 33 path truncations on the model
    {
        for (int i = 0; i < 33; ++i) {
            MinorModel mutant = model;
            auto it = mutant.branch_paths.begin();
            std::advance(it, i % static_cast<int>(mutant.branch_paths.size()));
            const Path& p = it->second;
            if (p.vertex_count() >= 2) it->second = p.subpath(0, p.vertex_count() - 2);
            else it->second = Path({p.first() ^ 1});
            expect_rejected(trap_file, to_string(mutant), "model");
        }
    }

    // 33 branch-set merges: two branch sets become their union
    {
        std::vector<std::pair<VertexId, VertexId>> pairs;
        for (auto a = model.branch_sets.begin(); a != model.branch_sets.end(); ++a)
            for (auto b = std::next(a); b != model.branch_sets.end(); ++b)
                pairs.emplace_back(a->first, b->first);
        for (int i = 0; i < 33; ++i) {
            auto [x, y] = pairs[static_cast<std::size_t>(i) % pairs.size()];
            MinorModel mutant = model;
            VertexSet merged = mutant.branch_sets[x].union_with(mutant.branch_sets[y]);
            mutant.branch_sets[x] = merged;
            mutant.branch_sets[y] = merged;
            expect_rejected(trap_file, to_string(mutant), "model");
        }
    }

    if (total != 100) c.fail("expected exactly 100 mutations, ran " + std::to_string(total));
    c.note(std::to_string(rejected) + "/" + std::to_string(total) + " mutations rejected");

    std::error_code ec;
    fs::remove_all(dir, ec);
    return c;
}

} // namespace

int main() {
    set_check_level(CheckLevel::fast);
    std::vector<Criterion> results;
    bool qi_all_ok = true;

    auto report = [&](Criterion c, double secs) {
        std::printf("[criterion %d] %s (%.1fs)%s%s\n", c.id, c.pass ? "PASS" : "FAIL", secs,
                    c.detail.empty() ? "" : " - ", c.detail.c_str());
        std::fflush(stdout);
        results.push_back(std::move(c));
    };
    auto timed = [&](auto&& run) {
        auto t = std::chrono::steady_clock::now();
        Criterion c = run();
        report(std::move(c), seconds_since(t));
    };

    timed([] { return criterion_constants(); });
    timed([&] { return criterion_cactus_dichotomy(qi_all_ok); });
    timed([&] { return criterion_sp_dichotomy(qi_all_ok); });
    {
        // criterion 4 runs inside 2 and 3: every decomposition branch there
        // also passed the exhaustive quasi-isometry verification
        Criterion c{4, "verified inside criteria 2 and 3"};
        c.pass = qi_all_ok && results[1].pass && results[2].pass;
        report(std::move(c), 0.0);
    }
    timed([] { return criterion_oracle(); });
    timed([] { return criterion_path_balls(); });
    timed([] { return criterion_mutations(); });

    bool all = true;
    for (const Criterion& c : results) all = all && c.pass;
    std::printf("acceptance: %s\n", all ? "ALL PASS" : "FAILURES PRESENT");
    return all ? 0 : 1;
}
