#include "cli_lib.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "coarsegraph/cactus.hpp"
#include "coarsegraph/check.hpp"
#include "coarsegraph/generate.hpp"
#include "coarsegraph/io.hpp"
#include "coarsegraph/quasi.hpp"
#include "coarsegraph/serialize.hpp"
#include "coarsegraph/series_parallel.hpp"

namespace cgcli {

using namespace cg;
using nlohmann::json;

long long default_budget() {
    if (const char* env = std::getenv("COARSEGRAPH_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (...) {
            return 50'000'000;
        }
    }
    return 50'000'000;
}

namespace {

struct RunReport {
    std::string digest;
    std::string branch; // "decomposition", "witness" or "budget-error"
    long long orw = -1;
    long long irs = -1;
    long long h_size = -1;
    long long fatness_value = -1;
    bool fatness_infinite = false;
    double wall_ms = 0.0;
    std::string detail;

    json to_json() const {
        json j;
        j["input_digest"] = digest;
        j["branch"] = branch;
        json metrics;
        if (orw >= 0) metrics["orw"] = orw;
        if (irs >= 0) metrics["irs"] = irs;
        if (h_size >= 0) metrics["h_nodes"] = h_size;
        if (fatness_infinite) metrics["fatness"] = "inf";
        else if (fatness_value >= 0) metrics["fatness"] = fatness_value;
        j["metrics"] = metrics;
        j["wall_ms"] = wall_ms;
        if (!detail.empty()) j["detail"] = detail;
        return j;
    }
};

struct PipelineOutcome {
    std::string branch;
    std::optional<GraphDecomposition> decomposition;
    std::optional<QuasiIsometry> qi;
    std::optional<MinorModel> witness;
    std::string detail;
    RunReport report;
};

Pattern parse_target(const std::string& target) {
    if (target == "k4") return Pattern::K4;
    if (target == "k4minus") return Pattern::K4Minus;
    throw Error("unknown target '" + target + "' (expected k4 or k4minus)");
}

PipelineOutcome run_pipeline(const Graph& g, const std::string& target, int fat,
                             std::optional<int> scaled, long long budget) {
    PipelineOutcome out;
    out.report.digest = graph_digest(g);
    auto started = std::chrono::steady_clock::now();
    auto finish_clock = [&] {
        out.report.wall_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
    };
    Pattern pattern = parse_target(target);
    try {
        std::variant<GraphDecomposition, MinorModel> result =
            [&]() -> std::variant<GraphDecomposition, MinorModel> {
            if (pattern == Pattern::K4Minus) {
                if (scaled) throw Error("scaled constants only apply to the k4 target");
                return decompose_cactus(g, fat);
            }
            SPOptions opts;
            opts.menger_budget = budget;
            if (scaled) opts.constants = ConstantsBundle::scaled(fat, *scaled);
            return decompose_series_parallel(g, fat, opts);
        }();
        finish_clock();
        if (std::holds_alternative<GraphDecomposition>(result)) {
            out.branch = "decomposition";
            out.decomposition = std::get<GraphDecomposition>(std::move(result));
            PartialDecomposition full{*out.decomposition, out.decomposition->bag_union()};
            DecompositionReport rep = validate(g, full);
            out.report.orw = rep.orw.value_or(-1);
            out.report.irs = rep.irs.value_or(-1);
            out.report.h_size = static_cast<long long>(out.decomposition->h.vertex_count());
            if (g.vertex_count() > 0 && g.is_connected())
                out.qi = from_decomposition(g, *out.decomposition);
        } else {
            out.branch = "witness";
            out.witness = std::get<MinorModel>(std::move(result));
            ExtInt f = fatness(g, *out.witness);
            out.report.fatness_infinite = f.is_infinite();
            out.report.fatness_value = f.value_or(-1);
        }
    } catch (const BudgetError& e) {
        finish_clock();
        out.branch = "budget-error";
        out.detail = e.what();
    }
    out.report.branch = out.branch;
    out.report.detail = out.detail;
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path.string());
    f << content;
}

} // namespace

int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err) {
    Graph g;
    try {
        g = load_edge_list_file(args.input);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    if (args.fat < 1) {
        err << "--fat must be at least 1\n";
        return kExitUsage;
    }
    if (args.scaled_constants && args.target != "k4") {
        err << "--scaled-constants applies only to --target k4\n";
        return kExitUsage;
    }

    PipelineOutcome res;
    try {
        res = run_pipeline(g, args.target, args.fat,
                           args.scaled_constants, args.budget.value_or(default_budget()));
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    std::string certificate;
    std::string cert_name;
    if (res.decomposition) {
        certificate = cg::to_string(*res.decomposition);
        cert_name = "decomposition.txt";
    } else if (res.witness) {
        certificate = cg::to_string(*res.witness);
        cert_name = "witness.txt";
    }

    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        std::filesystem::path dir(args.out_dir);
        if (!cert_name.empty()) write_file(dir / cert_name, certificate);
        if (res.qi) write_file(dir / "qi.txt", cg::to_string(*res.qi));
        write_file(dir / "report.json", res.report.to_json().dump(2) + "\n");
        out << res.branch << " -> "
            << (dir / (cert_name.empty() ? "report.json" : cert_name)).string() << "\n";
    } else if (args.json) {
        json envelope = res.report.to_json();
        envelope["certificate_kind"] = res.decomposition ? "decomposition"
                                       : res.witness     ? "model"
                                                         : "none";
        envelope["certificate"] = certificate;
        if (res.qi) envelope["qi"] = cg::to_string(*res.qi);
        out << envelope.dump(2) << "\n";
    } else {
        out << "# branch: " << res.branch << "\n" << certificate;
        if (!res.detail.empty()) out << "# " << res.detail << "\n";
    }

    if (res.branch == "decomposition") return kExitOk;
    if (res.branch == "witness") return kExitWitness;
    return kExitBudget;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    Graph g;
    try {
        g = load_edge_list_file(args.graph);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    std::ifstream cert(args.certificate);
    if (!cert) {
        err << "cannot open certificate: " << args.certificate << "\n";
        return kExitUsage;
    }

    try {
        if (args.kind == "decomposition") {
            GraphDecomposition d = load_decomposition(cert);
            PartialDecomposition full{d, d.bag_union()};
            if (!(full.support == g.vertex_set())) {
                out << "invalid: bags do not cover the graph\n";
                return kExitInvalid;
            }
            DecompositionReport rep = validate(g, full);
            if (!rep.ok_honest()) {
                out << "invalid: " << (rep.violations.empty() ? "validation failed"
                                                              : rep.violations.front())
                    << "\n";
                return kExitInvalid;
            }
            out << "valid decomposition: orw " << rep.orw.str() << ", irs " << rep.irs.str()
                << ", nodes " << d.h.vertex_count() << "\n";
            return kExitOk;
        }
        if (args.kind == "model") {
            MinorModel m = load_model(cert);
            ModelCheck check = validate_model(g, m);
            if (!check.ok) {
                out << "invalid: " << check.violation << "\n";
                return kExitInvalid;
            }
            out << "valid model: fatness " << fatness(g, m).str() << "\n";
            return kExitOk;
        }
        if (args.kind == "qi") {
            if (args.aux.empty()) {
                err << "--aux DECOMPOSITION is required for kind qi (it provides the source "
                       "graph)\n";
                return kExitUsage;
            }
            std::ifstream auxf(args.aux);
            if (!auxf) {
                err << "cannot open " << args.aux << "\n";
                return kExitUsage;
            }
            GraphDecomposition d = load_decomposition(auxf);
            QuasiIsometry q = load_qi(cert);
            QiCheck check = verify_qi(d.h, g, q);
            if (!check.ok) {
                out << "invalid: " << check.failure << "\n";
                return kExitInvalid;
            }
            auto show = [](const Rational& r) {
                std::string s = std::to_string(r.numerator());
                if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
                return s;
            };
            out << "valid quasi-isometry with constants " << show(q.m) << ", " << show(q.a)
                << "\n";
            return kExitOk;
        }
        err << "unknown kind '" << args.kind << "'\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "certificate does not parse as " << args.kind << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const StructuralError& e) {
        out << "invalid: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const PreconditionError& e) {
        out << "invalid: " << e.what() << "\n";
        return kExitInvalid;
    }
}

int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err) {
    Graph g;
    try {
        g = load_edge_list_file(args.input);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    Graph pattern;
    try {
        if (args.pattern == "k3") pattern = pattern_graph(Pattern::K3);
        else if (args.pattern == "k4") pattern = pattern_graph(Pattern::K4);
        else if (args.pattern == "k4minus") pattern = pattern_graph(Pattern::K4Minus);
        else throw Error("unknown pattern '" + args.pattern + "'");
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    try {
        SearchBudget budget{args.budget.value_or(default_budget())};
        auto model = brute_force_fat_minor(g, pattern, args.fat, budget);
        if (!model) {
            out << "none\n";
            return kExitInvalid;
        }
        if (args.json) {
            json j;
            j["fatness"] = fatness(g, *model).str();
            j["model"] = cg::to_string(*model);
            out << j.dump(2) << "\n";
        } else {
            out << cg::to_string(*model);
        }
        return kExitOk;
    } catch (const BudgetError& e) {
        err << e.what() << "\n";
        return kExitBudget;
    }
}

int cmd_recognize(const RecognizeArgs& args, std::ostream& out, std::ostream& err) {
    Graph g;
    try {
        g = load_edge_list_file(args.input);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    try {
        bool free = is_minor_free(g, parse_target(args.target));
        out << args.target << "-minor-free: " << (free ? "true" : "false") << "\n";
        return free ? kExitOk : kExitInvalid;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

// ------------------------------------------------------------------- corpus

namespace {

struct CorpusEntry {
    std::string name;
    Graph graph;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

CorpusEntry make_entry(const std::string& spec) {
    auto f = split(spec, ':');
    auto geti = [&](std::size_t i) { return std::stoi(f.at(i)); };
    const std::string& kind = f.at(0);
    if (kind == "path") return {spec, path_graph(geti(1))};
    if (kind == "cycle") return {spec, cycle_graph(geti(1))};
    if (kind == "tree") return {spec, random_tree(geti(1), static_cast<std::uint64_t>(geti(2)))};
    if (kind == "grid") return {spec, grid_graph(geti(1), geti(2))};
    if (kind == "gnp")
        return {spec, gnp_graph(geti(1), std::stod(f.at(2)), static_cast<std::uint64_t>(geti(3)))};
    if (kind == "theta") return {spec, theta_graph(geti(1), geti(2), geti(3))};
    if (kind == "k4trap") return {spec, k4_trap(geti(1))};
    if (kind == "k4minustrap") return {spec, k4minus_trap(geti(1))};
    if (kind == "comb") return {spec, comb_cycle(geti(1), geti(2), geti(3))};
    if (kind == "complete") return {spec, complete_graph(geti(1))};
    throw Error("unknown generator '" + kind + "'");
}

std::vector<CorpusEntry> builtin_corpus() {
    std::vector<std::string> specs{
        "path:1",        "path:13",        "path:200",      "path:500",  "cycle:6",
        "cycle:60",      "cycle:500",      "tree:40:1",     "tree:300:2", "grid:5:5",
        "grid:12:12",    "gnp:20:0.15:3",  "gnp:40:0.1:4",  "gnp:40:0.3:5",
        "theta:30:40:50", "theta:80:90:100", "k4minustrap:60", "k4minustrap:120",
        "k4trap:30",     "complete:6",
    };
    std::vector<CorpusEntry> out;
    out.reserve(specs.size());
    for (const auto& s : specs) out.push_back(make_entry(s));
    return out;
}

struct CorpusRow {
    std::string name;
    std::string target;
    int fat;
    std::string branch;
    long long orw = -1;
    long long irs = -1;
    long long h_size = -1;
    std::string fatness;
    bool verified = false;
    double wall_ms = 0;
};

CorpusRow run_corpus_entry(const CorpusEntry& e, const std::string& target, int fat,
                           std::optional<int> scaled, long long budget) {
    CorpusRow row;
    row.name = e.name;
    row.target = target;
    row.fat = fat;
    PipelineOutcome res = run_pipeline(e.graph, target, fat, scaled, budget);
    row.branch = res.branch;
    row.orw = res.report.orw;
    row.irs = res.report.irs;
    row.h_size = res.report.h_size;
    Pattern pattern = parse_target(target);
    if (res.decomposition) {
        PartialDecomposition full{*res.decomposition, res.decomposition->bag_union()};
        DecompositionReport rep = validate(e.graph, full);
        bool bounds = true;
        if (pattern == Pattern::K4Minus)
            bounds = rep.orw <= 42LL * fat + 1 && rep.irs <= 28LL * fat + 3;
        else {
            ConstantsBundle cb = scaled ? ConstantsBundle::scaled(fat, *scaled)
                                        : ConstantsBundle::production(fat);
            bounds = rep.orw <= cb.f0 && rep.irs <= cb.f1;
        }
        bool qi_ok = true;
        if (res.qi) qi_ok = verify_qi(res.decomposition->h, e.graph, *res.qi).ok;
        row.verified = rep.ok_honest() && bounds && qi_ok &&
                       full.support == e.graph.vertex_set() &&
                       is_minor_free(res.decomposition->h, pattern);
    } else if (res.witness) {
        ExtInt f = fatness(e.graph, *res.witness);
        row.fatness = f.str();
        row.verified = validate_model(e.graph, *res.witness).ok && f >= fat;
    }
    row.wall_ms = res.report.wall_ms;
    return row;
}

} // namespace

int cmd_corpus(const CorpusArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<CorpusEntry> entries;
    try {
        if (args.spec == "builtin") entries = builtin_corpus();
        else if (!args.spec.empty()) {
            for (const auto& s : split(args.spec, ',')) {
                if (!s.empty()) entries.push_back(make_entry(s));
            }
        }
    } catch (const std::exception& e) {
        err << "bad corpus spec: " << e.what() << "\n";
        return kExitUsage;
    }

    struct Task {
        const CorpusEntry* entry;
        std::string target;
        int fat;
    };
    std::vector<Task> tasks;
    for (const auto& e : entries)
        for (const auto& t : args.targets)
            for (int k : args.fats) tasks.push_back({&e, t, k});

    long long budget = args.budget.value_or(default_budget());
    unsigned jobs = args.jobs > 0 ? static_cast<unsigned>(args.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
    std::vector<CorpusRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            rows[i] = run_corpus_entry(*tasks[i].entry, tasks[i].target, tasks[i].fat,
                                       args.scaled_constants, budget);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs && t < tasks.size(); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    bool all_verified = true;
    bool any_budget = false;
    if (args.json) {
        json arr = json::array();
        for (const auto& r : rows) {
            json j;
            j["name"] = r.name;
            j["target"] = r.target;
            j["fat"] = r.fat;
            j["branch"] = r.branch;
            j["orw"] = r.orw;
            j["irs"] = r.irs;
            j["h_nodes"] = r.h_size;
            j["fatness"] = r.fatness;
            j["verified"] = r.verified;
            j["wall_ms"] = r.wall_ms;
            arr.push_back(j);
        }
        out << arr.dump(2) << "\n";
    } else {
        out << "name\ttarget\tfat\tbranch\torw\tirs\th_nodes\tfatness\tverified\tms\n";
        for (const auto& r : rows) {
            out << r.name << '\t' << r.target << '\t' << r.fat << '\t' << r.branch << '\t'
                << r.orw << '\t' << r.irs << '\t' << r.h_size << '\t'
                << (r.fatness.empty() ? "-" : r.fatness) << '\t'
                << (r.verified ? "true" : "false") << '\t' << static_cast<long long>(r.wall_ms)
                << "\n";
        }
    }
    for (const auto& r : rows) {
        if (r.branch == "budget-error") any_budget = true;
        else if (!r.verified) all_verified = false;
    }
    if (!all_verified) return kExitInvalid;
    if (any_budget && !args.allow_budget_errors) return kExitBudget;
    return kExitOk;
}

} // namespace cgcli
