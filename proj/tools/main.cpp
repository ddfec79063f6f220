#include <iostream>

#include "CLI11.hpp"

#include "cli_lib.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Radial graph decompositions and fat-minor certificates"};
    app.require_subcommand(1);

    cgcli::DecomposeArgs dec;
    auto* decompose = app.add_subcommand(
        "decompose", "Decompose a graph toward a minor-free model graph or find a fat minor");
    decompose->add_option("input", dec.input, "edge-list file")->required();
    decompose->add_option("--target", dec.target, "k4 or k4minus")->required();
    decompose->add_option("--fat", dec.fat, "fatness parameter K")->default_val(1);
    decompose->add_option("--out", dec.out_dir, "output directory for artifacts");
    int scaled = 0;
    auto* scaled_opt = decompose->add_option(
        "--scaled-constants", scaled, "replacement hitting-ball factor (3..129, k4 only)");
    long long budget = 0;
    auto* budget_opt = decompose->add_option("--budget", budget, "search budget");
    decompose->add_flag("--json", dec.json, "wrap output in a JSON envelope");

    cgcli::VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Verify a certificate against a graph");
    verify->add_option("--graph", ver.graph, "edge-list file")->required();
    verify->add_option("--certificate", ver.certificate, "certificate file")->required();
    verify->add_option("--kind", ver.kind, "decomposition, model or qi")->required();
    verify->add_option("--aux", ver.aux, "decomposition file providing H (kind qi)");

    cgcli::SearchArgs sea;
    auto* search = app.add_subcommand("search", "Exhaustively search for a fat minor model");
    search->add_option("input", sea.input, "edge-list file")->required();
    search->add_option("--pattern", sea.pattern, "k3, k4 or k4minus")->required();
    search->add_option("--fat", sea.fat, "fatness parameter K")->default_val(0);
    long long search_budget = 0;
    auto* search_budget_opt = search->add_option("--budget", search_budget, "search budget");
    search->add_flag("--json", sea.json, "JSON output");

    cgcli::RecognizeArgs rec;
    auto* recognize = app.add_subcommand("recognize", "Test minor-freeness of a graph");
    recognize->add_option("input", rec.input, "edge-list file")->required();
    recognize->add_option("--target", rec.target, "k4 or k4minus")->required();

    cgcli::CorpusArgs cor;
    auto* corpus = app.add_subcommand("corpus", "Run a corpus of generated graphs");
    corpus->add_option("--spec", cor.spec,
                       "comma-separated generator specs, or 'builtin' (empty: no runs)");
    corpus->add_option("--fat", cor.fats, "fatness values");
    corpus->add_option("--targets", cor.targets, "targets (k4, k4minus)")->delimiter(',');
    int cor_scaled = 0;
    auto* cor_scaled_opt =
        corpus->add_option("--scaled-constants", cor_scaled, "hitting-ball factor (k4 only)");
    long long cor_budget = 0;
    auto* cor_budget_opt = corpus->add_option("--budget", cor_budget, "search budget");
    corpus->add_flag("--json", cor.json, "JSON output");
    corpus->add_option("--jobs", cor.jobs, "parallel workers (0 = auto)");
    corpus->add_flag("--allow-budget-errors", cor.allow_budget_errors,
                     "exit 0 even when some rows hit the budget");

    CLI11_PARSE(app, argc, argv);

    if (decompose->parsed()) {
        if (*scaled_opt) dec.scaled_constants = scaled;
        if (*budget_opt) dec.budget = budget;
        return cgcli::cmd_decompose(dec, std::cout, std::cerr);
    }
    if (verify->parsed()) return cgcli::cmd_verify(ver, std::cout, std::cerr);
    if (search->parsed()) {
        if (*search_budget_opt) sea.budget = search_budget;
        return cgcli::cmd_search(sea, std::cout, std::cerr);
    }
    if (recognize->parsed()) return cgcli::cmd_recognize(rec, std::cout, std::cerr);
    if (corpus->parsed()) {
        if (*cor_scaled_opt) cor.scaled_constants = cor_scaled;
        if (*cor_budget_opt) cor.budget = cor_budget;
        return cgcli::cmd_corpus(cor, std::cout, std::cerr);
    }
    return cgcli::kExitUsage;
}
