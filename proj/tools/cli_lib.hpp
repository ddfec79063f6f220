#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cgcli {

// Exit codes shared by every subcommand. These are a stable contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitWitness = 10;
inline constexpr int kExitBudget = 20;

long long default_budget(); // honors COARSEGRAPH_BUDGET

struct DecomposeArgs {
    std::string input;
    std::string target; // "k4" or "k4minus"
    int fat = 1;
    std::string out_dir;              // empty: print to stdout
    std::optional<int> scaled_constants; // hitting-ball factor, k4 only
    std::optional<long long> budget;
    bool json = false;
};
int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err);

struct VerifyArgs {
    std::string graph;
    std::string certificate;
    std::string kind; // "decomposition", "model" or "qi"
    std::string aux;  // decomposition file providing H for kind=qi
};
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

struct SearchArgs {
    std::string input;
    std::string pattern; // "k3", "k4" or "k4minus"
    int fat = 0;
    std::optional<long long> budget;
    bool json = false;
};
int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err);

struct RecognizeArgs {
    std::string input;
    std::string target; // "k4" or "k4minus"
};
int cmd_recognize(const RecognizeArgs& args, std::ostream& out, std::ostream& err);

struct CorpusArgs {
    std::string spec = "builtin"; // comma-separated generator specs, or "builtin"; "" = empty
    std::vector<int> fats{1};
    std::vector<std::string> targets{"k4minus"};
    std::optional<int> scaled_constants;
    std::optional<long long> budget;
    bool json = false;
    int jobs = 0; // 0 = hardware concurrency
    bool allow_budget_errors = false;
};
int cmd_corpus(const CorpusArgs& args, std::ostream& out, std::ostream& err);

} // namespace cgcli
