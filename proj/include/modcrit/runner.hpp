#ifndef MODCRIT_RUNNER_HPP
#define MODCRIT_RUNNER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modcrit/fixture.hpp"

namespace modcrit {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kEngineName = "modcrit";
inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr const char* kReportSchema = "modcrit.report/1";

struct RunConfig {
    std::string cache_dir;
    int jobs = 1;
    bool timing = false;
    SearchBounds bounds;
    size_t nmax = 8;
    std::string format = "json";
    std::string out_path;
};

struct Row {
    std::string key;
    std::string theorem;
    std::string verdict;
    std::string detail;
    ordered_json inputs = ordered_json::object();
    ordered_json witnesses = ordered_json::array();
};

/// Runs row thunks on `jobs` workers; results are assembled in declared order
/// regardless of completion order.
std::vector<Row> run_rows(std::vector<std::function<Row()>> tasks, int jobs);

/// Assembles the versioned report; checks fixture expectations for matching
/// row keys and records mismatches.
struct ReportResult {
    ordered_json report;
    int exit_code = 0;  // 1 when an expectation failed
};

ReportResult assemble_report(const FixtureDocument& doc, const std::vector<std::string>& command,
                             std::vector<Row> rows, const RunConfig& cfg);

std::string render_report(const ordered_json& report, const std::string& format);

/// Full CLI: parses arguments, runs, writes the rendered report to `out`.
/// Returns the process exit code (0 ok, 1 expectation failure, 2 usage/parse).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// --- theorem suites (used by the CLI and the acceptance tests) ---

std::vector<Row> flatred_rows(const FixtureDocument& doc, const ModulePresentation& M,
                              const std::vector<const PrimeDecl*>& candidates, int jobs);
std::vector<Row> frob_rows(const FixtureDocument& doc, uint32_t e,
                           const std::vector<std::string>& max_labels, int jobs);
std::vector<Row> localization_rows(const FixtureDocument& doc, const ModulePresentation& M,
                                   const MultiplicativeSet& W);
std::vector<Row> divred_rows(const FixtureDocument& doc, const MultiplicativeSet& W,
                             const Polynomial& c, const ModulePresentation* M,
                             const SearchBounds& bounds);
std::vector<Row> coasshom_rows(const FixtureDocument& doc, const ModulePresentation& L,
                               const std::vector<const PrimeDecl*>& candidates);
std::vector<Row> injred_rows(const FixtureDocument& doc, const ModulePresentation& L,
                             const std::vector<const PrimeDecl*>& candidates, int jobs);
std::vector<Row> validate_rows(const FixtureDocument& doc);

std::string verdict3_str(Verdict3 v);

}  // namespace modcrit

#endif
