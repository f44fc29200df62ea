// dlgctl: control-phase segmentation and analysis of annotated dialogue
// transcripts, plus a belief-state interruption simulator.
//
// Reports go to stdout, diagnostics to stderr, so the tool composes in
// pipelines.  Exit status is 0 on success and nonzero on any input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlgctl/errors.hpp"
#include "dlgctl/report.hpp"

namespace {

dlgctl::ClassifierConfig load_config(const std::string& path) {
    if (path.empty()) return dlgctl::ClassifierConfig::defaults();
    std::ifstream in(path);
    if (!in) throw dlgctl::ContractError("cannot open config file: " + path);
    return dlgctl::load_classifier_config(in, path);
}

dlgctl::DialogueAnalysis analyze_file(const std::string& path, const std::string& judges_path,
                                      const dlgctl::ClassifierConfig& cfg) {
    dlgctl::PipelineInput input{path, std::nullopt};
    if (!judges_path.empty()) input.judges_path = judges_path;
    dlgctl::CorpusReport report = dlgctl::run_pipeline({input}, cfg);
    return std::move(report.dialogues.front());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dialogue control analyzer: segments annotated transcripts into "
                 "control phases, classifies control shifts, audits cue words, "
                 "adjudicates topic shifts and simulates interruption rules."};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Classifier lexicon config (JSON)")
        ->envname("DLGCTL_CONFIG");

    bool text_output = false;
    app.add_flag("--text", text_output, "Render tables instead of JSON");

    // segment
    auto* segment = app.add_subcommand("segment", "Per-turn control and phase segmentation");
    std::string segment_file;
    bool mechanical = false;
    segment->add_option("file", segment_file, "Transcript (.dlg)")->required();
    segment->add_flag("--mechanical", mechanical,
                      "Show mechanical phases (a closing prompt opens the next phase)");

    // shifts
    auto* shifts = app.add_subcommand("shifts", "Classified control shifts");
    std::string shifts_file;
    shifts->add_option("file", shifts_file, "Transcript (.dlg)")->required();

    // audit
    auto* audit = app.add_subcommand("audit", "Cue-word reliability audit");
    std::string audit_file;
    audit->add_option("file", audit_file, "Transcript (.dlg)")->required();

    // topics
    auto* topics = app.add_subcommand("topics", "Topic adjudication and per-topic control");
    std::string topics_file, topics_judges;
    topics->add_option("file", topics_file, "Transcript (.dlg)")->required();
    topics->add_option("--judges", topics_judges, "Judge votes (TSV)")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run the interruption rules over a scenario");
    std::string scenario_file;
    simulate->add_option("scenario", scenario_file, "Scenario (JSON)")->required();

    // report
    auto* report = app.add_subcommand("report", "Full corpus report");
    std::vector<std::string> report_files;
    std::vector<std::string> report_judges;
    report->add_option("files", report_files, "Transcripts (.dlg)")->required()->expected(-1);
    report->add_option("--judges", report_judges,
                       "Judge files, one per transcript in order ('-' to skip a dialogue)");

    CLI11_PARSE(app, argc, argv);

    try {
        const dlgctl::ClassifierConfig cfg = load_config(config_path);

        if (*segment) {
            auto a = analyze_file(segment_file, "", cfg);
            std::cout << (text_output ? dlgctl::segment_text(a, mechanical)
                                      : dlgctl::segment_json(a, mechanical));
        } else if (*shifts) {
            auto a = analyze_file(shifts_file, "", cfg);
            std::cout << (text_output ? dlgctl::shifts_text(a) : dlgctl::shifts_json(a));
        } else if (*audit) {
            auto a = analyze_file(audit_file, "", cfg);
            std::cout << (text_output ? dlgctl::audit_text(a) : dlgctl::audit_json(a));
        } else if (*topics) {
            auto a = analyze_file(topics_file, topics_judges, cfg);
            std::cout << (text_output ? dlgctl::topics_text(a) : dlgctl::topics_json(a));
        } else if (*simulate) {
            std::ifstream in(scenario_file);
            if (!in) throw dlgctl::ContractError("cannot open scenario file: " + scenario_file);
            dlgctl::Scenario sc = dlgctl::parse_scenario(in, scenario_file);
            auto steps = dlgctl::step_scenario(sc);
            std::cout << (text_output ? dlgctl::simulate_text(sc, steps)
                                      : dlgctl::simulate_json(sc, steps));
        } else if (*report) {
            if (!report_judges.empty() && report_judges.size() != report_files.size())
                throw dlgctl::ContractError(
                    "--judges must list one file per transcript (use '-' to skip)");
            std::vector<dlgctl::PipelineInput> inputs;
            for (size_t i = 0; i < report_files.size(); ++i) {
                dlgctl::PipelineInput input{report_files[i], std::nullopt};
                if (i < report_judges.size() && report_judges[i] != "-")
                    input.judges_path = report_judges[i];
                inputs.push_back(std::move(input));
            }
            dlgctl::CorpusReport rep = dlgctl::run_pipeline(inputs, cfg);
            std::cout << (text_output ? dlgctl::render_text(rep) : dlgctl::render_json(rep));
        }
    } catch (const std::exception& e) {
        std::cerr << "dlgctl: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
