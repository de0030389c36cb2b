#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "slrscreen/cli.hpp"

using namespace slrscreen;

namespace {

struct CommonFlags {
    std::string config_file;
    std::optional<std::string> out_dir;
    std::optional<std::string> fake_rules;
    std::optional<int> concurrency;
    bool strict_parse = false;
    bool no_doi_prefix_strip = false;
    bool audit_removed = false;
    bool resume = true;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool screening_stage) {
    cmd->add_option("-c,--config", flags.config_file, "run configuration (JSON)")
        ->required();
    cmd->add_option("--out-dir", flags.out_dir,
                    "output directory (overrides the configured one)");
    cmd->add_flag("--no-doi-prefix-strip", flags.no_doi_prefix_strip,
                  "compare DOIs without stripping doi:/doi.org prefixes");
    if (screening_stage) {
        cmd->add_option("--fake-assessor", flags.fake_rules,
                        "scripted-reply rules file; screens offline, no credential needed");
        cmd->add_option("--concurrency", flags.concurrency, "worker threads")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--strict-parse", flags.strict_parse,
                      "require exact reply keys (no case or whitespace slack)");
        cmd->add_flag("--resume,!--no-resume", flags.resume,
                      "reuse the run journal (default) / start afresh");
    }
}

int load_and_dispatch(const CommonFlags& flags, bool screening_stage, bool audit_flag,
                      int (*command)(const PipelineConfig&, std::ostream&, std::ostream&)) {
    PipelineConfig config;
    try {
        config = load_pipeline_config(flags.config_file);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitConfig;
    }
    if (flags.out_dir) config.out_dir = *flags.out_dir;
    if (flags.no_doi_prefix_strip) config.strip_doi_prefixes = false;
    if (audit_flag) config.audit_removed = true;
    if (flags.strict_parse) config.strict_parse = true;
    if (screening_stage) {
        if (flags.fake_rules) config.fake_rules = *flags.fake_rules;
        if (flags.concurrency) config.run.concurrency = *flags.concurrency;
        config.resume = flags.resume;
        try {
            validate_config(config);
        } catch (const ConfigError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return cli::kExitConfig;
        }
    }
    return command(config, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Systematic-review screening pipeline: dedup bibliographic exports, "
                 "screen each article against a model endpoint, report the outcomes"};
    app.require_subcommand(1);

    CommonFlags dedup_flags, screen_flags, run_flags, reparse_flags;
    bool dedup_audit = false, run_audit = false;
    std::string validate_config_file;

    CLI::App* dedup = app.add_subcommand("dedup", "merge inputs, drop incomplete, dedup");
    add_common(dedup, dedup_flags, false);
    dedup->add_flag("--audit-removed", dedup_audit,
                    "also write removed_records.csv with removal reasons");

    CLI::App* screen = app.add_subcommand("screen", "screen the cleaned corpus");
    add_common(screen, screen_flags, true);

    CLI::App* run = app.add_subcommand("run", "dedup then screen");
    add_common(run, run_flags, true);
    run->add_flag("--audit-removed", run_audit,
                  "also write removed_records.csv with removal reasons");

    CLI::App* validate = app.add_subcommand("validate-config", "check a configuration file");
    validate->add_option("-c,--config", validate_config_file, "run configuration (JSON)")
        ->required();

    CLI::App* reparse = app.add_subcommand(
        "re-parse", "rebuild results from journaled raw replies, no endpoint contact");
    add_common(reparse, reparse_flags, false);
    reparse->add_flag("--strict-parse", reparse_flags.strict_parse,
                      "require exact reply keys (no case or whitespace slack)");

    CLI11_PARSE(app, argc, argv);

    if (dedup->parsed()) {
        return load_and_dispatch(dedup_flags, false, dedup_audit, cli::command_dedup);
    }
    if (screen->parsed()) {
        return load_and_dispatch(screen_flags, true, false, cli::command_screen);
    }
    if (run->parsed()) {
        return load_and_dispatch(run_flags, true, run_audit, cli::command_run);
    }
    if (reparse->parsed()) {
        return load_and_dispatch(reparse_flags, false, false, cli::command_reparse);
    }
    if (validate->parsed()) {
        return cli::command_validate(validate_config_file, std::cout, std::cerr);
    }
    return cli::kExitFailure;
}
