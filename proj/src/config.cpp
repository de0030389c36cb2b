#include "slrscreen/config.hpp"

#include <nlohmann/json.hpp>

#include "slrscreen/io.hpp"
#include "slrscreen/text.hpp"

namespace slrscreen {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool found = false;
        for (std::string_view k : known) {
            if (key == k) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <typename T>
T require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "' in " + where + ": " +
                          e.what());
    }
}

ColumnMap parse_columns(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"authors", "title", "abstract", "doi", "year"}, where);
    ColumnMap columns;
    columns.authors = get_or<std::string>(j, "authors", columns.authors);
    columns.title = get_or<std::string>(j, "title", columns.title);
    columns.abstract = get_or<std::string>(j, "abstract", columns.abstract);
    columns.doi = get_or<std::string>(j, "doi", columns.doi);
    columns.year = get_or<std::string>(j, "year", columns.year);
    return columns;
}

}  // namespace

ConfigError::ConfigError(const std::string& detail)
    : std::runtime_error("configuration error: " + detail) {}

PipelineConfig load_pipeline_config(const std::filesystem::path& file) {
    std::string text;
    try {
        text = read_text_file(file);
    } catch (const FileUnreadable& e) {
        throw ConfigError(e.what());
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ConfigError(file.string() + " is not valid JSON");
    }

    reject_unknown_keys(j,
                        {"run_id", "inputs", "criteria", "endpoint", "output_dir", "options"},
                        "top level");

    PipelineConfig config;
    config.run_id = get_or<std::string>(j, "run_id", config.run_id);

    const std::filesystem::path base = file.has_parent_path()
                                           ? file.parent_path()
                                           : std::filesystem::path(".");
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base / path;
    };

    if (!j.contains("inputs") || !j.at("inputs").is_array() || j.at("inputs").empty()) {
        throw ConfigError("'inputs' must be a non-empty array");
    }
    for (size_t i = 0; i < j.at("inputs").size(); ++i) {
        const json& in = j.at("inputs")[i];
        const std::string where = "inputs[" + std::to_string(i) + "]";
        if (!in.is_object()) throw ConfigError(where + " must be an object");
        reject_unknown_keys(in, {"path", "source", "columns"}, where);
        InputSpec spec;
        spec.path = resolve(require<std::string>(in, "path", where));
        spec.source_label = require<std::string>(in, "source", where);
        if (in.contains("columns")) {
            spec.columns = parse_columns(in.at("columns"), where + ".columns");
        }
        config.inputs.push_back(std::move(spec));
    }

    if (!j.contains("criteria")) throw ConfigError("missing key 'criteria'");
    const json& crit = j.at("criteria");
    if (!crit.is_object()) throw ConfigError("'criteria' must be an object");
    reject_unknown_keys(crit, {"topic", "items", "extra_guidance"}, "criteria");
    config.criteria.topic = require<std::string>(crit, "topic", "criteria");
    if (!crit.contains("items") || !crit.at("items").is_array() || crit.at("items").empty()) {
        throw ConfigError("'criteria.items' must be a non-empty array");
    }
    for (size_t i = 0; i < crit.at("items").size(); ++i) {
        const json& item = crit.at("items")[i];
        const std::string where = "criteria.items[" + std::to_string(i) + "]";
        reject_unknown_keys(item, {"heading", "body"}, where);
        config.criteria.items.push_back({require<std::string>(item, "heading", where),
                                         require<std::string>(item, "body", where)});
    }
    if (crit.contains("extra_guidance")) {
        config.criteria.extra_guidance = require<std::string>(crit, "extra_guidance", "criteria");
    }

    if (!j.contains("endpoint")) throw ConfigError("missing key 'endpoint'");
    const json& ep = j.at("endpoint");
    if (!ep.is_object()) throw ConfigError("'endpoint' must be an object");
    reject_unknown_keys(ep,
                        {"url", "model", "temperature", "max_retries", "base_backoff_ms",
                         "rate_limit_per_minute", "concurrency", "request_timeout_ms",
                         "parse_retry"},
                        "endpoint");
    config.run.endpoint_url = require<std::string>(ep, "url", "endpoint");
    config.run.model_name = require<std::string>(ep, "model", "endpoint");
    config.run.temperature = get_or<double>(ep, "temperature", config.run.temperature);
    config.run.max_retries = get_or<int>(ep, "max_retries", config.run.max_retries);
    config.run.base_backoff =
        std::chrono::milliseconds(get_or<long long>(ep, "base_backoff_ms", 1000));
    config.run.rate_limit_per_minute =
        get_or<double>(ep, "rate_limit_per_minute", config.run.rate_limit_per_minute);
    config.run.concurrency = get_or<int>(ep, "concurrency", config.run.concurrency);
    config.run.request_timeout =
        std::chrono::milliseconds(get_or<long long>(ep, "request_timeout_ms", 120000));
    config.run.parse_retry = get_or<int>(ep, "parse_retry", config.run.parse_retry);

    if (j.contains("output_dir")) {
        config.out_dir = resolve(require<std::string>(j, "output_dir", "top level"));
    }

    if (j.contains("options")) {
        const json& opt = j.at("options");
        reject_unknown_keys(opt, {"strip_doi_prefixes", "strict_parse", "audit_removed"},
                            "options");
        config.strip_doi_prefixes =
            get_or<bool>(opt, "strip_doi_prefixes", config.strip_doi_prefixes);
        config.strict_parse = get_or<bool>(opt, "strict_parse", config.strict_parse);
        config.audit_removed = get_or<bool>(opt, "audit_removed", config.audit_removed);
    }

    validate_config(config);
    return config;
}

void validate_config(const PipelineConfig& config) {
    if (is_blank(config.run_id)) throw ConfigError("run_id is blank");
    if (config.run_id.find('/') != std::string::npos ||
        config.run_id.find('\\') != std::string::npos) {
        throw ConfigError("run_id must not contain path separators");
    }
    if (config.inputs.empty()) throw ConfigError("no inputs configured");
    for (const InputSpec& input : config.inputs) {
        if (is_blank(input.source_label)) {
            throw ConfigError("input " + input.path.string() + " has a blank source label");
        }
        try {
            input.columns.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(input.path.string() + ": " + e.what());
        }
    }
    try {
        config.criteria.validate();
        config.run.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (config.out_dir.empty()) throw ConfigError("output_dir is empty");
}

}  // namespace slrscreen
