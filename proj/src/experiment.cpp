#include "hybridsec/experiment.hpp"

#include "hybridsec/error.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <limits>
#include <set>

namespace hybridsec {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 3> kPlcFileKeys{
    "plc_alice_bob_file", "plc_alice_eve_file", "plc_bob_eve_file"};

std::vector<double> grid(double start, double step, std::size_t count)
{
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = start + step * static_cast<double>(i);
    }
    return v;
}

double get_number(const json& doc, const std::string& key)
{
    const json& v = doc.at(key);
    if (!v.is_number()) {
        throw ConfigError("config key '" + key + "' must be a number");
    }
    return v.get<double>();
}

std::uint64_t get_count(const json& doc, const std::string& key)
{
    const json& v = doc.at(key);
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
}

std::string get_string(const json& doc, const std::string& key)
{
    const json& v = doc.at(key);
    if (!v.is_string()) {
        throw ConfigError("config key '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::string timestamp_utc()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

json record_json(const ThroughputRecord& r)
{
    return json{{"scheme", to_string(r.scheme)},
                {"eve_mode", to_string(r.eve_mode)},
                {"param", r.param},
                {"value", r.value},
                {"mu", r.mu},
                {"outage_prob", r.outage_prob},
                {"trials", r.trials},
                {"successes", r.successes},
                {"ci", r.ci}};
}

} // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5"};
    return names;
}

ExperimentConfig make_preset(std::string_view name)
{
    ExperimentConfig cfg;
    cfg.name = std::string(name);
    cfg.preset = std::string(name);
    cfg.base = ScenarioConfig{};
    if (name == "fig2") {
        cfg.schemes = {Scheme::PlcOnly, Scheme::WirelessOnly, Scheme::Tsc, Scheme::AnSharing};
        cfg.sweep_param = SweepParam::GammaADb;
        cfg.sweep_values = grid(0.0, 2.0, 21);
    } else if (name == "fig3") {
        cfg.schemes = {Scheme::Tsc, Scheme::AnSharing};
        cfg.sweep_param = SweepParam::GammaBDb;
        cfg.sweep_values = grid(0.0, 2.0, 16);
    } else if (name == "fig4") {
        cfg.schemes = {Scheme::PlcOnly, Scheme::WirelessOnly, Scheme::Tsc, Scheme::AnSharing};
        cfg.sweep_param = SweepParam::TargetR;
        cfg.sweep_values = grid(0.25, 0.25, 20);
    } else if (name == "fig5") {
        cfg.schemes = {Scheme::Tsc, Scheme::AnSharing};
        cfg.sweep_param = SweepParam::Theta;
        cfg.sweep_values = grid(0.0, 0.05, 21);
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig2, fig3, fig4, fig5)");
    }
    return cfg;
}

void apply_config(ExperimentConfig& cfg, const json& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    ScenarioConfig& b = cfg.base;
    for (const auto& [key, value] : doc.items()) {
        if (key == "preset") {
            // applied by parse_config before the other keys
        } else if (key == "name") {
            cfg.name = get_string(doc, key);
        } else if (key == "n") {
            b.n = get_count(doc, key);
        } else if (key == "n_cp") {
            b.n_cp = get_count(doc, key);
        } else if (key == "gamma_a_db") {
            b.gamma_a_db = get_number(doc, key);
        } else if (key == "gamma_b_db") {
            b.gamma_b_db = get_number(doc, key);
        } else if (key == "kappa") {
            b.kappa = get_number(doc, key);
        } else if (key == "theta") {
            b.theta = get_number(doc, key);
        } else if (key == "target_r") {
            b.target_r = get_number(doc, key);
        } else if (key == "eve_mode") {
            b.eve_mode = parse_eve_mode(get_string(doc, key));
        } else if (key == "scheme") {
            cfg.schemes.clear();
            if (value.is_string()) {
                cfg.schemes.push_back(parse_scheme(value.get<std::string>()));
            } else if (value.is_array()) {
                for (const json& s : value) {
                    if (!s.is_string()) {
                        throw ConfigError("config key 'scheme' must list strings");
                    }
                    cfg.schemes.push_back(parse_scheme(s.get<std::string>()));
                }
            } else {
                throw ConfigError("config key 'scheme' must be a string or a list");
            }
        } else if (key == "wireless_taps") {
            b.wireless_taps = get_count(doc, key);
        } else if (key == "trials") {
            b.trials = get_count(doc, key);
        } else if (key == "seed") {
            b.seed = get_count(doc, key);
        } else if (key == "block_efficiency") {
            b.block_efficiency = get_number(doc, key);
        } else if (key == "workers") {
            const auto w = get_count(doc, key);
            if (w > std::numeric_limits<unsigned>::max()) {
                throw ConfigError("workers out of range");
            }
            b.workers = static_cast<unsigned>(w);
        } else if (key == "sweep_param") {
            cfg.sweep_param = parse_sweep_param(get_string(doc, key));
        } else if (key == "sweep_values") {
            if (!value.is_array()) {
                throw ConfigError("config key 'sweep_values' must be a list of numbers");
            }
            cfg.sweep_values.clear();
            for (const json& v : value) {
                if (!v.is_number()) {
                    throw ConfigError("config key 'sweep_values' must be a list of numbers");
                }
                cfg.sweep_values.push_back(v.get<double>());
            }
        } else {
            bool matched = false;
            for (std::size_t i = 0; i < kPlcFileKeys.size(); ++i) {
                if (key == kPlcFileKeys[i]) {
                    if (value.is_null()) {
                        b.plc_files[i].reset();
                    } else {
                        b.plc_files[i] = std::filesystem::path(get_string(doc, key));
                    }
                    matched = true;
                }
            }
            if (!matched) {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    }
}

ExperimentConfig parse_config(const json& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    if (doc.contains("tool") && doc.contains("config")) {
        return parse_config(doc.at("config"));
    }
    ExperimentConfig cfg;
    if (doc.contains("preset")) {
        const json& p = doc.at("preset");
        if (p.is_string() && !p.get<std::string>().empty()) {
            cfg = make_preset(p.get<std::string>());
        } else if (!p.is_string()) {
            throw ConfigError("config key 'preset' must be a string");
        }
    }
    apply_config(cfg, doc);
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    ExperimentConfig cfg = parse_config(doc);
    const auto dir = std::filesystem::absolute(path).parent_path();
    for (auto& file : cfg.base.plc_files) {
        if (file && file->is_relative()) {
            file = dir / *file;
        }
    }
    return cfg;
}

json to_json(const ExperimentConfig& cfg)
{
    const ScenarioConfig& b = cfg.base;
    json schemes = json::array();
    for (Scheme s : cfg.schemes) {
        schemes.push_back(to_string(s));
    }
    json doc{{"preset", cfg.preset},
             {"name", cfg.name},
             {"n", b.n},
             {"n_cp", b.n_cp},
             {"gamma_a_db", b.gamma_a_db},
             {"gamma_b_db", b.gamma_b_db},
             {"kappa", b.kappa},
             {"theta", b.theta},
             {"target_r", b.target_r},
             {"eve_mode", to_string(b.eve_mode)},
             {"scheme", schemes},
             {"wireless_taps", b.effective_wireless_taps()},
             {"trials", b.trials},
             {"seed", b.seed},
             {"block_efficiency", b.block_efficiency},
             {"sweep_param", to_string(cfg.sweep_param)},
             {"sweep_values", cfg.sweep_values}};
    for (std::size_t i = 0; i < kPlcFileKeys.size(); ++i) {
        doc[std::string(kPlcFileKeys[i])] =
            b.plc_files[i] ? json(b.plc_files[i]->string()) : json(nullptr);
    }
    return doc;
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.schemes.empty()) {
        throw ConfigError("at least one scheme is required");
    }
    if (cfg.sweep_values.empty()) {
        throw ConfigError("sweep_values must not be empty");
    }
    if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
        throw ConfigError("name must be a plain file stem");
    }
    std::set<Scheme> seen;
    for (Scheme s : cfg.schemes) {
        if (!seen.insert(s).second) {
            throw ConfigError("scheme listed twice: " + std::string(to_string(s)));
        }
    }
    for (double v : cfg.sweep_values) {
        ScenarioConfig point = with_param(cfg.base, cfg.sweep_param, v);
        for (Scheme s : cfg.schemes) {
            point.scheme = s;
            validate(point);
        }
    }
}

std::vector<ThroughputRecord> run_experiment(const ExperimentConfig& cfg)
{
    validate(cfg);
    return sweep(cfg.base, cfg.sweep_param, cfg.sweep_values, cfg.schemes);
}

RunOutputs run_and_write(const ExperimentConfig& cfg, const std::filesystem::path& out_dir)
{
    validate(cfg);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }
    RunOutputs paths{out_dir / (cfg.name + ".csv"), out_dir / (cfg.name + ".json"),
                     out_dir / (cfg.name + ".manifest.json")};
    // Fail on unwritable paths before spending time on the simulation.
    for (const auto& p : {paths.csv, paths.json, paths.manifest}) {
        std::ofstream probe(p, std::ios::app);
        if (!probe) {
            throw IoError("cannot write " + p.string());
        }
    }

    const std::vector<ThroughputRecord> records = run_experiment(cfg);
    write_results_csv(paths.csv, records);

    const json config = to_json(cfg);
    json mirror{{"tool", kToolName}, {"version", kToolVersion}, {"config", config},
                {"records", json::array()}};
    for (const ThroughputRecord& r : records) {
        mirror["records"].push_back(record_json(r));
    }
    write_text(paths.json, mirror.dump(2) + "\n");

    json manifest{{"tool", kToolName},
                  {"version", kToolVersion},
                  {"timestamp", timestamp_utc()},
                  {"preset", cfg.preset},
                  {"seed", cfg.base.seed},
                  {"outputs", {{"csv", paths.csv.string()}, {"json", paths.json.string()}}},
                  {"config", config}};
    write_text(paths.manifest, manifest.dump(2) + "\n");
    return paths;
}

void export_default_plc(const std::filesystem::path& out_dir, std::size_t n)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }
    const PlcProfile profile = default_plc_profile(n);
    for (LinkId link : kLinks) {
        std::string stem = "plc_" + std::string(to_string(link));
        for (char& c : stem) {
            if (c == '-') {
                c = '_';
            }
        }
        write_plc_channel_file(out_dir / (stem + ".csv"), plc_response(profile.source(link)));
    }
}

} // namespace hybridsec
