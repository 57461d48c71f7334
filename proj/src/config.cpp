#include "secopt/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace secopt {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

bool parse_number(const std::string& tok, double& out) {
    char* end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end && *end == '\0' && end != tok.c_str();
}

ConfigValue parse_scalar(const std::string& tok, int line_no) {
    ConfigValue v;
    if (tok == "true" || tok == "false") {
        v.kind = ConfigValue::Kind::Bool;
        v.flag = (tok == "true");
        return v;
    }
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
        v.kind = ConfigValue::Kind::String;
        v.str = tok.substr(1, tok.size() - 2);
        return v;
    }
    if (parse_number(tok, v.num)) {
        v.kind = ConfigValue::Kind::Number;
        return v;
    }
    throw ConfigError("config line " + std::to_string(line_no) + ": bad value '" + tok + "'");
}

std::vector<std::string> split_top_commas(const std::string& body) {
    std::vector<std::string> parts;
    std::string cur;
    bool in_string = false;
    for (char c : body) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    const std::string last = trim(cur);
    if (!last.empty()) parts.push_back(last);
    return parts;
}

} // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap map;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) + ": bad section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (map.count(full)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + full + "'");
        }
        if (val.front() == '[') {
            if (val.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) + ": unterminated array");
            }
            ConfigValue v;
            bool any_string = false, any_number = false;
            for (const std::string& tok : split_top_commas(val.substr(1, val.size() - 2))) {
                ConfigValue el = parse_scalar(tok, line_no);
                if (el.kind == ConfigValue::Kind::String) {
                    v.strs.push_back(el.str);
                    any_string = true;
                } else if (el.kind == ConfigValue::Kind::Number) {
                    v.nums.push_back(el.num);
                    any_number = true;
                } else {
                    throw ConfigError("config line " + std::to_string(line_no) + ": bool array not supported");
                }
            }
            if (any_string && any_number) {
                throw ConfigError("config line " + std::to_string(line_no) + ": mixed array types");
            }
            v.kind = any_string ? ConfigValue::Kind::StringArray : ConfigValue::Kind::NumberArray;
            map[full] = std::move(v);
        } else {
            map[full] = parse_scalar(val, line_no);
        }
    }
    return map;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("config file not found: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Tracks which keys a typed load consumed so leftovers can be rejected.
class Reader {
public:
    explicit Reader(const ConfigMap& map) : map_(map) {}

    double number(const std::string& key, double def) {
        const ConfigValue* v = take(key);
        if (!v) return def;
        require(v->kind == ConfigValue::Kind::Number, key, "number");
        return v->num;
    }

    int integer(const std::string& key, int def) {
        const double d = number(key, def);
        const double r = std::round(d);
        if (std::abs(d - r) > 1e-9) throw ConfigError("config: " + key + " must be an integer");
        return static_cast<int>(r);
    }

    bool boolean(const std::string& key, bool def) {
        const ConfigValue* v = take(key);
        if (!v) return def;
        require(v->kind == ConfigValue::Kind::Bool, key, "bool");
        return v->flag;
    }

    std::string str(const std::string& key, const std::string& def) {
        const ConfigValue* v = take(key);
        if (!v) return def;
        require(v->kind == ConfigValue::Kind::String, key, "string");
        return v->str;
    }

    Position position(const std::string& key, Position def) {
        const ConfigValue* v = take(key);
        if (!v) return def;
        require(v->kind == ConfigValue::Kind::NumberArray && v->nums.size() == 2, key,
                "array of two numbers");
        return {v->nums[0], v->nums[1]};
    }

    std::vector<std::string> str_array(const std::string& key, std::vector<std::string> def) {
        const ConfigValue* v = take(key);
        if (!v) return def;
        require(v->kind == ConfigValue::Kind::StringArray, key, "string array");
        return v->strs;
    }

    void finish() const {
        for (const auto& [key, value] : map_) {
            if (!consumed_.count(key)) throw ConfigError("config: unknown key '" + key + "'");
        }
    }

private:
    const ConfigValue* take(const std::string& key) {
        auto it = map_.find(key);
        if (it == map_.end()) return nullptr;
        consumed_.insert(key);
        return &it->second;
    }

    static void require(bool ok, const std::string& key, const char* kind) {
        if (!ok) throw ConfigError("config: " + key + " must be a " + kind);
    }

    const ConfigMap& map_;
    std::set<std::string> consumed_;
};

} // namespace

RunConfig default_run_config() {
    return load_run_config(ConfigMap{});
}

RunConfig load_run_config(const ConfigMap& map) {
    Reader r(map);
    RunConfig cfg;

    ScenarioConfig& sc = cfg.scenario;
    sc.n_t = r.integer("scenario.n_t", 4);
    sc.n_r = r.integer("scenario.n_r", 4);
    sc.n_e = r.integer("scenario.n_e", 4);
    sc.m_elements = r.integer("scenario.m_elements", 20);
    sc.ap_pos = r.position("scenario.ap_pos", {0.0, 0.0});
    sc.user_pos = r.position("scenario.user_pos", {45.0, 0.0});
    sc.eave_pos = r.position("scenario.eave_pos", {55.0, 0.0});
    sc.irs_pos = r.position("scenario.irs_pos", {50.0, 5.0});
    sc.p_max_w = dbm_to_watts(r.number("scenario.p_max_dbm", 30.0));
    sc.sigma_r2_w = dbm_to_watts(r.number("scenario.noise_r_dbm", -40.0));
    sc.sigma_e2_w = dbm_to_watts(r.number("scenario.noise_e_dbm", -40.0));
    sc.kappa_tr = r.number("scenario.kappa_tr", 0.0);
    sc.kappa_te = r.number("scenario.kappa_te", 0.0);
    sc.kappa_ts = r.number("scenario.kappa_ts", 0.0);
    sc.kappa_sr = r.number("scenario.kappa_sr", 1.0);
    sc.kappa_se = r.number("scenario.kappa_se", 1.0);
    sc.alpha_tr = r.number("scenario.alpha_tr", 2.0);
    sc.alpha_te = r.number("scenario.alpha_te", 2.0);
    sc.alpha_ts = r.number("scenario.alpha_ts", 2.0);
    sc.alpha_sr = r.number("scenario.alpha_sr", 2.0);
    sc.alpha_se = r.number("scenario.alpha_se", 2.0);
    sc.beta0_db = r.number("scenario.beta0_db", -30.0);
    sc.d0_m = r.number("scenario.d0_m", 1.0);
    const std::string los = r.str("scenario.los_model", "steering");
    if (los == "steering") sc.los_model = LosModel::Steering;
    else if (los == "ones") sc.los_model = LosModel::Ones;
    else throw ConfigError("config: scenario.los_model must be \"steering\" or \"ones\"");
    const double seed = r.number("scenario.master_seed", 1.0);
    if (seed < 0 || std::round(seed) != seed) {
        throw ConfigError("config: scenario.master_seed must be a nonnegative integer");
    }
    sc.master_seed = static_cast<std::uint64_t>(seed);

    AoOptions& ao = cfg.ao;
    ao.sca.outer_tol = r.number("sca.outer_tol", 1e-5);
    ao.sca.max_outer_iters = r.integer("sca.max_outer_iters", 100);
    ao.sca.dual_tol = r.number("sca.dual_tol_w", 0.0);
    ao.sca.lambda_max_init = r.number("sca.lambda_max_init", 1.0);
    ao.sca.lambda_growth = r.number("sca.lambda_growth", 10.0);
    ao.sca.pd_floor = r.number("sca.pd_floor", 1e-12);
    const std::string dual = r.str("sca.dual_method", "bisection");
    if (dual == "bisection") ao.sca.dual_method = DualMethod::Bisection;
    else if (dual == "subgradient") ao.sca.dual_method = DualMethod::Subgradient;
    else throw ConfigError("config: sca.dual_method must be \"bisection\" or \"subgradient\"");
    ao.sca.subgradient_step0 = r.number("sca.subgradient_step0", 1.0);
    ao.sca.subgradient_iters = r.integer("sca.subgradient_iters", 2000);

    ao.irs.sweep_tol = r.number("irs.sweep_tol", 1e-4);
    ao.irs.max_sweeps = r.integer("irs.max_sweeps", 50);
    ao.irs.phase_grid = r.integer("irs.phase_grid", 2048);
    ao.irs.golden_tol = r.number("irs.golden_tol", 1e-10);

    ao.theta_tol = r.number("ao.theta_tol", 1e-4);
    ao.max_rounds = r.integer("ao.max_rounds", 30);
    ao.q_levels = r.integer("ao.q_levels", 0);
    ao.reoptimize_q_after_projection = r.boolean("ao.reoptimize_q_after_projection", false);
    ao.objective_tol = r.number("ao.objective_tol", 0.0);

    cfg.n_realizations = r.integer("bench.n_realizations", 100);
    cfg.workers = r.integer("bench.workers", 0);
    std::vector<std::string> scheme_names = r.str_array(
        "bench.schemes", {"no_irs", "random_irs", "ao_continuous", "ao_q8"});
    for (const std::string& s : scheme_names) cfg.schemes.push_back(Scheme::parse(s));

    r.finish();
    sc.validate();
    ao.validate();
    if (cfg.n_realizations < 1) throw ConfigError("config: bench.n_realizations must be >= 1");
    if (cfg.workers < 0) throw ConfigError("config: bench.workers must be >= 0");
    cfg.snapshot = config_to_map(cfg);
    return cfg;
}

RunConfig load_run_config_file(const std::string& path) {
    return load_run_config(parse_config_file(path));
}

ConfigMap config_to_map(const RunConfig& cfg) {
    ConfigMap m;
    auto num = [](double v) { ConfigValue c; c.kind = ConfigValue::Kind::Number; c.num = v; return c; };
    auto boolean = [](bool v) { ConfigValue c; c.kind = ConfigValue::Kind::Bool; c.flag = v; return c; };
    auto str = [](std::string v) { ConfigValue c; c.kind = ConfigValue::Kind::String; c.str = std::move(v); return c; };
    auto pos = [](const Position& p) {
        ConfigValue c; c.kind = ConfigValue::Kind::NumberArray; c.nums = {p.x, p.y}; return c;
    };

    const ScenarioConfig& sc = cfg.scenario;
    m["scenario.n_t"] = num(sc.n_t);
    m["scenario.n_r"] = num(sc.n_r);
    m["scenario.n_e"] = num(sc.n_e);
    m["scenario.m_elements"] = num(sc.m_elements);
    m["scenario.ap_pos"] = pos(sc.ap_pos);
    m["scenario.user_pos"] = pos(sc.user_pos);
    m["scenario.eave_pos"] = pos(sc.eave_pos);
    m["scenario.irs_pos"] = pos(sc.irs_pos);
    m["scenario.p_max_dbm"] = num(watts_to_dbm(sc.p_max_w));
    m["scenario.noise_r_dbm"] = num(watts_to_dbm(sc.sigma_r2_w));
    m["scenario.noise_e_dbm"] = num(watts_to_dbm(sc.sigma_e2_w));
    m["scenario.kappa_tr"] = num(sc.kappa_tr);
    m["scenario.kappa_te"] = num(sc.kappa_te);
    m["scenario.kappa_ts"] = num(sc.kappa_ts);
    m["scenario.kappa_sr"] = num(sc.kappa_sr);
    m["scenario.kappa_se"] = num(sc.kappa_se);
    m["scenario.alpha_tr"] = num(sc.alpha_tr);
    m["scenario.alpha_te"] = num(sc.alpha_te);
    m["scenario.alpha_ts"] = num(sc.alpha_ts);
    m["scenario.alpha_sr"] = num(sc.alpha_sr);
    m["scenario.alpha_se"] = num(sc.alpha_se);
    m["scenario.beta0_db"] = num(sc.beta0_db);
    m["scenario.d0_m"] = num(sc.d0_m);
    m["scenario.los_model"] = str(sc.los_model == LosModel::Steering ? "steering" : "ones");
    m["scenario.master_seed"] = num(static_cast<double>(sc.master_seed));

    const AoOptions& ao = cfg.ao;
    m["sca.outer_tol"] = num(ao.sca.outer_tol);
    m["sca.max_outer_iters"] = num(ao.sca.max_outer_iters);
    m["sca.dual_tol_w"] = num(ao.sca.dual_tol);
    m["sca.lambda_max_init"] = num(ao.sca.lambda_max_init);
    m["sca.lambda_growth"] = num(ao.sca.lambda_growth);
    m["sca.pd_floor"] = num(ao.sca.pd_floor);
    m["sca.dual_method"] =
        str(ao.sca.dual_method == DualMethod::Bisection ? "bisection" : "subgradient");
    m["sca.subgradient_step0"] = num(ao.sca.subgradient_step0);
    m["sca.subgradient_iters"] = num(ao.sca.subgradient_iters);
    m["irs.sweep_tol"] = num(ao.irs.sweep_tol);
    m["irs.max_sweeps"] = num(ao.irs.max_sweeps);
    m["irs.phase_grid"] = num(ao.irs.phase_grid);
    m["irs.golden_tol"] = num(ao.irs.golden_tol);
    m["ao.theta_tol"] = num(ao.theta_tol);
    m["ao.max_rounds"] = num(ao.max_rounds);
    m["ao.q_levels"] = num(ao.q_levels);
    m["ao.reoptimize_q_after_projection"] = boolean(ao.reoptimize_q_after_projection);
    m["ao.objective_tol"] = num(ao.objective_tol);

    m["bench.n_realizations"] = num(cfg.n_realizations);
    m["bench.workers"] = num(cfg.workers);
    ConfigValue schemes;
    schemes.kind = ConfigValue::Kind::StringArray;
    for (const Scheme& s : cfg.schemes) schemes.strs.push_back(s.name());
    m["bench.schemes"] = schemes;
    return m;
}

} // namespace secopt
