#include "alphaeta/config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "alphaeta/errors.hpp"

namespace aeta {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
T parse_unsigned(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos, 0);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        if (x > std::numeric_limits<T>::max()) throw std::out_of_range("too large");
        return static_cast<T>(x);
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected an unsigned integer, got '" + v + "'");
    }
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(where + ": expected a boolean, got '" + v + "'");
}

template <class T>
std::vector<T> parse_unsigned_list(const std::string& v, const std::string& where) {
    std::vector<T> out;
    for (const auto& item : split_list(v)) out.push_back(parse_unsigned<T>(item, where));
    if (out.empty()) throw ConfigError(where + ": expected a nonempty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& v, const std::string& where) {
    std::vector<double> out;
    for (const auto& item : split_list(v)) out.push_back(parse_double(item, where));
    if (out.empty()) throw ConfigError(where + ": expected a nonempty list");
    return out;
}

void set_key(ExperimentConfig& c, const std::string& section, const std::string& key,
             const std::string& value) {
    const std::string where = "config key " + section + "." + key;
    if (section == "system") {
        if (key == "M") return void(c.system.M = parse_unsigned<std::uint32_t>(value, where));
        if (key == "S") return void(c.system.S = parse_double(value, where));
    } else if (section == "expander") {
        if (key == "kind") return void(c.expander.kind = value);
        if (key == "key_bits")
            return void(c.expander.key_bits = parse_unsigned<std::uint32_t>(value, where));
        if (key == "taps")
            return void(c.expander.taps = parse_unsigned_list<std::uint32_t>(value, where));
        if (key == "nonlinear_filter")
            return void(c.expander.nonlinear_filter = parse_bool(value, where));
        if (key == "seed_key")
            return void(c.expander.seed_key = parse_unsigned<std::uint64_t>(value, where));
    } else if (section == "attack") {
        if (key == "width_policy") return void(c.attack.width_policy = value);
        if (key == "confidence") return void(c.attack.confidence = parse_double(value, where));
        if (key == "msb_count")
            return void(c.attack.msb_count = parse_unsigned<std::uint32_t>(value, where));
        if (key == "n_list")
            return void(c.attack.n_list = parse_unsigned_list<std::uint64_t>(value, where));
        if (key == "runs") return void(c.attack.runs = parse_unsigned<std::uint64_t>(value, where));
        if (key == "bruteforce_guard")
            return void(c.attack.bruteforce_guard = parse_unsigned<std::uint32_t>(value, where));
        if (key == "correlation_guard")
            return void(c.attack.correlation_guard = parse_unsigned<std::uint32_t>(value, where));
        if (key == "joint_guard")
            return void(c.attack.joint_guard = parse_unsigned<std::uint32_t>(value, where));
        if (key == "force_guards") return void(c.attack.force_guards = parse_bool(value, where));
        if (key == "rule") return void(c.attack.rule = value);
    } else if (section == "dsr") {
        if (key == "delta") return void(c.dsr.delta = parse_double(value, where));
        if (key == "couple_delta") return void(c.dsr.couple_delta = parse_bool(value, where));
        if (key == "coupling_g") return void(c.dsr.coupling_g = parse_double(value, where));
        if (key == "gamma_target") return void(c.dsr.gamma_target = parse_double(value, where));
        if (key == "s_list") return void(c.dsr.s_list = parse_double_list(value, where));
    } else if (section == "joint") {
        if (key == "n_values")
            return void(c.joint.n_values = parse_unsigned_list<std::uint64_t>(value, where));
        if (key == "plaintext_policy") return void(c.joint.plaintext_policy = value);
        if (key == "dump_gram") return void(c.joint.dump_gram = parse_bool(value, where));
    } else if (section == "run") {
        if (key == "trials") return void(c.run.trials = parse_unsigned<std::uint64_t>(value, where));
        if (key == "slots") return void(c.run.slots = parse_unsigned<std::uint64_t>(value, where));
        if (key == "plaintext") return void(c.run.plaintext = value);
        if (key == "master_seed")
            return void(c.run.master_seed = parse_unsigned<std::uint64_t>(value, where));
    } else {
        throw ConfigError("unknown config section '" + section + "'");
    }
    throw ConfigError("unknown config key '" + section + "." + key + "'");
}

std::string json_value_to_string(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += json_value_to_string(v[i]);
        }
        return out;
    }
    return v.dump();
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    if (path.extension() == ".json") return from_json_text(text);
    // also accept JSON content regardless of extension
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') return from_json_text(text);
        break;
    }
    return from_ini_text(text);
}

ExperimentConfig ExperimentConfig::from_ini_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": key outside of any [section]");
        try {
            set_key(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("JSON config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("JSON config must be an object of sections");
    ExperimentConfig cfg;
    for (const auto& [section, body] : j.items()) {
        if (!body.is_object())
            throw ConfigError("JSON config section '" + section + "' must be an object");
        for (const auto& [key, value] : body.items())
            set_key(cfg, section, key, json_value_to_string(value));
    }
    return cfg;
}

std::string ExperimentConfig::to_json_text(int indent) const {
    nlohmann::json j;
    j["system"] = {{"M", system.M}, {"S", system.S}};
    j["expander"] = {{"kind", expander.kind},
                     {"key_bits", expander.key_bits},
                     {"taps", expander.taps},
                     {"nonlinear_filter", expander.nonlinear_filter},
                     {"seed_key", expander.seed_key}};
    j["attack"] = {{"width_policy", attack.width_policy},
                   {"confidence", attack.confidence},
                   {"msb_count", attack.msb_count},
                   {"n_list", attack.n_list},
                   {"runs", attack.runs},
                   {"bruteforce_guard", attack.bruteforce_guard},
                   {"correlation_guard", attack.correlation_guard},
                   {"joint_guard", attack.joint_guard},
                   {"force_guards", attack.force_guards},
                   {"rule", attack.rule}};
    j["dsr"] = {{"delta", dsr.delta},
                {"couple_delta", dsr.couple_delta},
                {"coupling_g", dsr.coupling_g},
                {"gamma_target", dsr.gamma_target},
                {"s_list", dsr.s_list}};
    j["joint"] = {{"n_values", joint.n_values},
                  {"plaintext_policy", joint.plaintext_policy},
                  {"dump_gram", joint.dump_gram}};
    j["run"] = {{"trials", run.trials},
                {"slots", run.slots},
                {"plaintext", run.plaintext},
                {"master_seed", run.master_seed}};
    return j.dump(indent);
}

void ExperimentConfig::apply_override(const std::string& keyval) {
    const auto eq = keyval.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value, got '" + keyval + "'");
    const std::string path = trim(keyval.substr(0, eq));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override key must be section.key, got '" + path + "'");
    set_key(*this, path.substr(0, dot), path.substr(dot + 1), trim(keyval.substr(eq + 1)));
}

SystemParams ExperimentConfig::system_params() const {
    try {
        return SystemParams::make(system.M, system.S);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("system: ") + e.what());
    }
}

ExpanderConfig ExperimentConfig::expander_config() const {
    if (expander.kind == "uniform") return ExpanderConfig::uniform_config();
    if (expander.kind != "lfsr")
        throw ConfigError("expander.kind must be 'lfsr' or 'uniform', got '" + expander.kind +
                          "'");
    if (expander.key_bits > 64)
        throw ConfigError("expander.key_bits must be at most 64 (the experiment harness packs "
                          "seeds into one word)");
    try {
        return ExpanderConfig::lfsr_config(LfsrSpec::make(expander.key_bits, expander.taps),
                                           expander.nonlinear_filter);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("expander: ") + e.what());
    }
}

WidthPolicy ExperimentConfig::width_policy() const {
    if (attack.width_policy == "standard") return WidthPolicy::standard();
    if (attack.width_policy == "confidence") {
        try {
            return WidthPolicy::confidence_level(attack.confidence);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("attack: ") + e.what());
        }
    }
    throw ConfigError("attack.width_policy must be 'standard' or 'confidence', got '" +
                      attack.width_policy + "'");
}

DsrPolicy ExperimentConfig::dsr_policy() const {
    try {
        return dsr.couple_delta ? DsrPolicy::coupled(dsr.coupling_g) : DsrPolicy::fixed(dsr.delta);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("dsr: ") + e.what());
    }
}

SeedKey ExperimentConfig::seed_key() const {
    if (expander.key_bits < 64 && (expander.seed_key >> expander.key_bits) != 0)
        throw ConfigError("expander.seed_key does not fit in key_bits bits");
    return SeedKey::from_uint(expander.seed_key, expander.key_bits);
}

void ExperimentConfig::validate(const std::string& subcommand) const {
    const auto params = system_params();

    const bool needs_lfsr = subcommand == "keystream" || subcommand == "encrypt" ||
                            subcommand == "eve-bruteforce" || subcommand == "eve-correlation" ||
                            subcommand == "joint-srm";
    const bool uses_expander = needs_lfsr || subcommand == "bob-ber";

    if (uses_expander) {
        const auto cfg = expander_config();
        if (needs_lfsr && cfg.kind != ExpanderConfig::Kind::lfsr)
            throw ConfigError(subcommand + " needs expander.kind = lfsr");
        if (cfg.kind == ExpanderConfig::Kind::lfsr) {
            if (!std::has_single_bit(system.M))
                throw ConfigError("expander.kind = lfsr requires system.M to be a power of two "
                                  "(keystream chunking); use expander.kind = uniform otherwise");
            seed_key();
        }
    }
    if (subcommand == "gamma" || subcommand == "eve-co" || subcommand == "eve-bruteforce" ||
        subcommand == "eve-correlation") {
        if (!(system.S > 0.0)) throw ConfigError(subcommand + " requires system.S > 0");
    }
    if (subcommand == "gamma" || subcommand == "eve-bruteforce") width_policy();
    if (subcommand == "eve-co" || subcommand == "eve-bruteforce") {
        if (attack.rule != "nearest" && attack.rule != "ml" && attack.rule != "both")
            throw ConfigError("attack.rule must be nearest, ml or both");
    }
    if (subcommand == "eve-bruteforce" && expander.key_bits > attack.bruteforce_guard &&
        !attack.force_guards)
        throw GuardError("expander.key_bits = " + std::to_string(expander.key_bits) +
                         " exceeds attack.bruteforce_guard = " +
                         std::to_string(attack.bruteforce_guard) +
                         "; set attack.force_guards = true to override");
    if (subcommand == "eve-correlation") {
        if (expander.key_bits > attack.correlation_guard && !attack.force_guards)
            throw GuardError("expander.key_bits = " + std::to_string(expander.key_bits) +
                             " exceeds attack.correlation_guard = " +
                             std::to_string(attack.correlation_guard) +
                             "; set attack.force_guards = true to override");
        if (attack.msb_count < 1 || attack.msb_count > params.m)
            throw ConfigError("attack.msb_count must lie in [1, log2 M]");
    }
    if (subcommand == "joint-srm") {
        if (expander.key_bits > attack.joint_guard && !attack.force_guards)
            throw GuardError("expander.key_bits = " + std::to_string(expander.key_bits) +
                             " exceeds attack.joint_guard = " + std::to_string(attack.joint_guard) +
                             "; set attack.force_guards = true to override");
        if (joint.plaintext_policy != "zeros" && joint.plaintext_policy != "random")
            throw ConfigError("joint.plaintext_policy must be 'zeros' or 'random'");
        if (joint.n_values.empty()) throw ConfigError("joint.n_values must be nonempty");
    }
    if (subcommand == "dsr-sweep") {
        if (!(dsr.gamma_target > 0.0)) throw ConfigError("dsr.gamma_target must be positive");
        if (dsr.s_list.empty()) throw ConfigError("dsr.s_list must be nonempty");
        for (double S : dsr.s_list) {
            if (!(S > 0.0)) throw ConfigError("dsr.s_list entries must be positive");
            if (dsr.coupling_g / std::sqrt(S) >= std::numbers::pi)
                throw ConfigError("dsr.coupling_g gives delta >= pi at S = " + std::to_string(S));
        }
    }
    if (subcommand == "bob-ber" || subcommand == "gamma" || subcommand == "eve-co") {
        if (run.trials == 0) throw ConfigError("run.trials must be at least 1");
    }
    if (subcommand == "encrypt" && !run.plaintext.empty()) {
        for (char ch : run.plaintext)
            if (ch != '0' && ch != '1')
                throw ConfigError("run.plaintext must be an ASCII bit string");
    }
    dsr_policy();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.to_json_text() == b.to_json_text();
}

}  // namespace aeta
