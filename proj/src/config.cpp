#include "cevmc/config.hpp"

#include "cevmc/errors.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace cevmc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

class KeyMap {
public:
    explicit KeyMap(std::istream& in) {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigParse("line " + std::to_string(line_no) + ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigParse("line " + std::to_string(line_no) + ": empty key");
            if (!entries_.emplace(key, value).second)
                throw ConfigParse("duplicate key '" + key + "'");
        }
    }

    std::optional<std::string> take(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        std::string v = it->second;
        entries_.erase(it);
        return v;
    }

    std::string require(const std::string& key) {
        auto v = take(key);
        if (!v) throw ConfigParse("missing required key '" + key + "'");
        return *v;
    }

    void reject_leftovers() const {
        if (!entries_.empty()) throw ConfigParse("unknown key '" + entries_.begin()->first + "'");
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

private:
    std::map<std::string, std::string> entries_;
};

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigParse("key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        throw ConfigParse("key '" + key + "': cannot parse '" + value + "' as an integer");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigParse("key '" + key + "': expected true/false");
}

} // namespace

RunConfig parse_run_config(std::istream& in) {
    KeyMap keys(in);
    RunConfig cfg;

    cfg.model.x = parse_double("model.x", keys.require("model.x"));
    cfg.model.nu0 = parse_double("model.nu0", keys.require("model.nu0"));
    cfg.model.r = parse_double("model.r", keys.require("model.r"));
    cfg.model.kappa = parse_double("model.kappa", keys.require("model.kappa"));
    cfg.model.mu = parse_double("model.mu", keys.require("model.mu"));
    cfg.model.theta = parse_double("model.theta", keys.require("model.theta"));
    cfg.model.gamma = parse_double("model.gamma", keys.require("model.gamma"));
    cfg.model.rho = parse_double("model.rho", keys.require("model.rho"));
    cfg.model.T = parse_double("model.T", keys.require("model.T"));
    validate_params(cfg.model);

    if (auto kind = keys.take("payoff.kind")) {
        Payoff payoff;
        payoff.kind = payoff_kind_from_string(*kind);
        if (payoff.kind == PayoffKind::constant) {
            if (auto k = keys.take("payoff.strike"))
                payoff.strike = parse_double("payoff.strike", *k);
        } else {
            payoff.strike = parse_double("payoff.strike", keys.require("payoff.strike"));
            if (!(payoff.strike >= 0.0)) throw ConfigParse("payoff.strike must be >= 0");
        }
        cfg.payoff = payoff;
    } else if (keys.has("payoff.strike")) {
        throw ConfigParse("payoff.strike given without payoff.kind");
    }

    cfg.n_paths = parse_u64("run.n_paths", keys.require("run.n_paths"));
    cfg.n_steps = parse_u64("run.n_steps", keys.require("run.n_steps"));
    cfg.master_seed = parse_u64("run.master_seed", keys.require("run.master_seed"));
    if (cfg.n_paths < 1) throw ConfigParse("run.n_paths must be >= 1");
    if (cfg.n_steps < 1) throw ConfigParse("run.n_steps must be >= 1");

    if (auto v = keys.take("run.methods")) {
        cfg.methods.clear();
        for (const std::string& m : split(*v, ','))
            if (!m.empty()) cfg.methods.push_back(method_from_string(m));
        if (cfg.methods.empty()) throw ConfigParse("run.methods is empty");
    }
    if (auto v = keys.take("run.bump_h_x")) {
        cfg.bump_h_x = parse_double("run.bump_h_x", *v);
        if (!(cfg.bump_h_x > 0.0)) throw ConfigParse("run.bump_h_x must be > 0");
    }
    if (auto v = keys.take("run.bump_h_r")) {
        cfg.bump_h_r = parse_double("run.bump_h_r", *v);
        if (!(cfg.bump_h_r > 0.0)) throw ConfigParse("run.bump_h_r must be > 0");
    }
    if (auto v = keys.take("run.eps_study")) {
        for (const std::string& e : split(*v, ','))
            if (!e.empty()) cfg.eps_study.push_back(parse_double("run.eps_study", e));
        for (std::size_t i = 0; i < cfg.eps_study.size(); ++i) {
            if (!(cfg.eps_study[i] > 0.0)) throw ConfigParse("run.eps_study entries must be > 0");
            if (i > 0 && !(cfg.eps_study[i] < cfg.eps_study[i - 1]))
                throw ConfigParse("run.eps_study must be strictly descending");
        }
    }
    if (auto v = keys.take("run.output")) cfg.output_path = *v;
    if (auto v = keys.take("run.threads")) {
        if (*v == "auto")
            cfg.threads = 0;
        else {
            cfg.threads = static_cast<int>(parse_u64("run.threads", *v));
            if (cfg.threads < 1) throw ConfigParse("run.threads must be >= 1 or auto");
        }
    }
    if (auto v = keys.take("run.antithetic")) cfg.antithetic = parse_bool("run.antithetic", *v);
    if (auto v = keys.take("run.eps_num")) {
        cfg.eps_num = parse_double("run.eps_num", *v);
        if (!(cfg.eps_num > 0.0)) throw ConfigParse("run.eps_num must be > 0");
    }

    if (auto v = keys.take("deriv.pairs")) {
        cfg.deriv_pairs.clear();
        for (const std::string& item : split(*v, ',')) {
            if (item.empty()) continue;
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigParse("deriv.pairs entries must look like quantity:brownian");
            cfg.deriv_pairs.push_back({trim(item.substr(0, colon)), trim(item.substr(colon + 1))});
        }
        if (cfg.deriv_pairs.empty()) throw ConfigParse("deriv.pairs is empty");
    }
    if (auto v = keys.take("deriv.n_r")) cfg.deriv_n_r = parse_u64("deriv.n_r", *v);
    if (auto v = keys.take("deriv.n_paths")) cfg.deriv_n_paths = parse_u64("deriv.n_paths", *v);
    if (auto v = keys.take("deriv.bump")) {
        cfg.deriv_bump = parse_double("deriv.bump", *v);
        if (!(cfg.deriv_bump > 0.0)) throw ConfigParse("deriv.bump must be > 0");
    }

    if (auto v = keys.take("dump.path_index"))
        cfg.dump_path_index = parse_u64("dump.path_index", *v);
    if (auto v = keys.take("dump.sigma_eps")) {
        cfg.dump_sigma_eps = parse_double("dump.sigma_eps", *v);
        if (!(cfg.dump_sigma_eps > 0.0)) throw ConfigParse("dump.sigma_eps must be > 0");
    }
    if (auto v = keys.take("dump.ou")) cfg.dump_ou = parse_bool("dump.ou", *v);

    keys.reject_leftovers();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open config '" + path + "'");
    return parse_run_config(in);
}

} // namespace cevmc
