#include "speckit/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace speckit {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct IniDoc {
    // section -> ordered (key, value) pairs
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;

    bool has(const std::string& section) const { return sections.count(section) > 0; }

    const std::string* find(const std::string& section, const std::string& key) const {
        auto it = sections.find(section);
        if (it == sections.end()) return nullptr;
        for (const auto& kv : it->second)
            if (kv.first == key) return &kv.second;
        return nullptr;
    }
};

IniDoc parse_ini(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    IniDoc doc;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at " + path.string() + ":" +
                                  std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("empty section name at " + path.string() + ":" + std::to_string(line_no));
            doc.sections[section];  // register even if empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at " + path.string() + ":" + std::to_string(line_no));
        if (section.empty())
            throw ConfigError("key outside any section at " + path.string() + ":" + std::to_string(line_no));
        doc.sections[section].emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return doc;
}

double to_double(const std::string& v, const std::string& where) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value '" + v + "' for " + where);
    }
}

long long to_int(const std::string& v, const std::string& where) {
    try {
        size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value '" + v + "' for " + where);
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : v) {
        if (c == ',') {
            cur = trim(cur);
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<GaussianLine> parse_line_set(const std::string& v, const std::string& where) {
    std::vector<GaussianLine> out;
    for (const auto& item : split_list(v)) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : item) {
            if (c == ':') {
                parts.push_back(trim(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        parts.push_back(trim(cur));
        if (parts.size() != 3)
            throw ConfigError("line '" + item + "' in " + where +
                              " must be center:amplitude:sigma");
        out.emplace_back(to_double(parts[0], where), to_double(parts[1], where),
                         to_double(parts[2], where));
    }
    if (out.empty())
        throw ConfigError("empty line set in " + where);
    return out;
}

std::vector<double> log_spaced(double lo_exp, double hi_exp, int n, const std::string& where) {
    if (n < 2)
        throw ConfigError(where + ": need at least two grid values");
    if (!(hi_exp > lo_exp))
        throw ConfigError(where + ": max exponent must exceed min exponent");
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1));
    return v;
}

const std::set<std::string> kKnownSections = {"grids", "kernel", "lines", "training",
                                              "fit",   "simulate", "io"};

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"grids", {"target_start", "target_step", "target_count", "source_start", "source_step",
               "source_count"}},
    {"kernel", {"q", "zeta"}},
    {"lines", {}},  // p plus any number of training-set keys
    {"training", {"noise_sds", "zetas", "seeds", "alpha_min_exp", "alpha_max_exp", "alpha_count"}},
    {"fit", {"mode", "g_min_exp", "g_max_exp", "g_count", "tol", "max_iter", "g_initial"}},
    {"simulate", {"noise_sd", "seed"}},
    {"io", {"measured", "exact", "out_dir"}},
};

}  // namespace

RunConfig RunConfig::defaults() {
    RunConfig cfg;
    cfg.p_lines = paper_example_lines();
    cfg.training = TrainingSpec::paper_default();
    cfg.fit_options.g_grid = default_g_grid();
    return cfg;
}

void RunConfig::validate() const {
    training.validate();
    if (training.target_grid != target_grid || training.source_grid != source_grid)
        throw ConfigError("training grids out of sync with [grids]");
    if (p_lines.empty())
        throw ConfigError("[lines] must define the original example's line set p");
    if (!(q > 0.0) || !(q * (1.0 + zeta_assumed) > 0.0))
        throw ConfigError("[kernel] q and q*(1+zeta) must be positive");
    if (!(simulate_noise_sd > 0.0))
        throw ConfigError("[simulate] noise_sd must be positive");
    if (fit_options.g_grid.empty())
        throw ConfigError("[fit] g grid is empty");
    if (!(fit_options.tol >= 0.0))
        throw ConfigError("[fit] tol must be nonnegative");
    if (fit_options.max_iter < 1)
        throw ConfigError("[fit] max_iter must be >= 1");
    if (out_dir.empty())
        throw ConfigError("[io] out_dir must not be empty");
}

RunConfig load_config(const std::filesystem::path& path) {
    const IniDoc doc = parse_ini(path);

    for (const auto& sec : kKnownSections)
        if (!doc.has(sec))
            throw ConfigError("config " + path.string() + " is missing section [" + sec + "]");
    for (const auto& entry : doc.sections) {
        if (!kKnownSections.count(entry.first))
            throw ConfigError("unknown config section [" + entry.first + "]");
        const auto& known = kKnownKeys.at(entry.first);
        std::set<std::string> seen;
        for (const auto& kv : entry.second) {
            if (!seen.insert(kv.first).second)
                throw ConfigError("duplicate key '" + kv.first + "' in [" + entry.first + "]");
            if (entry.first == "lines") continue;  // free-form set names
            if (!known.count(kv.first))
                throw ConfigError("unknown key '" + kv.first + "' in [" + entry.first + "]");
        }
    }

    RunConfig cfg = RunConfig::defaults();

    const auto num = [&](const char* sec, const char* key, double dflt) {
        const std::string* v = doc.find(sec, key);
        return v ? to_double(*v, std::string("[") + sec + "] " + key) : dflt;
    };
    const auto integer = [&](const char* sec, const char* key, long long dflt) {
        const std::string* v = doc.find(sec, key);
        return v ? to_int(*v, std::string("[") + sec + "] " + key) : dflt;
    };

    try {
        cfg.target_grid = WavelengthGrid(num("grids", "target_start", 450.0),
                                         num("grids", "target_step", 1.0),
                                         static_cast<int>(integer("grids", "target_count", 201)));
        cfg.source_grid = WavelengthGrid(num("grids", "source_start", 460.0),
                                         num("grids", "source_step", 1.0),
                                         static_cast<int>(integer("grids", "source_count", 181)));
    } catch (const InvalidArgumentError& e) {
        throw ConfigError(std::string("[grids] invalid: ") + e.what());
    }

    cfg.q = num("kernel", "q", 0.015);
    cfg.zeta_assumed = num("kernel", "zeta", 0.0);

    // [lines]: key `p` is the original example; all other keys are
    // training sets, taken in file order.
    std::vector<std::vector<GaussianLine>> sets;
    bool saw_p = false;
    for (const auto& kv : doc.sections.at("lines")) {
        auto parsed = parse_line_set(kv.second, "[lines] " + kv.first);
        if (kv.first == "p") {
            cfg.p_lines = std::move(parsed);
            saw_p = true;
        } else {
            sets.push_back(std::move(parsed));
        }
    }
    if (!saw_p && doc.sections.at("lines").empty()) {
        // empty section: keep defaults for both p and the training sets
        sets = TrainingSpec::paper_default().line_sets;
    } else if (!saw_p) {
        throw ConfigError("[lines] must define the original example's line set p");
    } else if (sets.empty()) {
        throw ConfigError("[lines] must define at least one training line set besides p");
    }

    cfg.training = TrainingSpec();
    cfg.training.line_sets = std::move(sets);
    if (const std::string* v = doc.find("training", "noise_sds")) {
        cfg.training.noise_sds.clear();
        for (const auto& item : split_list(*v))
            cfg.training.noise_sds.push_back(to_double(item, "[training] noise_sds"));
    } else {
        cfg.training.noise_sds = {0.01, 0.02, 0.03, 0.04};
    }
    if (const std::string* v = doc.find("training", "zetas")) {
        cfg.training.zeta_values.clear();
        for (const auto& item : split_list(*v))
            cfg.training.zeta_values.push_back(to_double(item, "[training] zetas"));
    } else {
        cfg.training.zeta_values = {-0.02, 0.01, 0.04};
    }
    if (const std::string* v = doc.find("training", "seeds")) {
        cfg.training.seeds.clear();
        for (const auto& item : split_list(*v))
            cfg.training.seeds.push_back(static_cast<std::uint64_t>(to_int(item, "[training] seeds")));
    } else {
        cfg.training.seeds = {1, 2};
    }
    cfg.training.alpha_grid =
        log_spaced(num("training", "alpha_min_exp", -6.0), num("training", "alpha_max_exp", 0.0),
                   static_cast<int>(integer("training", "alpha_count", 41)), "[training] alpha grid");
    cfg.training.target_grid = cfg.target_grid;
    cfg.training.source_grid = cfg.source_grid;
    cfg.training.q = cfg.q;

    if (const std::string* v = doc.find("fit", "mode")) {
        try {
            cfg.fit_mode = fit_mode_from_string(*v);
        } catch (const InvalidArgumentError& e) {
            throw ConfigError(std::string("[fit] ") + e.what());
        }
    }
    cfg.g_min_exp = num("fit", "g_min_exp", -3.0);
    cfg.g_max_exp = num("fit", "g_max_exp", 0.0);
    cfg.g_count = static_cast<int>(integer("fit", "g_count", 25));
    cfg.fit_options.g_grid = log_spaced(cfg.g_min_exp, cfg.g_max_exp, cfg.g_count, "[fit] g grid");
    cfg.fit_options.tol = num("fit", "tol", 1e-8);
    cfg.fit_options.max_iter = static_cast<int>(integer("fit", "max_iter", 100));
    cfg.fit_options.g_initial = num("fit", "g_initial", 0.1);

    cfg.simulate_noise_sd = num("simulate", "noise_sd", 0.02);
    cfg.simulate_seed = static_cast<std::uint64_t>(integer("simulate", "seed", 20210));

    const auto resolve = [&](const std::string& p) -> std::filesystem::path {
        if (p.empty()) return {};
        std::filesystem::path fp(p);
        if (fp.is_relative()) fp = path.parent_path() / fp;
        return fp.lexically_normal();
    };
    if (const std::string* v = doc.find("io", "measured")) cfg.measured_path = resolve(*v);
    if (const std::string* v = doc.find("io", "exact")) cfg.exact_path = resolve(*v);
    if (const std::string* v = doc.find("io", "out_dir")) cfg.out_dir = resolve(*v);

    cfg.validate();
    return cfg;
}

}  // namespace speckit
