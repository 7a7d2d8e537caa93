#include "critwin/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace critwin {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("config: bad number '" + s + "'");
    return v;
}

std::int64_t parse_int(const std::string& s) {
    const double v = parse_double(s);  // accepts 1e6 style
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v)))
        throw std::invalid_argument("config: expected integer, got '" + s + "'");
    return static_cast<std::int64_t>(r);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (gamma.empty() || n.empty() || levels().empty())
        throw std::invalid_argument("config: gamma/n/alpha-or-beta grids must be nonempty");
    std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
    if (seeds.empty() || distinct.size() != seeds.size())
        throw std::invalid_argument("config: seeds must be nonempty and distinct");
    for (const double g : gamma)
        if (!(g >= 0.0 && g < 0.5))
            throw std::invalid_argument("config: gamma values must lie in [0, 1/2)");
    // every grid cell must resolve
    for (const double g : gamma)
        for (const std::int64_t size : n)
            for (const double level : levels()) (void)resolve(cell_params(g, size, level));
    if (!k_grid.empty()) {
        for (std::size_t i = 1; i < k_grid.size(); ++i)
            if (k_grid[i] <= k_grid[i - 1])
                throw std::invalid_argument("config: k_grid must be strictly increasing");
        if (k_grid.front() < 1) throw std::invalid_argument("config: k_grid entries must be >= 1");
    }
    if (reps < 1 || mc_paths < 1) throw std::invalid_argument("config: reps/mc_paths must be >= 1");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.raw_text = text;
    std::stringstream ss(text);
    std::string line;
    bool header_seen = false;
    bool alpha_set = false, beta_set = false, seeds_listed = false;
    std::int64_t seed_base = -1, seed_count = -1;
    while (std::getline(ss, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "critwin-config v1")
                throw std::invalid_argument("config: first line must be 'critwin-config v1'");
            header_seen = true;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto items = split_list(value);

        if (key == "gamma") {
            cfg.gamma.clear();
            for (const auto& s : items) cfg.gamma.push_back(parse_double(s));
        } else if (key == "n") {
            cfg.n.clear();
            for (const auto& s : items) cfg.n.push_back(parse_int(s));
        } else if (key == "alpha") {
            cfg.alpha.clear();
            for (const auto& s : items) cfg.alpha.push_back(parse_double(s));
            cfg.window_mode = true;
            alpha_set = true;
        } else if (key == "beta") {
            cfg.beta.clear();
            for (const auto& s : items) cfg.beta.push_back(parse_double(s));
            cfg.window_mode = false;
            beta_set = true;
        } else if (key == "kernel") {
            cfg.kernel = kernel_from_name(value);
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& s : items)
                cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(s)));
            seeds_listed = true;
        } else if (key == "seed_base") {
            seed_base = parse_int(value);
        } else if (key == "seed_count") {
            seed_count = parse_int(value);
        } else if (key == "k_grid") {
            cfg.k_grid.clear();
            for (const auto& s : items) cfg.k_grid.push_back(parse_int(s));
        } else if (key == "k_trunc") {
            cfg.k_trunc = parse_int(value);
        } else if (key == "reps") {
            cfg.reps = parse_int(value);
        } else if (key == "max_particles") {
            cfg.max_particles = parse_int(value);
        } else if (key == "max_edges") {
            cfg.max_edges = parse_int(value);
        } else if (key == "time_limit_s") {
            cfg.time_limit_s = parse_double(value);
        } else if (key == "mc_paths") {
            cfg.mc_paths = parse_int(value);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    if (!header_seen) throw std::invalid_argument("config: empty file");
    if (alpha_set && beta_set)
        throw std::invalid_argument("config: give either alpha or beta, not both");
    if (!seeds_listed && seed_base >= 0 && seed_count > 0) {
        cfg.seeds.clear();
        for (std::int64_t k = 0; k < seed_count; ++k)
            cfg.seeds.push_back(static_cast<std::uint64_t>(seed_base + k));
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace critwin
