#include "pairgen/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "pairgen/errors.hpp"
#include "pairgen/spectra.hpp"

namespace pairgen {

namespace {

const char* const kScenarioNames[] = {"TimeEvolutionAtFixedP", "LmsAtTimes",        "StageDetection",
                                      "ScaledOverlap",         "MultiphotonSpectra", "LateTimeFit"};

const std::set<std::string> kKnownKeys = {
    "scenario",      "bases",        "solver",      "output_dir", "seed",        "threads",
    "pulse.e0",      "pulse.tau",    "momentum.lo", "momentum.hi", "momentum.step",
    "momentum.p_par", "momentum.p_perp", "time.lo", "time.hi",    "time.step",   "time.times",
    "stages.fields", "overlap.fractions",
};

void flatten(const toml::table& table, const std::string& prefix, std::vector<std::string>& keys) {
    for (const auto& [k, node] : table) {
        const std::string key = prefix.empty() ? std::string(k.str()) : prefix + "." + std::string(k.str());
        if (const toml::table* sub = node.as_table()) {
            // The manifest block of a previous run is informational only.
            if (key == "manifest") continue;
            flatten(*sub, key, keys);
        } else {
            keys.push_back(key);
        }
    }
}

void merge_into(toml::table& dst, const toml::table& src) {
    for (const auto& [k, node] : src) {
        if (const toml::table* sub = node.as_table()) {
            toml::table* target = dst[k].as_table();
            if (!target) {
                dst.insert_or_assign(k, toml::table{});
                target = dst[k].as_table();
            }
            merge_into(*target, *sub);
        } else {
            dst.insert_or_assign(k, node);
        }
    }
}

toml::table parse_override(const std::string& item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("override '" + item + "': expected key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
        return toml::parse(key + " = " + value);
    } catch (const toml::parse_error&) {
    }
    try {
        return toml::parse(key + " = \"" + value + "\"");
    } catch (const toml::parse_error& e) {
        throw ValidationError("override '" + item + "': " + std::string(e.description()));
    }
}

double read_double(const toml::node_view<const toml::node>& node, const std::string& key) {
    if (auto v = node.value<double>()) return *v;
    throw ValidationError("config key '" + key + "' must be a number");
}

std::vector<double> read_doubles(const toml::node_view<const toml::node>& node, const std::string& key) {
    const toml::array* arr = node.as_array();
    if (!arr) throw ValidationError("config key '" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const toml::node& el : *arr) {
        auto v = el.value<double>();
        if (!v) throw ValidationError("config key '" + key + "' must be an array of numbers");
        out.push_back(*v);
    }
    return out;
}

std::string read_string(const toml::node_view<const toml::node>& node, const std::string& key) {
    if (auto v = node.value<std::string>()) return *v;
    throw ValidationError("config key '" + key + "' must be a string");
}

std::int64_t read_int(const toml::node_view<const toml::node>& node, const std::string& key) {
    if (auto v = node.value<std::int64_t>()) return *v;
    throw ValidationError("config key '" + key + "' must be an integer");
}

RunConfig from_table(const toml::table& t) {
    std::vector<std::string> keys;
    flatten(t, "", keys);
    for (const std::string& k : keys) {
        if (!kKnownKeys.count(k)) throw ValidationError("unknown config key '" + k + "'");
    }
    RunConfig c;
    const toml::node_view<const toml::node> root{&t};
    auto at = [&](const char* section, const char* key) { return root[section][key]; };
    if (root["scenario"]) c.scenario = parse_scenario(read_string(root["scenario"], "scenario"));
    if (root["bases"]) {
        const toml::array* arr = root["bases"].as_array();
        if (!arr) throw ValidationError("config key 'bases' must be an array of strings");
        c.bases.clear();
        for (const toml::node& el : *arr) {
            auto v = el.value<std::string>();
            if (!v) throw ValidationError("config key 'bases' must be an array of strings");
            c.bases.push_back(*v);
        }
    }
    if (root["solver"]) {
        const std::string s = read_string(root["solver"], "solver");
        if (s == "exact") c.solver = Solver::Exact;
        else if (s == "ode") c.solver = Solver::Ode;
        else throw ValidationError("config key 'solver' must be \"exact\" or \"ode\"");
    }
    if (root["output_dir"]) c.output_dir = read_string(root["output_dir"], "output_dir");
    if (root["seed"]) {
        const auto v = read_int(root["seed"], "seed");
        if (v < 0) throw ValidationError("config key 'seed' must be >= 0");
        c.seed = static_cast<std::uint64_t>(v);
    }
    if (root["threads"]) {
        const auto v = read_int(root["threads"], "threads");
        if (v < 0 || v > 4096) throw ValidationError("config key 'threads' must lie in [0, 4096]");
        c.threads = static_cast<unsigned>(v);
    }
    if (at("pulse", "e0")) c.e0 = read_double(at("pulse", "e0"), "pulse.e0");
    if (at("pulse", "tau")) c.tau = read_double(at("pulse", "tau"), "pulse.tau");
    if (at("momentum", "lo")) c.momentum.lo = read_double(at("momentum", "lo"), "momentum.lo");
    if (at("momentum", "hi")) c.momentum.hi = read_double(at("momentum", "hi"), "momentum.hi");
    if (at("momentum", "step")) c.momentum.step = read_double(at("momentum", "step"), "momentum.step");
    if (at("momentum", "p_par")) c.p_par = read_double(at("momentum", "p_par"), "momentum.p_par");
    if (at("momentum", "p_perp")) c.p_perp = read_double(at("momentum", "p_perp"), "momentum.p_perp");
    if (at("time", "lo")) c.time.lo = read_double(at("time", "lo"), "time.lo");
    if (at("time", "hi")) c.time.hi = read_double(at("time", "hi"), "time.hi");
    if (at("time", "step")) c.time.step = read_double(at("time", "step"), "time.step");
    if (at("time", "times")) c.times = read_doubles(at("time", "times"), "time.times");
    if (at("stages", "fields")) c.fields = read_doubles(at("stages", "fields"), "stages.fields");
    if (at("overlap", "fractions")) c.fractions = read_doubles(at("overlap", "fractions"), "overlap.fractions");
    return c;
}

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string num_list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s + "]";
}

std::string quoted(const std::string& s) {
    std::ostringstream os;
    os << toml::value<std::string>(s);
    return os.str();
}

void check_grid(const GridSpec& g, const std::string& name) {
    if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !std::isfinite(g.step)) {
        throw ValidationError(name + ": grid bounds must be finite");
    }
    if (!(g.step > 0.0)) throw ValidationError(name + ".step must be > 0");
    if (!(g.hi > g.lo)) throw ValidationError(name + ": grid is empty (need hi > lo)");
    if ((g.hi - g.lo) / g.step > 1e7) throw ValidationError(name + ": grid has more than 1e7 points");
}

}  // namespace

std::string scenario_name(Scenario s) { return kScenarioNames[static_cast<int>(s)]; }

Scenario parse_scenario(const std::string& name) {
    for (int i = 0; i < 6; ++i) {
        if (name == kScenarioNames[i]) return static_cast<Scenario>(i);
    }
    throw ValidationError("unknown scenario '" + name + "'");
}

std::vector<BasisChoice> RunConfig::basis_choices() const {
    std::vector<BasisChoice> out;
    for (const std::string& b : bases) out.push_back(parse_basis(b));
    return out;
}

std::vector<double> RunConfig::momentum_grid() const { return uniform_grid(momentum.lo, momentum.hi, momentum.step); }

std::vector<double> RunConfig::time_grid() const { return uniform_grid(time.lo, time.hi, time.step); }

void RunConfig::validate() const {
    (void)pulse();
    if (bases.empty()) throw ValidationError("bases must not be empty");
    for (const BasisChoice& b : basis_choices()) {
        if (scenario == Scenario::LateTimeFit && b.omega_order != 0) {
            throw ValidationError("LateTimeFit supports only j = 0 bases");
        }
    }
    if (!(p_perp >= 0.0) || !std::isfinite(p_par) || !std::isfinite(p_perp)) {
        throw ValidationError("momentum.p_par must be finite and momentum.p_perp >= 0");
    }
    if (output_dir.empty()) throw ValidationError("output_dir must not be empty");
    switch (scenario) {
        case Scenario::TimeEvolutionAtFixedP:
            check_grid(time, "time");
            break;
        case Scenario::LmsAtTimes:
        case Scenario::MultiphotonSpectra:
            check_grid(momentum, "momentum");
            if (times.empty()) throw ValidationError("time.times must list at least one time");
            for (double t : times) {
                if (!std::isfinite(t)) throw ValidationError("time.times entries must be finite");
            }
            break;
        case Scenario::StageDetection:
            check_grid(momentum, "momentum");
            check_grid(time, "time");
            if (fields.empty()) throw ValidationError("stages.fields must list at least one field strength");
            for (double e : fields) (void)PulseParams(e, tau);
            break;
        case Scenario::ScaledOverlap:
            check_grid(momentum, "momentum");
            if (fractions.empty()) throw ValidationError("overlap.fractions must not be empty");
            for (double k : fractions) {
                if (!(k > 0.0)) throw ValidationError("overlap.fractions entries must be > 0");
            }
            break;
        case Scenario::LateTimeFit:
            check_grid(momentum, "momentum");
            break;
    }
}

RunConfig parse_config(std::string_view toml_text, const std::vector<std::string>& overrides) {
    toml::table table;
    try {
        table = toml::parse(toml_text);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "config: " << e.description() << " at " << e.source().begin;
        throw ValidationError(os.str());
    }
    for (const std::string& item : overrides) merge_into(table, parse_override(item));
    RunConfig c = from_table(table);
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

std::string to_toml(const RunConfig& c) {
    std::ostringstream os;
    os << "scenario = " << quoted(scenario_name(c.scenario)) << '\n';
    os << "bases = [";
    for (std::size_t i = 0; i < c.bases.size(); ++i) os << (i ? ", " : "") << quoted(c.bases[i]);
    os << "]\n";
    os << "solver = " << (c.solver == Solver::Exact ? "\"exact\"" : "\"ode\"") << '\n';
    os << "output_dir = " << quoted(c.output_dir.string()) << '\n';
    os << "seed = " << c.seed << '\n';
    os << "threads = " << c.threads << "\n\n";
    os << "[pulse]\ne0 = " << num(c.e0) << "\ntau = " << num(c.tau) << "\n\n";
    os << "[momentum]\nlo = " << num(c.momentum.lo) << "\nhi = " << num(c.momentum.hi)
       << "\nstep = " << num(c.momentum.step) << "\np_par = " << num(c.p_par) << "\np_perp = " << num(c.p_perp)
       << "\n\n";
    os << "[time]\nlo = " << num(c.time.lo) << "\nhi = " << num(c.time.hi) << "\nstep = " << num(c.time.step)
       << "\ntimes = " << num_list(c.times) << "\n\n";
    os << "[stages]\nfields = " << num_list(c.fields) << "\n\n";
    os << "[overlap]\nfractions = " << num_list(c.fractions) << '\n';
    return os.str();
}

}  // namespace pairgen
