#include "hgineq/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "hgineq/profiles.hpp"

namespace hgineq {

namespace {

json yaml_to_json(const YAML::Node& n) {
    switch (n.Type()) {
        case YAML::NodeType::Null:
        case YAML::NodeType::Undefined: return nullptr;
        case YAML::NodeType::Sequence: {
            json a = json::array();
            for (const auto& x : n) a.push_back(yaml_to_json(x));
            return a;
        }
        case YAML::NodeType::Map: {
            json o = json::object();
            for (const auto& kv : n) o[kv.first.as<std::string>()] = yaml_to_json(kv.second);
            return o;
        }
        case YAML::NodeType::Scalar: break;
    }
    const std::string s = n.Scalar();
    if (n.Tag() == "!") return s;  // quoted
    if (s == "true" || s == "True") return true;
    if (s == "false" || s == "False") return false;
    if (s == "~" || s == "null") return nullptr;
    const char* end = s.data() + s.size();
    std::int64_t i = 0;
    auto ri = std::from_chars(s.data(), end, i);
    if (ri.ec == std::errc() && ri.ptr == end) return i;
    double d = 0.0;
    auto rd = std::from_chars(s.data(), end, d);
    if (rd.ec == std::errc() && rd.ptr == end) return d;
    return s;
}

std::string idx(const std::string& key, std::size_t i) { return key + "[" + std::to_string(i) + "]"; }

void only_keys(const json& o, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!o.is_object()) throw ConfigKeyError(where, "expected a mapping");
    for (const auto& [k, v] : o.items()) {
        bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; });
        if (!ok) throw ConfigKeyError(where.empty() ? k : where + "." + k, "unknown key");
    }
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigKeyError(key, "expected a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigKeyError(key, "expected an integer");
    return v.get<int>();
}

std::string text(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigKeyError(key, "expected a string");
    return v.get<std::string>();
}

bool boolean(const json& v, const std::string& key) {
    if (!v.is_boolean()) throw ConfigKeyError(key, "expected true or false");
    return v.get<bool>();
}

std::vector<double> numbers(const json& v, const std::string& key) {
    std::vector<double> out;
    if (v.is_array()) {
        if (v.empty()) throw ConfigKeyError(key, "empty list");
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], idx(key, i)));
    } else {
        out.push_back(number(v, key));
    }
    return out;
}

Params scalar_params(const json& v, const std::string& key) {
    Params p;
    if (v.is_null()) return p;
    if (!v.is_object()) throw ConfigKeyError(key, "expected a mapping");
    for (const auto& [k, x] : v.items()) p[k] = number(x, key + "." + k);
    return p;
}

// ---------------------------------------------------------------- sections

HomogeneousGroup parse_group(const json& v, const std::string& key) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        for (const auto& g : standard_groups())
            if (g.name() == s) return g;
        if (s == "heisenberg") return HomogeneousGroup::heisenberg();
        if (s.rfind("euclidean_r", 0) == 0) {
            int n = 0;
            auto r = std::from_chars(s.data() + 11, s.data() + s.size(), n);
            if (r.ec == std::errc() && r.ptr == s.data() + s.size() && n >= 1) return HomogeneousGroup::euclidean(n);
        }
        throw ConfigKeyError(key, "unknown group '" + s + "'");
    }
    only_keys(v, key, {"kind", "n", "weights", "norm", "M", "Q", "name"});
    if (!v.contains("kind")) throw ConfigKeyError(key + ".kind", "missing");
    const std::string kind = text(v["kind"], key + ".kind");
    auto name = v.contains("name") ? text(v["name"], key + ".name") : std::string();
    auto weights = [&] {
        if (!v.contains("weights")) throw ConfigKeyError(key + ".weights", "missing");
        auto w = numbers(v["weights"], key + ".weights");
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!(w[i] > 0.0)) throw ConfigKeyError(idx(key + ".weights", i), "weights must be positive");
        return w;
    };
    std::optional<double> M, Q;
    if (v.contains("M")) M = number(v["M"], key + ".M");
    if (v.contains("Q")) Q = number(v["Q"], key + ".Q");
    try {
        if (kind == "euclidean") {
            int n = v.contains("n") ? integer(v["n"], key + ".n") : 3;
            if (n < 1) throw ConfigKeyError(key + ".n", "dimension must be positive");
            if (name.empty()) return HomogeneousGroup::euclidean(n);
            return HomogeneousGroup(std::vector<double>(static_cast<std::size_t>(n), 1.0), QuasiNormSpec::euclidean(),
                                    Q, name);
        }
        if (kind == "heisenberg") {
            if (name.empty()) return HomogeneousGroup::heisenberg();
            return HomogeneousGroup({1.0, 1.0, 2.0}, QuasiNormSpec::koranyi(), Q, name);
        }
        if (kind == "anisotropic") return HomogeneousGroup(weights(), QuasiNormSpec::power(M), Q, name);
        if (kind == "custom") {
            if (!v.contains("norm")) throw ConfigKeyError(key + ".norm", "missing");
            const std::string norm = text(v["norm"], key + ".norm");
            QuasiNormSpec spec;
            if (norm == "euclidean") spec = QuasiNormSpec::euclidean();
            else if (norm == "power") spec = QuasiNormSpec::power(M);
            else if (norm == "koranyi") spec = QuasiNormSpec::koranyi();
            else throw ConfigKeyError(key + ".norm", "expected euclidean, power or koranyi");
            return HomogeneousGroup(weights(), spec, Q, name);
        }
    } catch (const ConfigKeyError&) {
        throw;
    } catch (const ConfigurationError& e) {
        throw ConfigKeyError(key, e.what());
    }
    throw ConfigKeyError(key + ".kind", "unknown group kind '" + kind + "'");
}

void parse_profiles(const json& v, std::uint64_t seed, std::vector<ProfileSpec>& out) {
    auto battery = [&] {
        for (auto& p : standard_battery()) out.push_back({p.name, p.f});
    };
    if (v.is_string()) {
        if (v.get<std::string>() != "battery") throw ConfigKeyError("profiles", "expected 'battery' or a list");
        battery();
        return;
    }
    if (!v.is_array()) throw ConfigKeyError("profiles", "expected a list");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string key = idx("profiles", i);
        const json& e = v[i];
        if (e.is_string() && e.get<std::string>() == "battery") {
            battery();
            continue;
        }
        if (e.is_string()) {
            try {
                out.push_back({e.get<std::string>(), make_profile(e.get<std::string>())});
            } catch (const ConfigurationError& err) {
                throw ConfigKeyError(key, err.what());
            }
            continue;
        }
        only_keys(e, key, {"name", "params", "label", "count", "real"});
        if (!e.contains("name")) throw ConfigKeyError(key + ".name", "missing");
        const std::string name = text(e["name"], key + ".name");
        if (name == "random") {
            int count = e.contains("count") ? integer(e["count"], key + ".count") : 1;
            if (count < 1) throw ConfigKeyError(key + ".count", "must be at least 1");
            bool real = e.contains("real") ? boolean(e["real"], key + ".real") : true;
            for (int j = 0; j < count; ++j)
                out.push_back({"random_" + std::to_string(j), random_profile(seed, static_cast<std::uint64_t>(j), real)});
            continue;
        }
        if (e.contains("count")) throw ConfigKeyError(key + ".count", "only random profiles take a count");
        if (e.contains("real")) throw ConfigKeyError(key + ".real", "only random profiles take 'real'");
        auto params = e.contains("params") ? scalar_params(e["params"], key + ".params") : Params{};
        std::string label = e.contains("label") ? text(e["label"], key + ".label") : name;
        try {
            out.push_back({label, make_profile(name, params)});
        } catch (const ConfigurationError& err) {
            throw ConfigKeyError(key, err.what());
        }
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!seen.insert(out[i].label).second) throw ConfigKeyError(idx("profiles", i), "duplicate label '" + out[i].label + "'");
}

std::vector<Params> expand_grid(const json& v, const std::string& key) {
    std::vector<Params> grid{Params{}};
    if (v.is_null()) return grid;
    if (!v.is_object()) throw ConfigKeyError(key, "expected a mapping");
    for (const auto& [name, values] : v.items()) {
        auto vals = numbers(values, key + "." + name);
        std::vector<Params> next;
        for (const auto& base : grid)
            for (double x : vals) {
                Params p = base;
                p[name] = x;
                next.push_back(p);
            }
        grid = std::move(next);
    }
    return grid;
}

// resolve_parameters messages start with the offending parameter name
std::string param_key(const std::string& base, const std::string& message, const Params& p) {
    auto colon = message.find(':');
    if (colon != std::string::npos) {
        std::string head = message.substr(0, colon);
        if (p.count(head) || head.find(' ') == std::string::npos) return base + "." + head;
    }
    return base;
}

std::string strip_key(const std::string& message) {
    auto colon = message.find(": ");
    if (colon != std::string::npos && message.substr(0, colon).find(' ') == std::string::npos)
        return message.substr(colon + 2);
    return message;
}

void parse_theorems(const json& v, SuiteConfig& c) {
    if (v.is_null()) return;
    if (!v.is_array()) throw ConfigKeyError("theorems", "expected a list");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string key = idx("theorems", i);
        TheoremSpec t;
        const json& e = v[i];
        if (e.is_string()) {
            t.id = e.get<std::string>();
            t.grid = {Params{}};
        } else {
            only_keys(e, key, {"id", "params"});
            if (!e.contains("id")) throw ConfigKeyError(key + ".id", "missing");
            t.id = text(e["id"], key + ".id");
            t.grid = expand_grid(e.contains("params") ? e["params"] : json(nullptr), key + ".params");
        }
        try {
            find_verifier(t.id);
        } catch (const ConfigurationError& err) {
            throw ConfigKeyError(e.is_string() ? key : key + ".id", err.what());
        }
        for (const auto& p : t.grid)
            for (const auto& g : c.groups) {
                try {
                    resolve_parameters(t.id, p, g);
                } catch (const std::exception& err) {
                    throw ConfigKeyError(param_key(key + ".params", err.what(), p), strip_key(err.what()));
                }
            }
        c.theorems.push_back(std::move(t));
    }
}

void parse_sharpness(const json& v, SuiteConfig& c) {
    if (v.is_null()) return;
    if (!v.is_array()) throw ConfigKeyError("sharpness", "expected a list");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string key = idx("sharpness", i);
        const json& e = v[i];
        only_keys(e, key, {"family", "verifier", "group", "params", "parameters", "width", "degree_index", "optimize"});
        SharpnessSpec s;
        for (const char* req : {"family", "verifier", "group"})
            if (!e.contains(req)) throw ConfigKeyError(key + "." + req, "missing");
        try {
            s.family = default_family(family_kind_from_string(text(e["family"], key + ".family")));
        } catch (const ConfigKeyError&) {
            throw;
        } catch (const ConfigurationError& err) {
            throw ConfigKeyError(key + ".family", err.what());
        }
        s.verifier = text(e["verifier"], key + ".verifier");
        s.group = text(e["group"], key + ".group");
        s.params = e.contains("params") ? scalar_params(e["params"], key + ".params") : Params{};
        if (e.contains("parameters")) s.family.parameters = numbers(e["parameters"], key + ".parameters");
        if (e.contains("width")) s.family.width = number(e["width"], key + ".width");
        if (e.contains("degree_index")) s.family.degree_index = integer(e["degree_index"], key + ".degree_index");
        if (e.contains("optimize")) {
            const json& o = e["optimize"];
            if (o.is_boolean()) {
                s.optimize = o.get<bool>();
            } else {
                only_keys(o, key + ".optimize", {"budget", "vary_width", "lower", "upper"});
                s.optimize = true;
                if (o.contains("budget")) s.options.budget = integer(o["budget"], key + ".optimize.budget");
                if (o.contains("vary_width")) s.options.vary_width = boolean(o["vary_width"], key + ".optimize.vary_width");
                if (o.contains("lower")) s.options.lower = number(o["lower"], key + ".optimize.lower");
                if (o.contains("upper")) s.options.upper = number(o["upper"], key + ".optimize.upper");
                if (s.options.budget < 1) throw ConfigKeyError(key + ".optimize.budget", "must be at least 1");
            }
        }
        auto g = std::find_if(c.groups.begin(), c.groups.end(), [&](const HomogeneousGroup& x) { return x.name() == s.group; });
        if (g == c.groups.end()) throw ConfigKeyError(key + ".group", "no group named '" + s.group + "' in groups");
        try {
            find_verifier(s.verifier);
        } catch (const ConfigurationError& err) {
            throw ConfigKeyError(key + ".verifier", err.what());
        }
        try {
            resolve_parameters(s.verifier, s.params, *g);
        } catch (const std::exception& err) {
            throw ConfigKeyError(param_key(key + ".params", err.what(), s.params), strip_key(err.what()));
        }
        try {
            for (double x : s.family.parameters) family_member(s.family, *g, s.verifier, s.params, x);
        } catch (const DomainError& err) {
            throw ConfigKeyError(key + ".parameters", err.what());
        } catch (const ConfigurationError& err) {
            std::string msg = err.what();
            std::string sub = msg.rfind("alpha:", 0) == 0 ? ".params.alpha"
                              : msg.rfind("width:", 0) == 0 ? ".width"
                              : msg.rfind("degree_index:", 0) == 0 ? ".degree_index"
                                                                    : ".family";
            throw ConfigKeyError(key + sub, strip_key(msg));
        }
        c.sharpness.push_back(std::move(s));
    }
}

}  // namespace

json parse_config_text(const std::string& text, bool json_syntax) {
    if (json_syntax) {
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigKeyError("config", std::string("JSON syntax error: ") + e.what());
        }
    }
    try {
        return yaml_to_json(YAML::Load(text));
    } catch (const YAML::Exception& e) {
        throw ConfigKeyError("config", std::string("YAML syntax error: ") + e.what());
    }
}

SuiteConfig build_config(const json& doc_in, const ConfigOverrides& ov) {
    json doc = doc_in.is_null() ? json::object() : doc_in;
    only_keys(doc, "", {"seed", "groups", "profiles", "theorems", "sharpness", "tolerances", "grid", "output"});
    SuiteConfig c;
    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_integer() || s.get<std::int64_t>() < 0) throw ConfigKeyError("seed", "expected a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    if (ov.seed) c.seed = *ov.seed;

    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        only_keys(t, "tolerances",
                  {"identity_rel", "margin_abs", "margin_rel", "mc_sigma", "operator_rel", "komatsu_rel", "unitary_rel",
                   "positivity_floor", "refine_tol"});
        auto& tol = c.verify.tol;
        auto set = [&](const char* k, double& dst) {
            if (!t.contains(k)) return;
            dst = number(t[k], std::string("tolerances.") + k);
            if (!(dst >= 0.0)) throw ConfigKeyError(std::string("tolerances.") + k, "must be non-negative");
        };
        set("identity_rel", tol.identity_rel);
        set("margin_abs", tol.margin_abs);
        set("margin_rel", tol.margin_rel);
        set("mc_sigma", tol.mc_sigma);
        set("operator_rel", tol.operator_rel);
        set("komatsu_rel", tol.komatsu_rel);
        set("unitary_rel", tol.unitary_rel);
        set("positivity_floor", tol.positivity_floor);
        set("refine_tol", tol.refine_tol);
    }
    if (ov.tol_identity) {
        if (!(*ov.tol_identity > 0.0)) throw ConfigKeyError("tol-identity", "must be positive");
        c.verify.tol.identity_rel = *ov.tol_identity;
    }

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        only_keys(g, "grid", {"N", "u_min", "u_max", "max_doublings", "n_cap"});
        if (g.contains("N")) c.grid.N = integer(g["N"], "grid.N");
        if (g.contains("u_min")) c.grid.u_min = number(g["u_min"], "grid.u_min");
        if (g.contains("u_max")) c.grid.u_max = number(g["u_max"], "grid.u_max");
        if (g.contains("max_doublings")) c.verify.grid.max_doublings = integer(g["max_doublings"], "grid.max_doublings");
        if (g.contains("n_cap")) c.verify.grid.n_cap = integer(g["n_cap"], "grid.n_cap");
    }
    if (ov.grid_n) c.grid.N = *ov.grid_n;
    if (c.grid.N < 16) throw ConfigKeyError("grid.N", "needs at least 16 nodes");
    if (!(c.grid.u_max > c.grid.u_min)) throw ConfigKeyError("grid.u_max", "must exceed grid.u_min");
    if (c.verify.grid.max_doublings < 0) throw ConfigKeyError("grid.max_doublings", "must be non-negative");
    if (c.verify.grid.n_cap < c.grid.N) throw ConfigKeyError("grid.n_cap", "must be at least grid.N");

    if (doc.contains("output")) {
        const json& o = doc["output"];
        only_keys(o, "output", {"dir", "report", "curves", "sharpness", "metadata"});
        if (o.contains("dir")) c.out_dir = text(o["dir"], "output.dir");
        if (o.contains("report")) c.report_file = text(o["report"], "output.report");
        if (o.contains("curves")) c.curves_file = text(o["curves"], "output.curves");
        if (o.contains("sharpness")) c.sharpness_file = text(o["sharpness"], "output.sharpness");
        if (o.contains("metadata")) c.metadata_file = text(o["metadata"], "output.metadata");
    }
    if (ov.out_dir) c.out_dir = *ov.out_dir;

    if (!doc.contains("groups") || (doc["groups"].is_string() && doc["groups"] == "standard")) {
        c.groups = standard_groups();
    } else {
        const json& g = doc["groups"];
        if (!g.is_array()) throw ConfigKeyError("groups", "expected 'standard' or a list");
        for (std::size_t i = 0; i < g.size(); ++i) c.groups.push_back(parse_group(g[i], idx("groups", i)));
        std::set<std::string> names;
        for (std::size_t i = 0; i < c.groups.size(); ++i)
            if (!names.insert(c.groups[i].name()).second)
                throw ConfigKeyError(idx("groups", i), "duplicate group name '" + c.groups[i].name() + "'");
    }

    if (!doc.contains("profiles"))
        for (auto& p : standard_battery()) c.profiles.push_back({p.name, p.f});
    else
        parse_profiles(doc["profiles"], c.seed, c.profiles);

    parse_theorems(doc.contains("theorems") ? doc["theorems"] : json(nullptr), c);
    if (!c.theorems.empty() && c.profiles.empty()) throw ConfigKeyError("profiles", "theorems need at least one profile");
    parse_sharpness(doc.contains("sharpness") ? doc["sharpness"] : json(nullptr), c);
    return c;
}

SuiteConfig load_config(const std::string& path, const ConfigOverrides& ov) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigKeyError("config", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    SuiteConfig c = build_config(parse_config_text(ss.str(), is_json), ov);
    c.source = path;
    return c;
}

}  // namespace hgineq
