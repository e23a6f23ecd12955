#include "stochnd/model_io.hh"

#include <fstream>
#include <set>

#include "stochnd/error.hh"

namespace stochnd {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
    throw Error(Errc::InvalidModel, (where.empty() ? "/" : where) + ": " + msg);
}

// Re-raises library errors from value construction with a JSON location.
template <class F>
auto located(const std::string& where, F&& build) {
    try {
        return build();
    } catch (const Error& e) {
        if (e.code() == Errc::InvalidModel) throw;
        bad(where, e.what());
    }
}

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : j.items()) {
        bool known = std::any_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; });
        if (!known) bad(where, "unexpected key '" + k + "'");
    }
}

const Json& member(const Json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) bad(where, std::string("missing key '") + key + "'");
    return j.at(key);
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

StateId state_of(const Space& sp, const Json& j, const std::string& where) {
    std::string name = as_string(j, where);
    auto s = sp.find(name);
    if (!s) bad(where, "unknown state '" + name + "'");
    return *s;
}

Partition blocks_of(const Json& j, const Space& sp, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of blocks");
    Partition out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string w = where + "/" + std::to_string(i);
        if (!j[i].is_array()) bad(w, "expected an array of state names");
        Block b;
        for (std::size_t k = 0; k < j[i].size(); ++k)
            b.push_back(state_of(sp, j[i][k], w + "/" + std::to_string(k)));
        out.push_back(std::move(b));
    }
    return out;
}

SubProb parse_measure(const Json& j, const Space& sp, const std::string& where) {
    if (!j.is_object()) bad(where, "a measure is an object from states to rationals");
    std::vector<std::pair<StateId, Rational>> masses;
    for (const auto& [k, v] : j.items()) {
        std::string w = where + "/" + k;
        auto s = sp.find(k);
        if (!s) bad(w, "unknown state '" + k + "'");
        std::string text = as_string(v, w);
        masses.emplace_back(*s, located(w, [&] { return parse_rational(text); }));
    }
    return located(where, [&] { return SubProb::from_states(sp, masses); });
}

MeasureSet parse_measure_set(const Json& j, const Space& sp, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of measures");
    std::vector<SubProb> members;
    for (std::size_t i = 0; i < j.size(); ++i)
        members.push_back(parse_measure(j[i], sp, where + "/" + std::to_string(i)));
    return MeasureSet(sp, std::move(members));
}

// Per-state entries of an object keyed by every state of the space.
template <class F>
auto per_state(const Json& j, const Space& sp, const std::string& where, F&& parse_one) {
    if (!j.is_object()) bad(where, "expected an object keyed by state");
    for (const auto& [k, v] : j.items())
        if (!sp.find(k)) bad(where + "/" + k, "unknown state '" + k + "'");
    std::vector<decltype(parse_one(j, where))> out;
    for (StateId s = 0; s < sp.size(); ++s) {
        const std::string& name = sp.name(s);
        if (!j.contains(name)) bad(where, "missing entry for state '" + name + "'");
        out.push_back(parse_one(j.at(name), where + "/" + name));
    }
    return out;
}

Json set_to_json(const MeasureSet& m) {
    Json out = Json::array();
    for (const auto& mu : m.members()) out.push_back(measure_to_json(mu));
    return out;
}

Json header(const char* kind, const Space& sp) {
    Json out;
    out["kind"] = kind;
    out["states"] = sp.states();
    if (!sp.is_discrete()) out["sigma"] = partition_to_json(sp, sp.atoms());
    return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidModel, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::InvalidModel, "byte " + std::to_string(e.byte) + ": malformed JSON");
    }
}

Model parse_model(const Json& j) {
    if (!j.is_object()) bad("", "a model is a JSON object");
    std::string kind = as_string(member(j, "", "kind"), "/kind");
    if (kind != "nlmp" && kind != "ef") bad("/kind", "kind must be \"nlmp\" or \"ef\"");
    if (kind == "nlmp")
        only_keys(j, "", {"kind", "states", "sigma", "labels", "kernels"});
    else
        only_keys(j, "", {"kind", "states", "sigma", "effectivity"});

    const Json& js = member(j, "", "states");
    if (!js.is_array()) bad("/states", "expected an array of state names");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < js.size(); ++i) {
        std::string w = "/states/" + std::to_string(i);
        std::string n = as_string(js[i], w);
        if (n.empty()) bad(w, "empty state name");
        if (!seen.insert(n).second) bad(w, "duplicate state '" + n + "'");
        names.push_back(std::move(n));
    }
    Space space = Space::discrete(names);
    if (j.contains("sigma")) {
        Partition atoms = blocks_of(j.at("sigma"), space, "/sigma");
        space = located("/sigma", [&] { return Space::with_atoms(names, std::move(atoms)); });
    }

    if (kind == "ef") {
        auto portfolio = per_state(
            member(j, "", "effectivity"), space, "/effectivity", [&](const Json& v, const std::string& w) {
                if (!v.is_array()) bad(w, "expected an array of generators");
                std::vector<MeasureSet> gens;
                for (std::size_t i = 0; i < v.size(); ++i)
                    gens.push_back(parse_measure_set(v[i], space, w + "/" + std::to_string(i)));
                return canonicalize(space, std::move(gens));
            });
        EffFn p = located("/effectivity", [&] { return EffFn(space, std::move(portfolio)); });
        return Model{space, std::nullopt, std::move(p)};
    }

    const Json& jl = member(j, "", "labels");
    if (!jl.is_array()) bad("/labels", "expected an array of labels");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < jl.size(); ++i)
        labels.push_back(as_string(jl[i], "/labels/" + std::to_string(i)));
    const Json& jk = member(j, "", "kernels");
    if (!jk.is_object()) bad("/kernels", "expected an object keyed by label");
    for (const auto& [k, v] : jk.items())
        if (std::find(labels.begin(), labels.end(), k) == labels.end())
            bad("/kernels/" + k, "kernel for undeclared label '" + k + "'");
    std::vector<Kernel> kernels;
    for (const auto& label : labels) {
        std::string w = "/kernels/" + label;
        if (!jk.contains(label)) bad("/kernels", "missing kernel for label '" + label + "'");
        auto images = per_state(jk.at(label), space, w, [&](const Json& v, const std::string& ws) {
            return parse_measure_set(v, space, ws);
        });
        kernels.push_back(located(w, [&] { return Kernel(space, std::move(images)); }));
    }
    Nlmp m = located("/labels", [&] { return Nlmp(space, labels, std::move(kernels)); });
    return Model{space, std::move(m), std::nullopt};
}

Model load_model(const std::filesystem::path& path) { return parse_model(read_json_file(path)); }

Json measure_to_json(const SubProb& mu) {
    Json out = Json::object();
    const Space& sp = mu.space();
    for (AtomId a = 0; a < sp.atom_count(); ++a)
        if (sgn(mu.mass(a)) != 0) out[sp.name(sp.atom(a).front())] = format_rational(mu.mass(a));
    return out;
}

Json to_json(const Nlmp& m) {
    Json out = header("nlmp", m.space());
    out["labels"] = m.labels();
    Json kernels = Json::object();
    for (std::size_t i = 0; i < m.labels().size(); ++i) {
        Json k = Json::object();
        for (StateId s = 0; s < m.space().size(); ++s)
            k[m.space().name(s)] = set_to_json(m.kernels()[i](s));
        kernels[m.labels()[i]] = std::move(k);
    }
    out["kernels"] = std::move(kernels);
    return out;
}

Json to_json(const EffFn& p) {
    Json out = header("ef", p.space());
    Json eff = Json::object();
    for (StateId s = 0; s < p.space().size(); ++s) {
        Json gens = Json::array();
        for (const auto& g : p(s).generators()) gens.push_back(set_to_json(g));
        eff[p.space().name(s)] = std::move(gens);
    }
    out["effectivity"] = std::move(eff);
    return out;
}

Json to_json(const Model& m) { return m.is_nlmp() ? to_json(*m.nlmp) : to_json(*m.ef); }

Json partition_to_json(const Space& space, const Partition& blocks) {
    Json out = Json::array();
    for (const auto& b : blocks) {
        Json names = Json::array();
        for (StateId s : b) names.push_back(space.name(s));
        out.push_back(std::move(names));
    }
    return out;
}

MeasurableMap parse_map(const Json& j, const Space& domain, const Space& codomain) {
    if (!j.is_object()) bad("", "a map file is a JSON object");
    only_keys(j, "", {"domain", "codomain", "map"});
    auto assignment = per_state(member(j, "", "map"), domain, "/map",
                                [&](const Json& v, const std::string& w) {
                                    return state_of(codomain, v, w);
                                });
    return located("/map", [&] { return MeasurableMap(domain, codomain, std::move(assignment)); });
}

Space parse_partition(const Json& j, const Space& base) {
    Partition blocks = blocks_of(j, base, "");
    return located("", [&] { return base.coarsen(std::move(blocks)); });
}

}  // namespace stochnd
