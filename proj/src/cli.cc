#include "stochnd/cli.hh"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stochnd/cospan.hh"
#include "stochnd/error.hh"
#include "stochnd/logic.hh"
#include "stochnd/model_io.hh"

namespace stochnd {

namespace fs = std::filesystem;

namespace {

// An input problem, tied to the file it came from when there is one.
struct Diagnostic {
    std::string file;
    Errc code;
    std::string message;
    std::optional<std::size_t> position;
};

[[noreturn]] void reject(const std::string& file, Errc code, const std::string& message) {
    throw Diagnostic{file, code, message, std::nullopt};
}

template <class F>
auto from_file(const std::string& file, F&& f) {
    try {
        return f();
    } catch (const SyntaxError& e) {
        throw Diagnostic{file, e.code(), e.what(), e.position()};
    } catch (const Error& e) {
        throw Diagnostic{file, e.code(), e.what(), std::nullopt};
    }
}

struct Options {
    std::string format = "json";
    std::optional<std::string> label;
};

class Session {
  public:
    Session(std::ostream& out, std::ostream& err, Options opt)
        : out_(out), err_(err), opt_(std::move(opt)) {}

    void emit(const Json& j) const {
        if (opt_.format == "json") {
            out_ << j.dump(2) << "\n";
            return;
        }
        for (const auto& [k, v] : j.items()) {
            out_ << k << ": ";
            if (v.is_string())
                out_ << v.get<std::string>();
            else
                out_ << v.dump();
            out_ << "\n";
        }
    }

    void emit_model(const Json& j) const { out_ << j.dump(2) << "\n"; }

    void diagnose(const Diagnostic& d) const {
        if (opt_.format == "json") {
            Json j;
            j["error"] = std::string(errc_name(d.code));
            j["file"] = d.file;
            if (d.position) j["position"] = *d.position;
            j["message"] = d.message;
            err_ << j.dump() << "\n";
        } else {
            err_ << "stochnd: " << (d.file.empty() ? "" : d.file + ": ") << d.message << "\n";
        }
    }

    const Options& options() const { return opt_; }

  private:
    std::ostream& out_;
    std::ostream& err_;
    Options opt_;
};

Model load(const std::string& path) {
    return from_file(path, [&] { return load_model(path); });
}

EffFn as_ef(const Model& m, const Options& opt, const std::string& file) {
    if (!m.is_nlmp()) return *m.ef;
    const Nlmp& n = *m.nlmp;
    if (opt.label) return from_file(file, [&] { return filter_generate(n.kernel(*opt.label)); });
    if (n.labels().size() != 1)
        reject(file, Errc::InvalidModel, "model has several labels; choose one with --label");
    return filter_generate(n.kernels().front());
}

const Kernel& single_kernel(const Model& m, const Options& opt, const std::string& file) {
    if (!m.is_nlmp()) reject(file, Errc::InvalidModel, "command needs an nlmp model");
    const Nlmp& n = *m.nlmp;
    if (opt.label) return *from_file(file, [&] { return &n.kernel(*opt.label); });
    if (n.labels().size() != 1)
        reject(file, Errc::InvalidModel, "model has several labels; choose one with --label");
    return n.kernels().front();
}

StateId state_named(const Space& sp, const std::string& name, const std::string& file) {
    auto s = sp.find(name);
    if (!s) reject(file, Errc::ForeignState, "unknown state '" + name + "'");
    return *s;
}

Space load_partition(const std::string& path, const Space& base) {
    return from_file(path, [&] { return parse_partition(read_json_file(path), base); });
}

// Loads a map file and checks any model paths it names against the ones
// given on the command line.
MeasurableMap load_map(const std::string& path, const std::string& dom_path, const Space& dom,
                       const std::string& cod_path, const Space& cod) {
    Json j = from_file(path, [&] { return read_json_file(path); });
    auto check = [&](const char* key, const std::string& given) {
        if (!j.is_object() || !j.contains(key)) return;
        if (!j[key].is_string()) reject(path, Errc::InvalidModel, std::string("/") + key + ": expected a path");
        fs::path named = j[key].get<std::string>();
        if (named.is_relative()) named = fs::path(path).parent_path() / named;
        std::error_code ec;
        if (!fs::equivalent(named, given, ec))
            reject(path, Errc::InvalidModel,
                   std::string("/") + key + ": map was written for " + named.string() +
                       ", not " + given);
    };
    check("domain", dom_path);
    check("codomain", cod_path);
    return from_file(path, [&] { return parse_map(j, dom, cod); });
}

Json names_of(const Space& sp, const StateSet& set) {
    Json out = Json::array();
    for (StateId s = 0; s < sp.size(); ++s)
        if (set[s]) out.push_back(sp.name(s));
    return out;
}

int cmd_validate(const Session& io, const std::string& path) {
    Model m = load(path);
    Json j;
    j["valid"] = true;
    j["kind"] = m.is_nlmp() ? "nlmp" : "ef";
    j["states"] = m.space.size();
    j["atoms"] = m.space.atom_count();
    if (m.is_nlmp())
        j["labels"] = m.nlmp->labels();
    else
        j["finitely_supported"] = m.ef->is_finitely_supported();
    io.emit(j);
    return 0;
}

int cmd_bisim(const Session& io, const std::string& path, const std::vector<std::string>& pairs) {
    Model m = load(path);
    const Space& sp = m.space;
    Relation greatest = m.is_nlmp() ? greatest_bisim(*m.nlmp) : greatest_ef_bisim(*m.ef);
    Json j;
    j["partition"] = partition_to_json(sp, greatest.classes());
    if (pairs.empty()) {
        io.emit(j);
        return 0;
    }
    std::vector<Relation::Pair> rel;
    Json jp = Json::array();
    bool all = true;
    for (const auto& text : pairs) {
        auto comma = text.find(',');
        if (comma == std::string::npos)
            reject("", Errc::InvalidModel, "--pairs expects s,t but got '" + text + "'");
        StateId s = state_named(sp, text.substr(0, comma), path);
        StateId t = state_named(sp, text.substr(comma + 1), path);
        rel.emplace_back(s, t);
        rel.emplace_back(t, s);
        bool related = greatest.contains(s, t);
        all = all && related;
        Json e;
        e["s"] = sp.name(s);
        e["t"] = sp.name(t);
        e["bisimilar"] = related;
        jp.push_back(std::move(e));
    }
    Relation r(sp, rel);
    j["pairs"] = std::move(jp);
    j["is_bisimulation"] = m.is_nlmp() ? is_state_bisim(*m.nlmp, r) : is_ef_state_bisim(*m.ef, r);
    io.emit(j);
    return all ? 0 : 1;
}

int cmd_event_bisim(const Session& io, const std::string& path, const std::string& part) {
    Model m = load(path);
    if (!m.is_nlmp()) reject(path, Errc::InvalidModel, "event bisimulation needs an nlmp model");
    Space coarser = load_partition(part, m.space);
    bool holds = from_file(part, [&] { return is_event_bisim(*m.nlmp, coarser); });
    Json j;
    j["event_bisimulation"] = holds;
    io.emit(j);
    return holds ? 0 : 1;
}

int cmd_subsystem(const Session& io, const std::string& path, const std::string& part) {
    Model m = load(path);
    EffFn p = as_ef(m, io.options(), path);
    Space coarser = load_partition(part, m.space);
    bool holds = from_file(part, [&] { return is_subsystem(p, coarser); });
    Json j;
    j["subsystem"] = holds;
    io.emit(j);
    return holds ? 0 : 1;
}

StateFormula formula_arg(const std::string& text) {
    return from_file("--formula", [&] { return parse_formula(text); });
}

int cmd_eval(const Session& io, const std::string& path, const std::string& text,
             const std::optional<std::string>& state) {
    Model m = load(path);
    EffFn p = as_ef(m, io.options(), path);
    StateFormula f = formula_arg(text);
    StateSet ext = eval_state(p, f);
    Json j;
    j["formula"] = to_string(f);
    if (!state) {
        j["extension"] = names_of(m.space, ext);
        io.emit(j);
        return 0;
    }
    StateId s = state_named(m.space, *state, path);
    j["state"] = *state;
    j["holds"] = static_cast<bool>(ext[s]);
    io.emit(j);
    return ext[s] ? 0 : 1;
}

int cmd_lequiv(const Session& io, const std::string& path) {
    Model m = load(path);
    EffFn p = as_ef(m, io.options(), path);
    auto trace = logical_equivalence_trace(p);
    Json j;
    j["partition"] = partition_to_json(m.space, trace.back().blocks);
    j["rounds"] = trace.size() - 1;
    io.emit(j);
    return 0;
}

int cmd_distinguish(const Session& io, const std::string& path, const std::string& s_name,
                    const std::string& t_name) {
    Model m = load(path);
    EffFn p = as_ef(m, io.options(), path);
    StateId s = state_named(m.space, s_name, path);
    StateId t = state_named(m.space, t_name, path);
    auto r = distinguish(p, s, t);
    Json j;
    if (std::holds_alternative<Equivalent>(r)) {
        j["equivalent"] = true;
        io.emit(j);
        return 0;
    }
    const auto& d = std::get<Distinction>(r);
    j["equivalent"] = false;
    j["formula"] = to_string(d.formula);
    j["satisfied_by"] = m.space.name(d.satisfied_by);
    io.emit(j);
    return 1;
}

int cmd_morphism(const Session& io, const std::string& a_path, const std::string& b_path,
                 const std::string& map_path, bool strong) {
    Model a = load(a_path);
    Model b = load(b_path);
    MeasurableMap f = load_map(map_path, a_path, a.space, b_path, b.space);
    Json j;
    bool holds = false;
    if (a.is_nlmp() && b.is_nlmp() && !strong) {
        if (a.nlmp->labels() != b.nlmp->labels())
            reject(b_path, Errc::InvalidModel, "label sets differ between the two models");
        holds = true;
        for (std::size_t i = 0; i < a.nlmp->labels().size(); ++i)
            holds = holds && is_nk_morphism(f, a.nlmp->kernels()[i], b.nlmp->kernels()[i]);
        j["check"] = "nk";
    } else {
        EffFn p = as_ef(a, io.options(), a_path);
        EffFn q = as_ef(b, io.options(), b_path);
        if (strong) {
            j["check"] = "strong";
            if (!f.is_surjective()) {
                j["morphism"] = false;
                j["reason"] = "NotSurjective";
                io.emit(j);
                return 1;
            }
            holds = is_strong_morphism(f, p, q);
        } else {
            j["check"] = "ef";
            holds = is_ef_morphism(f, p, q);
        }
    }
    j["morphism"] = holds;
    io.emit(j);
    return holds ? 0 : 1;
}

int cmd_transform(const Session& io, const std::string& path, const std::string& which) {
    Model m = load(path);
    if (which == "dual") {
        io.emit_model(to_json(dual_ef(as_ef(m, io.options(), path))));
        return 0;
    }
    const Kernel& k = single_kernel(m, io.options(), path);
    io.emit_model(to_json(which == "demonize" ? filter_generate(k) : angelize(k)));
    return 0;
}

int cmd_sum(const Session& io, const std::string& a_path, const std::string& b_path) {
    Model a = load(a_path);
    Model b = load(b_path);
    if (a.is_nlmp() && b.is_nlmp() && !io.options().label) {
        if (a.nlmp->labels() != b.nlmp->labels())
            reject(b_path, Errc::InvalidModel, "label sets differ between the two models");
        std::vector<Kernel> kernels;
        std::optional<Space> space;
        for (std::size_t i = 0; i < a.nlmp->labels().size(); ++i) {
            KernelSum ks = direct_sum(a.nlmp->kernels()[i], b.nlmp->kernels()[i]);
            space = ks.sum.space;
            kernels.push_back(std::move(ks.kernel));
        }
        if (!space) space = direct_sum(a.space, b.space).space;
        io.emit_model(to_json(Nlmp(*space, a.nlmp->labels(), std::move(kernels))));
        return 0;
    }
    EffSum s = sum_ef(as_ef(a, io.options(), a_path), as_ef(b, io.options(), b_path));
    io.emit_model(to_json(s.system));
    return 0;
}

int cmd_quotient(const Session& io, const std::string& path, const std::string& part) {
    Model m = load(path);
    EffFn p = as_ef(m, io.options(), path);
    Space blocks = load_partition(part, m.space);
    Relation alpha = Relation::from_partition(m.space, blocks.atoms());
    try {
        Quotient q = quotient(p, alpha);
        io.emit_model(to_json(q.system));
        return 0;
    } catch (const CongruenceError& e) {
        Json j;
        j["congruence"] = false;
        j["witness"] = {e.first(), e.second()};
        io.emit(j);
        return 1;
    }
}

Json map_json(const MeasurableMap& f) {
    Json out = Json::object();
    for (StateId s = 0; s < f.domain().size(); ++s) out[f.domain().name(s)] = f.codomain().name(f(s));
    return out;
}

int cmd_span(const Session& io, const std::string& p_path, const std::string& q_path,
             const std::string& m_path, const std::string& f_path, const std::string& g_path) {
    Model pm = load(p_path);
    Model qm = load(q_path);
    Model mm = load(m_path);
    MeasurableMap f = load_map(f_path, p_path, pm.space, m_path, mm.space);
    MeasurableMap g = load_map(g_path, q_path, qm.space, m_path, mm.space);
    Cospan c{as_ef(pm, io.options(), p_path), as_ef(qm, io.options(), q_path),
             as_ef(mm, io.options(), m_path), f, g};
    CospanReport report = verify_cospan(c);
    Json j;
    j["valid"] = report.valid();
    if (!report.valid()) {
        Json issues = Json::array();
        for (const auto& i : report.issues) {
            Json e;
            e["kind"] = std::string(issue_name(i.kind));
            e["leg"] = i.leg;
            e["state"] = i.state;
            if (i.partner) e["partner"] = *i.partner;
            issues.push_back(std::move(e));
        }
        j["issues"] = std::move(issues);
        io.emit(j);
        return 1;
    }
    SpanResult span = build_span(c);
    j["w"] = {{"states", span.w.states()}, {"sigma", partition_to_json(span.w, span.w.atoms())}};
    j["tau"] = to_json(span.tau);
    j["p_f"] = to_json(span.p_f);
    j["q_g"] = to_json(span.q_g);
    j["pi_s"] = map_json(span.pi_s);
    j["pi_t"] = map_json(span.pi_t);
    io.emit(j);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision procedures for nondeterministic labelled Markov processes and "
                 "stochastic effectivity functions over finite spaces."};
    app.name("stochnd");
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    std::string label;
    app.add_option("--label", label, "Label of an nlmp model to read as an effectivity function");

    std::string model, model_b, model_m, part, map, map_g, formula, s_name, t_name, state;
    std::vector<std::string> pairs;
    bool strong = false;

    auto* validate = app.add_subcommand("validate", "Check a model file");
    validate->add_option("model", model)->required();

    auto* bisim = app.add_subcommand("bisim", "Greatest bisimulation; optionally test pairs");
    bisim->add_option("model", model)->required();
    bisim->add_option("--pairs", pairs, "Pairs s,t to test");

    auto* event = app.add_subcommand("event-bisim", "Is a partition an event bisimulation");
    event->add_option("model", model)->required();
    event->add_option("--partition", part)->required();

    auto* subsys = app.add_subcommand("subsystem", "Is a partition a subsystem");
    subsys->add_option("model", model)->required();
    subsys->add_option("--partition", part)->required();

    auto* eval = app.add_subcommand("eval", "Evaluate a state formula");
    eval->add_option("model", model)->required();
    eval->add_option("--formula", formula)->required();
    auto* state_opt = eval->add_option("--state", state);

    auto* lequiv = app.add_subcommand("lequiv", "Logical equivalence partition");
    lequiv->add_option("model", model)->required();

    auto* dist = app.add_subcommand("distinguish", "Formula telling two states apart");
    dist->add_option("model", model)->required();
    dist->add_option("s", s_name)->required();
    dist->add_option("t", t_name)->required();

    auto* morph = app.add_subcommand("morphism", "Is a map a morphism");
    morph->add_option("domain", model)->required();
    morph->add_option("codomain", model_b)->required();
    morph->add_option("--map", map)->required();
    morph->add_flag("--strong", strong, "Check for a strong morphism");

    auto* dual = app.add_subcommand("dual", "Dual effectivity function");
    dual->add_option("model", model)->required();
    auto* demonize = app.add_subcommand("demonize", "Filter-generated effectivity function");
    demonize->add_option("model", model)->required();
    auto* angel = app.add_subcommand("angelize", "Angelic effectivity function");
    angel->add_option("model", model)->required();

    auto* sum = app.add_subcommand("sum", "Direct sum of two models");
    sum->add_option("a", model)->required();
    sum->add_option("b", model_b)->required();

    auto* quot = app.add_subcommand("quotient", "Quotient by a congruence");
    quot->add_option("model", model)->required();
    quot->add_option("--partition", part)->required();

    auto* span = app.add_subcommand("span", "Check a cospan and build its span");
    span->add_option("p", model)->required();
    span->add_option("q", model_b)->required();
    span->add_option("m", model_m)->required();
    span->add_option("--f", map)->required();
    span->add_option("--g", map_g)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    if (!label.empty()) opt.label = label;

    Session io(out, err, opt);
    try {
        if (validate->parsed()) return cmd_validate(io, model);
        if (bisim->parsed()) return cmd_bisim(io, model, pairs);
        if (event->parsed()) return cmd_event_bisim(io, model, part);
        if (subsys->parsed()) return cmd_subsystem(io, model, part);
        if (eval->parsed())
            return cmd_eval(io, model, formula,
                            state_opt->count() ? std::optional<std::string>(state) : std::nullopt);
        if (lequiv->parsed()) return cmd_lequiv(io, model);
        if (dist->parsed()) return cmd_distinguish(io, model, s_name, t_name);
        if (morph->parsed()) return cmd_morphism(io, model, model_b, map, strong);
        if (dual->parsed()) return cmd_transform(io, model, "dual");
        if (demonize->parsed()) return cmd_transform(io, model, "demonize");
        if (angel->parsed()) return cmd_transform(io, model, "angelize");
        if (sum->parsed()) return cmd_sum(io, model, model_b);
        if (quot->parsed()) return cmd_quotient(io, model, part);
        if (span->parsed()) return cmd_span(io, model, model_b, model_m, map, map_g);
    } catch (const Diagnostic& d) {
        io.diagnose(d);
        return 2;
    } catch (const Error& e) {
        io.diagnose(Diagnostic{"", e.code(), e.what(), std::nullopt});
        return 2;
    }
    return 2;
}

}  // namespace stochnd
