#include "gwtqft/cli.hpp"

#include <yaml-cpp/yaml.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "gwtqft/error.hpp"
#include "gwtqft/invariants.hpp"

namespace gwtqft {

namespace {

using json = nlohmann::ordered_json;

// ---- config reading ----

std::string where(const YAML::Node& n) {
    const auto m = n.Mark();
    if (m.is_null()) return "";
    return "line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ": ";
}

[[noreturn]] void bad(const YAML::Node& n, const std::string& msg) { throw Error(ErrorCode::ParseError, where(n) + msg); }

void check_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& what) {
    if (!n.IsMap()) bad(n, what + " must be a mapping");
    for (const auto& kv : n) {
        const auto k = kv.first.as<std::string>();
        if (!allowed.count(k)) bad(kv.first, "unknown key '" + k + "' in " + what);
    }
}

const YAML::Node need(const YAML::Node& n, const std::string& key, const std::string& what) {
    const YAML::Node v = n[key];
    if (!v) bad(n, what + " needs '" + key + "'");
    return v;
}

Rational rat(const YAML::Node& n) {
    if (!n.IsScalar()) bad(n, "expected a rational number");
    try {
        return parse_rational(n.Scalar());
    } catch (const Error& e) {
        std::string m = e.what();
        const std::string prefix = std::string(error_code_name(e.code())) + ": ";
        if (m.rfind(prefix, 0) == 0) m = m.substr(prefix.size());
        bad(n, m);
    }
}

long integer(const YAML::Node& n) {
    const Rational r = rat(n);
    if (!is_integer(r)) bad(n, "expected an integer");
    return to_long(r);
}

RationalVector vec(const YAML::Node& n) {
    if (!n.IsSequence()) bad(n, "expected a list of rationals");
    RationalVector v;
    for (const auto& x : n) v.push_back(rat(x));
    return v;
}

RationalMatrix matrix(const YAML::Node& n, std::size_t rows_if_empty = 0) {
    if (!n.IsSequence()) bad(n, "expected a matrix (list of rows)");
    if (n.size() == 0) return RationalMatrix(rows_if_empty, 0);
    std::vector<RationalVector> rows;
    for (const auto& r : n) {
        rows.push_back(vec(r));
        if (rows.back().size() != rows.front().size()) bad(r, "rows have different lengths");
    }
    return RationalMatrix::from_rows(rows);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// ---- report values ----

struct Ctx {
    GWData data;
    std::optional<RelModStructure> structure;
    json structure_report;
    std::string base_dir;
    int digits = 12;
    std::uint64_t seed = 1;
};

json cyc(const Ctx& c, const Cyclotomic& v) {
    json j{{"exact", v.reduced().exact_string()}, {"decimal", v.approx_string(c.digits)}};
    if (const auto r = v.as_rational()) j["rational"] = to_string(*r);
    return j;
}

json vecj(const RationalVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json matj(const RationalMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vecj(m.row(i)));
    return a;
}

json ledger(const ValidationReport& r) {
    json a = json::array();
    for (const auto& e : r.entries) {
        json x{{"id", e.id}, {"name", e.name}, {"pass", e.pass}};
        if (!e.witness.empty()) x["witness"] = e.witness;
        a.push_back(x);
    }
    return a;
}

const RelModStructure& need_structure(const Ctx& c) {
    if (!c.structure) throw Error(ErrorCode::ValidationFailure, "this task needs a valid structure");
    return *c.structure;
}

// ---- tasks ----

json task_check(Ctx& c, const YAML::Node&) {
    json r;
    const auto in = check_input(*c.data);
    r["input_ledger"] = ledger(in);
    try {
        r["effective_metric"] = matj(effective_metric(*c.data));
    } catch (const Error& e) {
        r["effective_metric"] = e.what();
    }
    bool ok = in.all_pass();
    if (!c.structure_report.is_null()) {
        r["structure_ledger"] = c.structure_report["ledger"];
        ok = ok && c.structure.has_value();
    }
    r["all_pass"] = ok;
    if (!ok) r["status"] = "validation_failed";
    return r;
}

json task_constants(Ctx& c, const YAML::Node&) {
    const auto& s = need_structure(c);
    std::mt19937_64 rng(c.seed);
    const auto p1 = s.sample_generic(rng);
    const auto p2 = s.sample_generic(rng);
    const auto k = s.constants(p1, p2);
    json r;
    r["probe"] = vecj(p1);
    r["second_probe"] = vecj(p2);
    r["delta_plus"] = cyc(c, k.delta_plus);
    r["delta_minus"] = cyc(c, k.delta_minus);
    r["zeta"] = cyc(c, k.zeta);
    r["script_D"] = cyc(c, k.sqrt_zeta);
    r["zeta_equals_product"] = k.zeta == k.delta_plus * k.delta_minus;
    r["matrix_agrees"] = true;  // constants() throws otherwise
    const auto fr = s.check_free_realization(p1);
    r["free_realization"] = ledger(fr);
    if (!fr.all_pass()) r["status"] = "validation_failed";
    return r;
}

json task_hopf(Ctx& c, const YAML::Node& p) {
    check_keys(p, {"circle", "open", "circle_parity", "open_parity"}, "hopf");
    const auto l1 = vec(need(p, "circle", "hopf")), l2 = vec(need(p, "open", "hopf"));
    const int p1 = p["circle_parity"] ? static_cast<int>(integer(p["circle_parity"])) : 0;
    const int p2 = p["open_parity"] ? static_cast<int>(integer(p["open_parity"])) : 0;
    const auto m = open_hopf(verma(c.data, l1, p1), verma(c.data, l2, p2)).as_scalar();
    if (!m) throw Error(ErrorCode::NotScalar, "open Hopf link is not scalar");
    const Cyclotomic closed = open_hopf_closed_form(*c.data, l1, p1, l2, p2);
    return json{{"matrix", cyc(c, *m)}, {"closed_form", cyc(c, closed)}, {"equal", *m == closed}};
}

ParsedWord load_word(const Ctx& c, const YAML::Node& p, const std::string& what) {
    if (p["word"] && p["text"]) bad(p, what + " takes either 'word' or 'text'");
    if (p["text"]) return parse_word(p["text"].as<std::string>());
    const auto file = need(p, "word", what).as<std::string>();
    return parse_word(read_file((std::filesystem::path(c.base_dir) / file).string()));
}

Module colour_module(const Ctx& c, const std::string& name, const ColourSpec& s) {
    if (s.weight.size() != c.data->r()) throw Error(ErrorCode::ShapeMismatch, "colour " + name + " has the wrong length");
    return s.kind == ColourSpec::Kind::OneDim ? one_dim(c.data, s.weight, s.parity) : verma(c.data, s.weight, s.parity);
}

json link_json(const LinkData& ld) {
    json comps = json::array();
    for (std::size_t i = 0; i < ld.components; ++i) comps.push_back(ld.colour[i]);
    json lk = json::array();
    for (const auto& row : ld.linking) lk.push_back(row);
    return json{{"components", comps}, {"linking", lk}};
}

json task_tangle(Ctx& c, const YAML::Node& p) {
    check_keys(p, {"word", "text"}, "tangle");
    const auto w = load_word(c, p, "tangle");
    ColourTable t;
    for (const auto& [name, s] : w.colours) {
        if (s.kind == ColourSpec::Kind::Kirby) throw Error(ErrorCode::UnsupportedObject, "kirby colours belong to surgery tasks");
        t[name] = colour_module(c, name, s);
    }
    json r;
    const auto out = validate_word(w.word);
    const CMatrix m = evaluate(w.word, t);
    r["shape"] = {m.rows(), m.cols()};
    if (const auto s = m.as_scalar()) r["scalar"] = cyc(c, *s);
    if (w.word.input.size() == 1 && out.size() == 1 && w.word.input[0] == out[0]) {
        r["cut"] = cyc(c, evaluate_cut(w.word, t));
        r["link"] = link_json(link_data(w.word));
    }
    return r;
}

json task_surgery(Ctx& c, const YAML::Node& p) {
    check_keys(p, {"presentation", "lambda", "classes", "word", "text", "m"}, "surgery");
    const auto& s = need_structure(c);
    SurgeryPresentation sp;
    std::string name;
    if (p["presentation"]) {
        name = p["presentation"].as<std::string>();
        if (name == "three_torus") {
            const auto cl = need(p, "classes", "surgery");
            if (!cl.IsSequence() || cl.size() != 3) bad(cl, "three_torus needs three classes");
            sp = three_torus(vec(cl[0]), vec(cl[1]), vec(cl[2]));
        } else {
            const auto l = vec(need(p, "lambda", "surgery"));
            if (name == "s3_empty") sp = s3_empty(s, l);
            else if (name == "s3_plus") sp = s3_plus(s, l);
            else if (name == "s3_minus") sp = s3_minus(s, l);
            else bad(p["presentation"], "unknown presentation '" + name + "'");
        }
    } else {
        const auto w = load_word(c, p, "surgery");
        sp.word = w.word;
        for (const auto& [n, spec] : w.colours) {
            if (spec.kind == ColourSpec::Kind::Kirby) sp.surgery_classes[n] = spec.weight;
            else sp.insertions[n] = colour_module(c, n, spec);
        }
        name = "word";
    }
    if (p["m"]) sp.signature_defect = integer(p["m"]);
    const auto res = cgp_invariant(s, sp);
    return json{{"presentation", name},
                {"value", cyc(c, res.value)},
                {"f_prime", cyc(c, res.f_prime)},
                {"surgery_components", res.surgery_components},
                {"signature", res.signature},
                {"link", link_json(res.link)}};
}

json task_verlinde(Ctx& c, const YAML::Node& p) {
    check_keys(p, {"genus", "beta", "insertions"}, "verlinde");
    const auto& s = need_structure(c);
    VerlindeRequest req;
    req.genus = static_cast<int>(integer(need(p, "genus", "verlinde")));
    req.beta = vec(need(p, "beta", "verlinde"));
    if (p["insertions"])
        for (const auto& i : p["insertions"]) {
            check_keys(i, {"weight", "parity"}, "insertion");
            req.insertions.push_back({vec(need(i, "weight", "insertion")), i["parity"] ? static_cast<int>(integer(i["parity"])) : 0});
        }
    return json{{"genus", req.genus}, {"value", cyc(c, verlinde_partition(s, req))}};
}

json task_euler(Ctx& c, const YAML::Node& p) {
    check_keys(p, {"genus"}, "euler");
    const auto& s = need_structure(c);
    const int g = static_cast<int>(integer(need(p, "genus", "euler")));
    json r{{"genus", g}, {"euler_characteristic", cyc(c, euler_characteristic(s, g))}};
    if (const auto d = state_space_dimension(s, g)) r["dimension"] = d->get_str();
    return r;
}

json task_bethe(Ctx& c, const YAML::Node& p) {
    check_keys(p, {"genus"}, "bethe");
    const auto& s = need_structure(c);
    const int g = static_cast<int>(integer(need(p, "genus", "bethe")));
    const auto b = bethe_check(s, g);
    json sols = json::array();
    for (std::size_t i = 0; i < b.solutions.size(); ++i)
        sols.push_back(json{{"v", vecj(b.solutions[i])}, {"handle_gluing", cyc(c, b.handle_gluing[i])}});
    json r{{"genus", g},
           {"solutions", sols},
           {"chi_via_bethe", cyc(c, b.chi_via_bethe)},
           {"chi_closed_form", cyc(c, b.chi_closed_form)},
           {"equal", b.equal}};
    if (!b.equal) r["status"] = "validation_failed";
    return r;
}

json task_gl11(Ctx& c, const YAML::Node& p) {
    check_keys(p, {"s", "t", "u", "genus"}, "gl11");
    const long s = integer(need(p, "s", "gl11")), t = integer(need(p, "t", "gl11"));
    const Rational u = rat(need(p, "u", "gl11"));
    const int g = static_cast<int>(integer(need(p, "genus", "gl11")));
    const Integer chi = gl11_chi(s, t, u, g);
    const auto gl = make_data(GWInput(RationalMatrix::from_rows({{0, 1}, {1, 0}}), RationalMatrix::from_rows({{1}, {0}})));
    const auto st = RelModStructure::build(gl, {Variant::Compact, gl11_lattice(s, t, u), false});
    const Cyclotomic e = euler_characteristic(st, g);
    json r{{"genus", g}, {"chi", chi.get_str()}, {"euler_characteristic", cyc(c, e)}, {"equal", e == Cyclotomic(Rational(chi))}};
    if (!r["equal"].get<bool>()) r["status"] = "validation_failed";
    return r;
}

const std::map<std::string, std::function<json(Ctx&, const YAML::Node&)>>& task_table() {
    static const std::map<std::string, std::function<json(Ctx&, const YAML::Node&)>> t{
        {"check", task_check},   {"constants", task_constants}, {"hopf", task_hopf},
        {"tangle", task_tangle}, {"surgery", task_surgery},     {"verlinde", task_verlinde},
        {"euler", task_euler},   {"bethe", task_bethe},         {"gl11", task_gl11}};
    return t;
}

// ---- rendering ----

void render_text(const json& j, std::ostream& out, int indent) {
    const std::string pad(indent, ' ');
    auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto simple = [](const json& v) {
        if (v.is_primitive()) return true;
        if (v.is_object() && v.contains("exact") && v.contains("decimal")) return true;
        if (v.is_array()) {
            for (const auto& x : v)
                if (!x.is_primitive() && !(x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); })))
                    return false;
            return true;
        }
        return false;
    };
    auto inline_value = [&](const json& v) -> std::string {
        if (v.is_primitive()) return scalar(v);
        if (v.is_object() && v.contains("rational")) return v["rational"].get<std::string>();
        if (v.is_object()) return v["decimal"].get<std::string>() + "  [exact " + v["exact"].get<std::string>() + "]";
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            if (v[i].is_array()) {
                s += "[";
                for (std::size_t k = 0; k < v[i].size(); ++k) s += (k ? ", " : "") + scalar(v[i][k]);
                s += "]";
            } else s += scalar(v[i]);
        }
        return s + "]";
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (simple(v)) out << pad << k << ": " << inline_value(v) << '\n';
            else {
                out << pad << k << ":\n";
                render_text(v, out, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (simple(v)) out << pad << "- " << inline_value(v) << '\n';
            else {
                out << pad << "-\n";
                render_text(v, out, indent + 2);
            }
        }
    } else out << pad << scalar(j) << '\n';
}

}  // namespace

int run_config(const std::string& config_text, const std::string& base_dir, const RunOptions& opts, std::ostream& out,
               std::ostream& err) {
    Ctx ctx;
    ctx.base_dir = base_dir;
    json report;
    std::string format = "text";
    YAML::Node tasks;
    try {
        YAML::Node root;
        try {
            root = YAML::Load(config_text);
        } catch (const YAML::Exception& e) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(e.mark.line + 1) + ", column " +
                                                   std::to_string(e.mark.column + 1) + ": " + e.msg);
        }
        check_keys(root, {"kappa", "Q", "structure", "tasks", "output", "seed"}, "config");
        const RationalMatrix kappa = matrix(need(root, "kappa", "config"));
        const RationalMatrix q = matrix(need(root, "Q", "config"), kappa.rows());
        if (q.rows() != kappa.rows()) bad(root["Q"], "Q must have as many rows as kappa");
        ctx.data = make_data(GWInput(kappa, q));
        if (root["output"]) {
            check_keys(root["output"], {"format", "digits"}, "output");
            if (root["output"]["format"]) format = root["output"]["format"].as<std::string>();
            if (root["output"]["digits"]) ctx.digits = static_cast<int>(integer(root["output"]["digits"]));
        }
        if (root["seed"]) ctx.seed = static_cast<std::uint64_t>(integer(root["seed"]));
        if (opts.format) format = *opts.format;
        if (opts.digits) ctx.digits = *opts.digits;
        if (opts.seed) ctx.seed = *opts.seed;
        if (format != "text" && format != "json") throw Error(ErrorCode::ParseError, "format must be text or json");
        if (ctx.digits < 1 || ctx.digits > 200) throw Error(ErrorCode::ParseError, "digits must be between 1 and 200");

        report["input"] = json{{"r", ctx.data->r()}, {"n", ctx.data->n()}, {"kappa", matj(kappa)}, {"Q", matj(q)}};
        report["seed"] = ctx.seed;

        if (const auto st = root["structure"]) {
            check_keys(st, {"compact", "kernel", "toral"}, "structure");
            if (st.size() != 1) bad(st, "structure takes exactly one of compact, kernel, toral");
            StructureSpec spec;
            const auto key = st.begin()->first.as<std::string>();
            const YAML::Node body = st.begin()->second;
            if (key == "kernel") {
                spec.variant = Variant::Kernel;
                check_keys(body, {"span", "rational"}, "kernel");
                spec.lattice = matrix(need(body, "span", "kernel"));
                spec.rational_span = body["rational"] && body["rational"].as<bool>();
            } else {
                spec.variant = key == "compact" ? Variant::Compact : Variant::Toral;
                spec.lattice = matrix(body);
            }
            const auto led = RelModStructure::assess(ctx.data, spec);
            json sr{{"variant", variant_name(spec.variant)}, {"lattice", matj(spec.lattice)}};
            sr["ledger"] = ledger(led);
            if (led.all_pass()) {
                ctx.structure = RelModStructure::build(ctx.data, spec);
                sr["order"] = ctx.structure->order().get_str();
                json f = json::array();
                for (const auto& d : ctx.structure->invariant_factors()) f.push_back(d.get_str());
                sr["invariant_factors"] = f;
                sr["status"] = "valid";
            } else {
                sr["status"] = "rejected";
                json fails = json::array();
                for (const auto& id : led.failures()) fails.push_back(id);
                sr["failed"] = fails;
            }
            ctx.structure_report = sr;
            report["structure"] = sr;
        }
        tasks = root["tasks"];
        if (tasks && !tasks.IsSequence()) bad(tasks, "tasks must be a list");
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 1;
    } catch (const YAML::Exception& e) {
        err << "ParseError: " << e.what() << '\n';
        return 1;
    }

    int code = 0;
    if (ctx.structure_report.is_object() && !ctx.structure) code = 2;
    json results = json::array();
    if (tasks) {
        for (const auto& t : tasks) {
            std::string name;
            YAML::Node params;
            if (t.IsScalar()) name = t.Scalar();
            else if (t.IsMap() && t.size() == 1) {
                name = t.begin()->first.as<std::string>();
                params = t.begin()->second;
            } else {
                err << "ParseError: " << where(t) << "a task is a name or a one-key mapping\n";
                return 1;
            }
            json entry{{"task", name}};
            const auto it = task_table().find(name);
            const auto start = std::chrono::steady_clock::now();
            try {
                if (it == task_table().end()) bad(t, "unknown task '" + name + "'");
                json r = it->second(ctx, params ? params : YAML::Node(YAML::NodeType::Map));
                const std::string status = r.contains("status") ? r["status"].get<std::string>() : "ok";
                r.erase("status");
                entry["status"] = status;
                entry["result"] = r;
                if (status == "validation_failed" && code == 0) code = 2;
            } catch (const Error& e) {
                const bool validation = e.code() == ErrorCode::ValidationFailure || e.code() == ErrorCode::HypothesisFailed;
                entry["status"] = validation ? "validation_failed" : "error";
                entry["error"] = e.what();
                if (!validation) code = 1;
                else if (code == 0) code = 2;
            } catch (const std::exception& e) {
                entry["status"] = "error";
                entry["error"] = e.what();
                code = 1;
            }
            if (opts.timing)
                entry["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            results.push_back(entry);
        }
    }
    report["tasks"] = results;
    report["exit_code"] = code;

    if (format == "json") out << report.dump(2) << '\n';
    else render_text(report, out, 0);
    return code;
}

}  // namespace gwtqft
