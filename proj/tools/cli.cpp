#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kisin/errors.hpp"
#include "kisin/hom.hpp"
#include "kisin/maxmin.hpp"
#include "kisin/module_file.hpp"
#include "kisin/series_literal.hpp"
#include "kisin/simple.hpp"
#include "scenarios.hpp"

namespace kisin::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kMath = 1;
constexpr int kInput = 2;

json matrix_json(const SeriesMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(format_series(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json module_json(const PhiModule& m) {
    const FieldParams& fp = m.field()->params();
    json j;
    j["p"] = fp.p;
    j["f"] = fp.f;
    if (fp.f > 1) j["field_modulus"] = fp.modulus_string();
    j["e"] = m.e();
    if (m.r())
        j["r"] = *m.r();
    else
        j["r"] = "inf";
    j["rank"] = m.rank();
    j["matrix"] = matrix_json(m.frob());
    return j;
}

json report_json(const ValidationReport& rep) {
    json j;
    j["ok"] = rep.ok();
    j["checks"] = json::array();
    for (const auto& c : rep.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    j["divisors"] = rep.divisors;
    return j;
}

json seq_json(const SimpleSeq& s) { return s.period(); }

std::string rational_text(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool as_json = false;
    int prec = 0;
};

// Loads and validates; prints the report and returns kMath when invalid.
std::optional<PhiModule> load_valid(Context& c, const std::string& path) {
    PhiModule m = load_module_file(path);
    ValidationReport rep = validate(m);
    if (!rep.ok()) {
        if (c.as_json)
            c.out << json{{"error", "invalid module"}, {"report", report_json(rep)}}.dump(2) << "\n";
        else
            c.err << path << ": not an object of the category\n" << rep.to_string();
        return std::nullopt;
    }
    return m;
}

ExtremalMethod parse_method(const std::string& s) {
    if (s == "auto") return ExtremalMethod::Auto;
    if (s == "census") return ExtremalMethod::Census;
    if (s == "closed-form") return ExtremalMethod::ClosedForm;
    if (s == "fixpoint") return ExtremalMethod::Fixpoint;
    throw ParseError("unknown method '" + s + "'");
}

int cmd_validate(Context& c, const std::string& path) {
    PhiModule m = load_module_file(path);
    ValidationReport rep = validate(m);
    if (c.as_json) {
        json j = report_json(rep);
        j["module"] = module_json(m);
        c.out << j.dump(2) << "\n";
    } else {
        c.out << rep.to_string();
    }
    return rep.ok() ? kOk : kMath;
}

int cmd_extremal(Context& c, const std::string& path, bool is_max, const std::string& method) {
    auto m = load_valid(c, path);
    if (!m) return kMath;
    ExtremalOptions opts;
    opts.method = parse_method(method);
    ExtremalResult r = is_max ? max_r(*m, opts) : min_r(*m, opts);
    bool same = r.lattice.basis() == SeriesMatrix::identity(m->field(), m->rank());
    if (c.as_json) {
        json j;
        j["kind"] = is_max ? "max" : "min";
        j["method"] = method_name(r.method);
        j["input_is_extremal"] = same;
        j["module"] = module_json(r.module);
        j["lattice_basis"] = matrix_json(r.lattice.basis());
        j["inclusion"] = matrix_json(r.inclusion.mat());
        c.out << j.dump(2) << "\n";
    } else {
        c.out << emit_module(r.module, {text_annotation("kind", is_max ? "max" : "min"), text_annotation("input", path),
                                        text_annotation("method", method_name(r.method)),
                                        matrix_annotation("lattice_basis", r.lattice.basis()),
                                        matrix_annotation("inclusion", r.inclusion.mat())});
    }
    return kOk;
}

int cmd_dual(Context& c, const std::string& path) {
    auto m = load_valid(c, path);
    if (!m) return kMath;
    PhiModule d = dual(*m);
    if (c.as_json)
        c.out << json{{"kind", "dual"}, {"module", module_json(d)}}.dump(2) << "\n";
    else
        c.out << emit_module(d, {text_annotation("kind", "dual"), text_annotation("input", path)});
    return kOk;
}

int cmd_hom(Context& c, const std::string& a_path, const std::string& b_path, bool iso) {
    auto a = load_valid(c, a_path);
    if (!a) return kMath;
    auto b = load_valid(c, b_path);
    if (!b) return kMath;
    HomOptions opts;
    opts.precision = c.prec;
    auto basis = hom_space(*a, *b, opts);
    std::optional<IsoResult> ir;
    if (iso) ir = find_isomorphism(*a, *b);
    auto verdict = [](IsoVerdict v) {
        return v == IsoVerdict::Isomorphic ? "isomorphic" : v == IsoVerdict::NotIsomorphic ? "not isomorphic" : "undecided";
    };
    if (c.as_json) {
        json j;
        j["dimension"] = basis.size();
        j["basis"] = json::array();
        for (const auto& f : basis) j["basis"].push_back(matrix_json(f.mat()));
        if (ir) {
            j["isomorphism"] = verdict(ir->verdict);
            if (ir->witness) j["witness"] = matrix_json(ir->witness->mat());
        }
        c.out << j.dump(2) << "\n";
    } else {
        c.out << "dim over F_" << a->p() << ": " << basis.size() << "\n";
        for (size_t i = 0; i < basis.size(); ++i) c.out << "F" << i + 1 << " = " << basis[i].mat().to_string() << "\n";
        if (ir) {
            c.out << "isomorphism: " << verdict(ir->verdict) << "\n";
            if (ir->witness) c.out << "witness = " << ir->witness->mat().to_string() << "\n";
        }
    }
    return kOk;
}

void write_to(Context& c, const std::string& target, const std::string& text) {
    if (target == "-") {
        c.out << text;
        return;
    }
    std::ofstream f(target);
    if (!f) throw ParseError("cannot write " + target);
    f << text;
}

int cmd_poset(Context& c, const std::string& path, const std::string& dot, const std::string& csv,
              const std::string& method) {
    auto m = load_valid(c, path);
    if (!m) return kMath;
    CensusOptions opts;
    if (method == "walk")
        opts.method = CensusMethod::Walk;
    else if (method == "exhaustive")
        opts.method = CensusMethod::Exhaustive;
    else if (method != "auto")
        throw ParseError("unknown census method '" + method + "'");
    FrPoset p = enumerate_fr(*m, opts);
    int bound = 1 + m->rank() * window_bound(m->p(), m->er());
    if (!dot.empty()) write_to(c, dot, poset_dot(p));
    if (!csv.empty()) write_to(c, csv, poset_csv(p));
    if (dot == "-" || csv == "-") return kOk;
    if (c.as_json) {
        json j;
        j["size"] = p.size();
        j["longest_chain"] = p.longest_chain();
        j["chain_bound"] = bound;
        j["window"] = p.window;
        j["method"] = p.method == CensusMethod::Walk ? "walk" : "exhaustive";
        j["elements"] = json::array();
        for (int i = 0; i < p.size(); ++i)
            j["elements"].push_back({{"index", i},
                                     {"divisors", p.elements[i].elementary_divisors()},
                                     {"basis", matrix_json(p.elements[i].basis())},
                                     {"is_max", i == p.top()},
                                     {"is_min", i == p.bottom()},
                                     {"is_standard", i == p.standard()}});
        j["covers"] = json::array();
        for (int i = 0; i < p.size(); ++i)
            for (int k : p.covers[i]) j["covers"].push_back({i, k});
        c.out << j.dump(2) << "\n";
    } else {
        c.out << "elements: " << p.size() << "\n";
        c.out << "longest chain: " << p.longest_chain() << " (bound " << bound << ")\n";
        c.out << "window: u^" << p.window << " M .. u^-" << p.window << " M\n";
        c.out << "max: " << lattice_label(p.elements[p.top()]) << " " << p.elements[p.top()].basis().to_string() << "\n";
        c.out << "min: " << lattice_label(p.elements[p.bottom()]) << " " << p.elements[p.bottom()].basis().to_string()
              << "\n";
    }
    return kOk;
}

struct SimpleArgs {
    std::vector<int> n;
    int p = 2, f = 1, e = 1;
    std::string r = "inf";
    bool info = false, max = false, min = false, weights = false;
    std::vector<int> iso;
    int table = 0;
};

int cmd_simple(Context& c, const SimpleArgs& a) {
    std::optional<int> r;
    if (a.r != "inf") {
        try {
            r = std::stoi(a.r);
        } catch (const std::exception&) {
            throw ParseError("--r must be an integer or inf");
        }
    }
    if (a.table > 0) {
        if (!r) throw ParseError("--table needs a finite --r");
        std::vector<SimpleSeq> all;
        for (int d = 1; d <= a.table; ++d)
            for (auto& s : all_sequences(a.p, a.f, a.e, *r, d, true)) all.push_back(s);
        c.out << classification_csv(all);
        return kOk;
    }
    if (a.n.empty()) throw ParseError("--n is required");
    SimpleSeq s(a.p, a.f, a.e, r, a.n);
    json j;
    j["n"] = seq_json(s);
    if (a.max || a.min) {
        ClosedForm cf = a.max ? max_closed_form(s) : min_closed_form(s);
        j[a.max ? "max" : "min"] = seq_json(cf.m);
        j["q"] = cf.q;
        if (!c.as_json)
            c.out << (a.max ? "Max" : "Min") << ": (" << join(cf.m.period()) << ")  rescaling u^-q_i e_i, q = ("
                  << join(std::vector<int>(cf.q.begin(), cf.q.end())) << ")\n";
    } else if (a.weights) {
        auto w = tame_weights(s);
        j["weights"] = w;
        if (!c.as_json) c.out << "weights: " << join(w) << "\n";
    } else if (!a.iso.empty()) {
        SimpleSeq b(a.p, a.f, a.e, r, a.iso);
        auto sh = iso_simple(s, b);
        bool cls = s.in_S() && b.in_S() && same_max_class(s, b);
        if (sh)
            j["shift"] = *sh;
        else
            j["shift"] = nullptr;
        j["same_max_class"] = cls;
        if (!c.as_json) {
            c.out << "isomorphic: " << (sh ? "yes, shift " + std::to_string(*sh) : std::string("no")) << "\n";
            c.out << "same Max class: " << (cls ? "yes" : "no") << "\n";
        }
    } else {
        auto inv = seq_invariants(s);
        j["d"] = inv.d;
        j["s"] = inv.s;
        std::vector<std::string> ts;
        for (const auto& t : inv.t) ts.push_back(rational_text(t));
        j["t"] = ts;
        j["in_S"] = inv.in_S;
        j["in_Smax"] = inv.in_Smax;
        j["in_Smin"] = inv.in_Smin;
        if (!c.as_json) {
            c.out << "n: (" << join(s.period()) << ")\nd: " << inv.d << "\ns:";
            for (auto x : inv.s) c.out << " " << x;
            c.out << "\nt:";
            for (auto& t : ts) c.out << " " << t;
            c.out << "\nin S: " << inv.in_S << "\nin S_max: " << inv.in_Smax << "\nin S_min: " << inv.in_Smin << "\n";
        }
    }
    if (c.as_json) c.out << j.dump(2) << "\n";
    return kOk;
}

int cmd_repro(Context& c, const std::string& name, bool list) {
    if (list || name.empty()) {
        for (const auto& s : scenario_registry()) c.out << s.name << "  " << s.description << "\n";
        return kOk;
    }
    std::vector<const Scenario*> todo;
    if (name == "all") {
        for (const auto& s : scenario_registry()) todo.push_back(&s);
    } else {
        const Scenario* s = find_scenario(name);
        if (!s) throw ParseError("unknown scenario '" + name + "' (see repro --list)");
        todo.push_back(s);
    }
    bool all_ok = true;
    json arr = json::array();
    for (const Scenario* s : todo) {
        ScenarioReport rep = s->run();
        all_ok = all_ok && rep.passed();
        if (c.as_json) {
            json j;
            j["name"] = rep.name;
            j["passed"] = rep.passed();
            j["checks"] = json::array();
            for (const auto& ch : rep.checks)
                j["checks"].push_back(
                    {{"name", ch.name}, {"expected", ch.expected}, {"actual", ch.actual}, {"passed", ch.passed}});
            j["notes"] = rep.notes;
            arr.push_back(j);
        } else {
            c.out << "== " << rep.name << "\n";
            for (const auto& n : rep.notes) c.out << "   " << n << "\n";
            for (const auto& ch : rep.checks)
                c.out << (ch.passed ? "   ok   " : "   FAIL ") << ch.name << ": expected " << ch.expected << ", got "
                      << ch.actual << "\n";
            c.out << (rep.passed() ? "PASS " : "FAIL ") << rep.name << "\n";
        }
    }
    if (c.as_json) c.out << (todo.size() == 1 ? arr[0] : arr).dump(2) << "\n";
    return all_ok ? kOk : kMath;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Workbench for Frobenius modules over k[[u]]: validation, Max/Min, duals, Hom, posets."};
    app.name("kisin");
    app.require_subcommand(1);
    Context c{out, err};
    app.add_flag("--json", c.as_json, "machine-readable output");
    app.add_option("--prec", c.prec, "working precision (powers of u) for hom-space matrices");

    std::string path, path2, method = "auto", dot, csv, scenario;
    bool iso = false, list = false;
    SimpleArgs sa;

    auto* v = app.add_subcommand("validate", "check a module file");
    v->add_option("file", path, "module file")->required();
    auto* mx = app.add_subcommand("max", "Max^r of a module");
    mx->add_option("file", path, "module file")->required();
    mx->add_option("--method", method, "auto|census|closed-form|fixpoint");
    auto* mn = app.add_subcommand("min", "Min^r of a module");
    mn->add_option("file", path, "module file")->required();
    mn->add_option("--method", method, "auto|census|closed-form|fixpoint");
    auto* du = app.add_subcommand("dual", "dual module");
    du->add_option("file", path, "module file")->required();
    auto* ho = app.add_subcommand("hom", "F_p-basis of Hom(a, b)");
    ho->add_option("a", path, "source module file")->required();
    ho->add_option("b", path2, "target module file")->required();
    ho->add_flag("--iso", iso, "also search for an isomorphism");
    auto* po = app.add_subcommand("poset", "census of the lattices of height r");
    po->add_option("file", path, "module file")->required();
    po->add_option("--dot", dot, "write the Hasse diagram (- for stdout)");
    po->add_option("--csv", csv, "write the element table (- for stdout)");
    po->add_option("--method", method, "auto|walk|exhaustive");
    auto* si = app.add_subcommand("simple", "simple modules M(n)");
    si->add_option("--n", sa.n, "one period, comma separated")->delimiter(',');
    si->add_option("--p", sa.p, "characteristic")->required();
    si->add_option("--f", sa.f, "residue degree");
    si->add_option("--e", sa.e, "ramification index");
    si->add_option("--r", sa.r, "height (integer or inf)");
    auto* g = si->add_option_group("mode");
    g->add_flag("--info", sa.info, "invariants (default)");
    g->add_flag("--max", sa.max, "closed-form Max");
    g->add_flag("--min", sa.min, "closed-form Min");
    g->add_flag("--weights", sa.weights, "tame inertia weights");
    g->add_option("--iso", sa.iso, "compare with another sequence")->delimiter(',');
    g->add_option("--table", sa.table, "classification CSV for all periods up to this length");
    g->require_option(0, 1);
    auto* re = app.add_subcommand("repro", "run a named reproduction scenario");
    re->add_option("name", scenario, "scenario name, or all");
    re->add_flag("--list", list, "list scenarios");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInput;
    }

    try {
        if (*v) return cmd_validate(c, path);
        if (*mx) return cmd_extremal(c, path, true, method);
        if (*mn) return cmd_extremal(c, path, false, method);
        if (*du) return cmd_dual(c, path);
        if (*ho) return cmd_hom(c, path, path2, iso);
        if (*po) return cmd_poset(c, path, dot, csv, method);
        if (*si) return cmd_simple(c, sa);
        if (*re) return cmd_repro(c, scenario, list);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const InsufficientPrecision& e) {
        err << "precision: " << e.what() << "\n";
        return kInput;
    } catch (const MathError& e) {
        err << "math: " << e.what() << "\n";
        return kMath;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}

}  // namespace kisin::cli
