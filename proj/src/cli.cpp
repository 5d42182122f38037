#include "evlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evlab/errors.hpp"
#include "evlab/gallery.hpp"
#include "evlab/lattice.hpp"
#include "evlab/numerics.hpp"
#include "evlab/oracles.hpp"
#include "evlab/principles.hpp"
#include "evlab/report.hpp"
#include "evlab/rng.hpp"

namespace evlab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kDefaultEdges = "0-1:1,0-2:1.5,0-3:2";

const std::vector<std::string>& gallery_names() {
    static const std::vector<std::string> names = {
        "dirichlet", "neumann",   "periodic", "nonlocal_symmetric",
        "thermostat", "graph",    "odd_order", "delay"};
    return names;
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

// --param k=v accumulates into a map; duplicate keys keep the last value.
std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const std::string& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
            throw InvalidParam("--param expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        try {
            size_t used = 0;
            const double v = std::stod(kv.substr(eq + 1), &used);
            if (used != kv.size() - eq - 1)
                throw InvalidParam("--param value for '" + key + "' is not a number");
            out[key] = v;
        } catch (const std::logic_error&) {
            throw InvalidParam("--param value for '" + key + "' is not a number");
        }
    }
    return out;
}

// Reserved --param keys override the classifier thresholds and never reach
// the operator builders.
Thresholds take_thresholds(std::map<std::string, double>& params) {
    Thresholds th;
    auto take = [&](const char* key, double* slot) {
        auto it = params.find(key);
        if (it != params.end()) {
            *slot = it->second;
            params.erase(it);
        }
    };
    take("eps_cls", &th.eps_cls_rel);
    take("eps_cls_rel", &th.eps_cls_rel);
    take("uniform_lo", &th.uniform_lo);
    take("uniform_hi", &th.uniform_hi);
    take("divergent_ratio", &th.divergent_ratio);
    return th;
}

// Edge grammar: comma-separated a-b:length, vertices nonnegative integers.
std::vector<Edge> parse_edges(const std::string& spec) {
    std::vector<Edge> edges;
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string tok = spec.substr(pos, comma - pos);
        const auto dash = tok.find('-');
        const auto colon = tok.find(':', dash == std::string::npos ? 0 : dash + 1);
        if (dash == std::string::npos || colon == std::string::npos)
            throw InvalidParam("--edges expects a-b:length items, got '" + tok + "'");
        Edge e;
        try {
            e.a = std::stoi(tok.substr(0, dash));
            e.b = std::stoi(tok.substr(dash + 1, colon - dash - 1));
            e.length = std::stod(tok.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw InvalidParam("--edges item '" + tok + "' is not numeric");
        }
        if (e.a < 0 || e.b < 0 || !(e.length > 0.0))
            throw InvalidParam("--edges item '" + tok + "' needs vertices >= 0 and length > 0");
        edges.push_back(e);
        pos = comma + 1;
    }
    if (edges.empty()) throw InvalidParam("--edges parsed to an empty list");
    return edges;
}

std::vector<int> parse_n_list(const std::string& spec) {
    std::vector<int> ns;
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string tok = spec.substr(pos, comma - pos);
        try {
            size_t used = 0;
            ns.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw InvalidParam("--n-list item '" + tok + "' is not an integer");
        } catch (const std::logic_error&) {
            throw InvalidParam("--n-list item '" + tok + "' is not an integer");
        }
        pos = comma + 1;
    }
    if (ns.empty()) throw InvalidParam("--n-list parsed to an empty list");
    return ns;
}

Json params_json(const std::map<std::string, double>& params) {
    Json j = Json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j;
}

Json thresholds_json(const Thresholds& th) {
    Json j = Json::object();
    j["eps_cls_rel"] = th.eps_cls_rel;
    j["uniform_lo"] = th.uniform_lo;
    j["uniform_hi"] = th.uniform_hi;
    j["divergent_ratio"] = th.divergent_ratio;
    return j;
}

Json window_json(const Window& w) { return Json::array({w.lo, w.hi}); }

std::string csv_path_for(const std::string& out) {
    if (out.size() >= 5 && out.compare(out.size() - 5, 5, ".json") == 0)
        return out.substr(0, out.size() - 5) + ".csv";
    return out + ".csv";
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

MuClass classify_margins(const MarginReport& m, const Thresholds& th) {
    const double theta = classification_threshold(m, th);
    if (m.lower_margin > theta) return MuClass::strong_positive;
    if (m.upper_margin < -theta) return MuClass::strong_negative;
    return MuClass::mixed;
}

// Collects predicted-verdict notes of every operator a command touches, in
// first-use order, deduplicated; these become the report's citations block.
class NoteBook {
public:
    void add(const std::string& note) {
        if (note.empty()) return;
        for (const auto& s : notes_)
            if (s == note) return;
        notes_.push_back(note);
    }
    Json json() const {
        Json arr = Json::array();
        for (const auto& s : notes_) arr.push_back(s);
        return arr;
    }

private:
    std::vector<std::string> notes_;
};

int finish(Json& doc, const std::string& out, double t0, int code) {
    write_report(doc, out, now_ms() - t0);
    return code;
}

// ---------------------------------------------------------------- gallery --

int cmd_gallery(bool as_json, const std::string& out) {
    const double t0 = now_ms();
    const std::vector<Edge> edges = parse_edges(kDefaultEdges);

    if (!as_json) {
        std::string text;
        char line[256];
        std::snprintf(line, sizeof line, "%-20s %-14s %5s  %-9s %-9s %s\n", "name", "kind", "n",
                      "max", "antimax", "params");
        text += line;
        for (const auto& name : gallery_names()) {
            GalleryOperator op = build_named_at(name, {}, edges, default_n(name));
            std::string ps;
            for (const auto& [k, v] : op.params) {
                char num[32];
                std::snprintf(num, sizeof num, "%g", v);
                if (!ps.empty()) ps += ", ";
                ps += k + "=" + num;
            }
            if (ps.empty()) ps = "-";
            std::snprintf(line, sizeof line, "%-20s %-14s %5d  %-9s %-9s %s\n", op.name.c_str(),
                          grid_kind_name(op.grid.kind), op.grid.n,
                          verdict_name(op.predicted.uniform_max),
                          verdict_name(op.predicted.uniform_antimax), ps.c_str());
            text += line;
        }
        if (out.empty())
            std::cout << text;
        else
            write_text_file(out, text);
        return 0;
    }

    Json config = Json::object();
    config["command"] = "gallery";
    config["json"] = true;
    config["out"] = out;
    Json doc = make_report(config);
    NoteBook notes;
    for (const auto& name : gallery_names()) {
        GalleryOperator op = build_named_at(name, {}, edges, default_n(name));
        Json rec = Json::object();
        rec["name"] = op.name;
        rec["kind"] = grid_kind_name(op.grid.kind);
        rec["n"] = op.grid.n;
        rec["params"] = params_json(op.params);
        rec["lambda0_shift"] = op.lambda0;
        rec["m1"] = op.continuum_m1;
        rec["m2"] = op.continuum_m2;
        rec["uniform_max"] = verdict_name(op.predicted.uniform_max);
        rec["uniform_antimax"] = verdict_name(op.predicted.uniform_antimax);
        doc["records"].push_back(rec);
        notes.add(op.predicted.notes);
    }
    doc["citations"] = notes.json();
    return finish(doc, out, t0, 0);
}

// ------------------------------------------------------------------- scan --

int cmd_scan(const std::string& op_name, std::map<std::string, double> params, int n,
             double mu_min, double mu_max, int steps, const std::string& edges_str,
             std::uint64_t seed, const std::string& out) {
    const double t0 = now_ms();
    const Thresholds th = take_thresholds(params);
    const std::vector<Edge> edges = parse_edges(edges_str);
    const int n_used = n > 0 ? n : default_n(op_name);
    GalleryOperator op = build_named_at(op_name, params, edges, n_used);

    Json config = Json::object();
    config["command"] = "scan";
    config["op"] = op_name;
    config["params"] = params_json(params);
    config["n"] = n_used;
    config["mu_min"] = mu_min;
    config["mu_max"] = mu_max;
    config["steps"] = steps;
    config["edges"] = edges_str;
    config["thresholds"] = thresholds_json(th);
    config["seed"] = seed;
    config["out"] = out;
    Json doc = make_report(config);

    const ScanReport sc = scan(op, mu_min, mu_max, steps, th);

    std::string csv = std::string(kCsvHeader) + "\n";
    size_t ic = 0, is = 0;
    while (ic < sc.mu_values.size() || is < sc.skipped.size()) {
        const bool take_skip = is < sc.skipped.size() &&
                               (ic >= sc.mu_values.size() || sc.skipped[is] < sc.mu_values[ic]);
        Json rec = Json::object();
        if (take_skip) {
            rec["mu"] = sc.skipped[is];
            rec["lower_margin"] = nullptr;
            rec["upper_margin"] = nullptr;
            rec["c_hat"] = nullptr;
            rec["classification"] = mu_class_name(MuClass::skipped_near_spectrum);
            csv += csv_number(sc.skipped[is]) + ",,,," +
                   mu_class_name(MuClass::skipped_near_spectrum) + "\n";
            ++is;
        } else {
            const ScanPoint& p = sc.points[ic];
            rec["mu"] = p.mu;
            rec["lower_margin"] = p.margins.lower_margin;
            rec["upper_margin"] = p.margins.upper_margin;
            rec["c_hat"] = p.c_hat;
            rec["classification"] = mu_class_name(p.cls);
            csv += csv_number(p.mu) + "," + csv_number(p.margins.lower_margin) + "," +
                   csv_number(p.margins.upper_margin) + "," + csv_number(p.c_hat) + "," +
                   mu_class_name(p.cls) + "\n";
            ++ic;
        }
        doc["records"].push_back(rec);
    }

    doc["windows"]["lambda0"] = sc.lambda0;
    doc["windows"]["gap"] = sc.gap;
    doc["windows"]["zone"] = sc.zone;
    doc["windows"]["right"] = window_json(sc.right_window);
    doc["windows"]["left"] = window_json(sc.left_window);

    // A side is judged only when it carries a prediction and classified
    // points: "holds" needs a nonempty strong window at lambda0, "fails"
    // forbids any strong point of the matching sign on that side.
    int code = 0;
    for (const char* side : {"right", "left"}) {
        const bool right = side == std::string("right");
        const Verdict pred = right ? op.predicted.uniform_max : op.predicted.uniform_antimax;
        int classified = 0, strong = 0;
        for (const ScanPoint& p : sc.points) {
            if ((p.mu > sc.lambda0) != right) continue;
            ++classified;
            if (p.cls == (right ? MuClass::strong_positive : MuClass::strong_negative)) ++strong;
        }
        const bool evaluated = pred != Verdict::untested && classified > 0;
        bool consistent = true;
        if (evaluated) {
            const Window& w = right ? sc.right_window : sc.left_window;
            consistent = pred == Verdict::holds ? !w.empty() : strong == 0;
        }
        Json v = Json::object();
        v["side"] = side;
        v["prediction"] = verdict_name(pred);
        v["classified_points"] = classified;
        v["evaluated"] = evaluated;
        v["consistent"] = consistent;
        doc["verdicts"].push_back(v);
        if (evaluated && !consistent) code = 3;
    }

    NoteBook notes;
    notes.add(op.predicted.notes);
    doc["citations"] = notes.json();
    if (!out.empty()) write_text_file(csv_path_for(out), csv);
    return finish(doc, out, t0, code);
}

// ----------------------------------------------------------------- refine --

int cmd_refine(const std::string& op_name, std::map<std::string, double> params,
               double probe_mu, std::string n_list_str, const std::string& edges_str,
               std::uint64_t seed, const std::string& out) {
    const double t0 = now_ms();
    const Thresholds th = take_thresholds(params);
    const std::vector<Edge> edges = parse_edges(edges_str);
    if (n_list_str.empty()) n_list_str = op_name == "graph" ? "8,16,32,64" : "50,100,200,400";
    const std::vector<int> ns = parse_n_list(n_list_str);

    Json config = Json::object();
    config["command"] = "refine";
    config["op"] = op_name;
    config["params"] = params_json(params);
    config["probe_mu"] = probe_mu;
    config["n_list"] = Json(ns);
    config["edges"] = edges_str;
    config["thresholds"] = thresholds_json(th);
    config["seed"] = seed;
    config["out"] = out;
    Json doc = make_report(config);

    const RefinementStudy st = refinement_study(op_name, params, edges, probe_mu, ns, th);
    const RefinementRow& last = st.rows.back();
    GalleryOperator op = build_named_at(op_name, params, edges, last.n);

    std::string csv = std::string(kCsvHeader) + "\n";
    for (const RefinementRow& row : st.rows) {
        const MuClass cls = classify_margins(row.margins, th);
        Json rec = Json::object();
        rec["n"] = row.n;
        rec["lambda0"] = row.lambda0;
        rec["mu"] = st.probe_mu;
        rec["lower_margin"] = row.margins.lower_margin;
        rec["upper_margin"] = row.margins.upper_margin;
        rec["c_hat"] = row.c_hat;
        rec["classification"] = mu_class_name(cls);
        rec["right_width"] = row.right_width;
        rec["left_width"] = row.left_width;
        doc["records"].push_back(rec);
        csv += csv_number(st.probe_mu) + "," + csv_number(row.margins.lower_margin) + "," +
               csv_number(row.margins.upper_margin) + "," + csv_number(row.c_hat) + "," +
               mu_class_name(cls) + "\n";
    }

    doc["windows"]["lambda0"] = last.lambda0;
    doc["windows"]["right"] = Json::array({last.lambda0, last.lambda0 + last.right_width});
    doc["windows"]["left"] = Json::array({last.lambda0 - last.left_width, last.lambda0});

    Json v0 = Json::object();
    v0["check"] = "refinement";
    v0["verdict"] = refinement_verdict_name(st.verdict);
    doc["verdicts"].push_back(v0);

    // Prediction check on the probe's side of lambda0: uniformity means the
    // side's margin keeps its sign on every mesh and the finest/coarsest
    // ratio stays inside the stability band.
    const bool right = probe_mu > last.lambda0;
    const Verdict pred = right ? op.predicted.uniform_max : op.predicted.uniform_antimax;
    bool sign_ok = true;
    for (const RefinementRow& row : st.rows)
        sign_ok = sign_ok && (right ? row.margins.lower_margin > 0.0
                                    : row.margins.upper_margin < 0.0);
    double ratio = 0.0;
    if (sign_ok) {
        const double first = right ? st.rows.front().margins.lower_margin
                                   : st.rows.front().margins.upper_margin;
        const double lastm = right ? last.margins.lower_margin : last.margins.upper_margin;
        ratio = lastm / first;
    }
    const bool observed_uniform = sign_ok && ratio >= th.uniform_lo && ratio <= th.uniform_hi;
    const bool evaluated = pred != Verdict::untested;
    const bool consistent = !evaluated || ((pred == Verdict::holds) == observed_uniform);

    Json v1 = Json::object();
    v1["side"] = right ? "right" : "left";
    v1["prediction"] = verdict_name(pred);
    v1["observed_uniform"] = observed_uniform;
    v1["margin_ratio"] = ratio;
    v1["evaluated"] = evaluated;
    v1["consistent"] = consistent;
    doc["verdicts"].push_back(v1);

    NoteBook notes;
    notes.add(op.predicted.notes);
    doc["citations"] = notes.json();
    if (!out.empty()) write_text_file(csv_path_for(out), csv);
    return finish(doc, out, t0, consistent ? 0 : 3);
}

// ------------------------------------------------------------------ check --

struct SuiteContext {
    std::uint64_t seed = 42;
    NoteBook* notes = nullptr;
    std::vector<Edge> edges;

    GalleryOperator op(const std::string& name) const {
        GalleryOperator o = build_named_at(name, {}, edges, default_n(name));
        notes->add(o.predicted.notes);
        return o;
    }
};

void suite_core(const SuiteContext& cx, Json& records, bool* pass) {
    Rng rng(cx.seed);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng.index(19));
        DenseMatrix T(n);
        for (double& x : T.a) x = rng.uniform(-1.0, 1.0);
        RankOneFrame f;
        f.u.resize(n);
        f.phi.resize(n);
        f.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            f.u[i] = rng.uniform(0.2, 1.2);
            f.phi[i] = rng.uniform(0.2, 1.2);
            f.weights[i] = rng.uniform(0.2, 1.2);
        }
        const double v1 = phi_to_u_norm(T, f);
        const double v2 = margins(T, f).two_sided_constant;
        worst = std::max(worst, std::fabs(v1 - v2) / std::max(1.0, std::fabs(v1)));
    }
    const bool ok = worst <= 1e-12;
    Json rec = Json::object();
    rec["suite"] = "core";
    rec["check"] = "norm_identity";
    rec["trials"] = 100;
    rec["worst_rel"] = worst;
    rec["ok"] = ok;
    records.push_back(rec);
    *pass = *pass && ok;
}

void suite_resolvent_identity(const SuiteContext& cx, Json& records, bool* pass) {
    Rng rng(cx.seed);
    for (const auto& name : gallery_names()) {
        const GalleryOperator op = cx.op(name);
        const double l0 = eigenpair_near(op.matrix, op.lambda0).value;
        const double g = std::min(spectral_gap(op.matrix, l0), 1.0);
        const double mu = l0 + g * (0.25 + 0.5 * rng.canonical());
        const double mu0 = l0 + g * (0.25 + 0.5 * rng.canonical());
        double worst = 0.0;
        for (int order : {1, 2, 5})
            worst = std::max(worst, expansion_residual(op.matrix, mu, mu0, order));
        const bool ok = worst <= 1e-8;
        Json rec = Json::object();
        rec["suite"] = "resolvent-identity";
        rec["check"] = "expansion_" + name;
        rec["worst_rel"] = worst;
        rec["ok"] = ok;
        records.push_back(rec);
        *pass = *pass && ok;
    }
}

void suite_extension(const SuiteContext& cx, Json& records, bool* pass) {
    auto push = [&](const char* label, double value, const char* value_key, bool ok) {
        Json rec = Json::object();
        rec["suite"] = "extension";
        rec["check"] = label;
        rec[value_key] = value;
        rec["ok"] = ok;
        records.push_back(rec);
        *pass = *pass && ok;
    };

    const GalleryOperator neumann = cx.op("neumann");
    const auto ts = check_two_sided_extension(neumann, 1.0, {-0.3, 0.5, 2.0}, 3);
    push("two_sided_neumann", ts.max_ratio, "max_ratio", ts.ok);

    const auto odd = check_two_sided_extension(cx.op("odd_order"), 1.0, {-1.0}, 3);
    push("two_sided_odd_order", odd.max_ratio, "max_ratio", odd.ok);

    const auto del = check_two_sided_extension(cx.op("delay"), 0.5, {0.2, 1.0}, 3);
    push("two_sided_delay", del.max_ratio, "max_ratio", del.ok);

    const auto os = check_one_sided_extension(neumann, 1.0, Direction::right_upper, {2.0, 5.0});
    push("one_sided_right_neumann", os.K, "K", os.ok);

    const auto alt = check_one_sided_extension(neumann, -0.25, Direction::left_lower, {});
    push("alternating_left_neumann", alt.K, "K", alt.alternating_applicable && alt.alternating_ok);

    const auto rr = check_one_sided_refined(neumann, 1.0, Direction::right_upper, {2.0, 5.0},
                                            {100, 200, 400});
    push("one_sided_refined_neumann", rr.reports.back().K, "K", rr.all_ok && rr.uniform_K);
}

void suite_projection(const SuiteContext& cx, Json& records, bool* pass) {
    struct Case {
        const char* name;
        int m;
    };
    for (const Case& c : {Case{"neumann", 2}, Case{"odd_order", 2}, Case{"delay", 1}}) {
        const GalleryOperator op = cx.op(c.name);
        const double l0 = eigenpair_near(op.matrix, op.lambda0).value;
        for (double side : {1.0, -1.0}) {
            std::vector<double> mus;
            for (int k = 1; k <= 8; ++k) mus.push_back(l0 + side * std::pow(2.0, -k));
            const auto r = check_projection_convergence(op, c.m, mus);
            Json rec = Json::object();
            rec["suite"] = "projection";
            rec["check"] = std::string("projection_") + c.name + (side > 0 ? "_right" : "_left");
            rec["m"] = c.m;
            rec["final_over_initial"] = r.c.back() / r.c.front();
            rec["ok"] = r.ok;
            records.push_back(rec);
            *pass = *pass && r.ok;
        }
    }
}

void suite_powers(const SuiteContext& cx, Json& records, bool* pass) {
    for (const auto& name : gallery_names()) {
        const auto v = check_powers_theorem(cx.op(name));
        Json rec = Json::object();
        rec["suite"] = "powers";
        rec["check"] = "powers_" + name;
        rec["m"] = v.m;
        rec["ok"] = v.ok;
        records.push_back(rec);
        *pass = *pass && v.ok;
    }
}

void suite_characterization(const SuiteContext& cx, Json& records, bool* pass) {
    struct Case {
        const char* name;
        double mu1;
        bool expect_all;
    };
    for (const Case& c :
         {Case{"neumann", 1.0, true}, Case{"thermostat", 0.0, true}, Case{"dirichlet", 0.0, false}}) {
        const auto v = check_antimax_characterization(cx.op(c.name), c.mu1);
        const bool ok = v.consistent && v.all_true == c.expect_all &&
                        (c.expect_all || v.chat_growth > Thresholds{}.divergent_ratio);
        Json rec = Json::object();
        rec["suite"] = "characterization";
        rec["check"] = std::string("characterization_") + c.name;
        rec["all_true"] = v.all_true;
        rec["consistent"] = v.consistent;
        rec["chat_growth"] = v.chat_growth;
        rec["ok"] = ok;
        records.push_back(rec);
        *pass = *pass && ok;
    }
}

void suite_group_positivity(const SuiteContext&, Json& records, bool* pass) {
    const int n = 127;
    Vec f(n);
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        const double t = (x - 0.5) / 0.05;
        f[i] = std::exp(-t * t);
    }
    std::vector<double> grid;
    for (int i = 1; i <= 1000; ++i) grid.push_back(0.01 * i);

    const auto w1 = check_group_not_eventually_positive(1, n, grid, f);
    const bool ok1 = w1.found && w1.entry < -1e-6 && w1.cyclicity_excluded;
    Json r1 = Json::object();
    r1["suite"] = "group-positivity";
    r1["check"] = "group_ell1_witness";
    r1["t"] = w1.t;
    r1["entry"] = w1.entry;
    r1["cyclicity_excluded"] = w1.cyclicity_excluded;
    r1["ok"] = ok1;
    records.push_back(r1);

    const auto w0 = check_group_not_eventually_positive(0, n, grid, f);
    const bool ok0 = !w0.found && !w0.cyclicity_excluded;
    Json r0 = Json::object();
    r0["suite"] = "group-positivity";
    r0["check"] = "group_ell0_exhausted";
    r0["found"] = w0.found;
    r0["cyclicity_excluded"] = w0.cyclicity_excluded;
    r0["ok"] = ok0;
    records.push_back(r0);

    *pass = *pass && ok1 && ok0;
}

int cmd_check(const std::string& suite, std::uint64_t seed, const std::string& out) {
    const double t0 = now_ms();
    using SuiteFn = void (*)(const SuiteContext&, Json&, bool*);
    const std::vector<std::pair<std::string, SuiteFn>> all = {
        {"core", suite_core},
        {"resolvent-identity", suite_resolvent_identity},
        {"extension", suite_extension},
        {"projection", suite_projection},
        {"powers", suite_powers},
        {"characterization", suite_characterization},
        {"group-positivity", suite_group_positivity},
    };

    std::vector<std::pair<std::string, SuiteFn>> run;
    for (const auto& entry : all)
        if (suite == "all" || suite == entry.first) run.push_back(entry);
    if (run.empty()) throw InvalidParam("unknown suite '" + suite + "'");

    Json config = Json::object();
    config["command"] = "check";
    config["suite"] = suite;
    config["seed"] = seed;
    config["out"] = out;
    Json doc = make_report(config);

    NoteBook notes;
    SuiteContext cx;
    cx.seed = seed;
    cx.notes = &notes;
    cx.edges = parse_edges(kDefaultEdges);

    int code = 0;
    for (const auto& [name, fn] : run) {
        bool pass = true;
        fn(cx, doc["records"], &pass);
        Json v = Json::object();
        v["suite"] = name;
        v["pass"] = pass;
        doc["verdicts"].push_back(v);
        if (!pass) code = 3;
    }
    doc["citations"] = notes.json();
    return finish(doc, out, t0, code);
}

// ----------------------------------------------------------------- oracle --

double smooth_load(double y) { return 2.0 + 0.5 * std::sin(3.0 * y); }

// Green-kernel convolution; the integrand kinks at y = x, so each half is
// integrated separately.
double green_convolution(double x, const RealFn& f) {
    auto gk = [&](double y) {
        const double yy = std::min(std::max(y, 1e-300), 1.0 - 1e-16);
        return dirichlet_green(x, yy) * f(yy);
    };
    return simpson(gk, 0.0, x, 2000) + simpson(gk, x, 1.0, 2000);
}

// Successive convergence orders from errors on an increasing mesh list.
std::vector<double> observed_orders(const std::vector<int>& ns, const std::vector<double>& errs) {
    std::vector<double> orders;
    for (size_t i = 1; i < ns.size(); ++i)
        orders.push_back(std::log(errs[i - 1] / errs[i]) /
                         std::log(static_cast<double>(ns[i]) / ns[i - 1]));
    return orders;
}

int cmd_oracle(const std::string& name, const std::string& op_name,
               std::map<std::string, double> params, int n, const std::string& n_list_str,
               bool mu_given, double mu, const std::string& out) {
    const double t0 = now_ms();
    (void)take_thresholds(params);  // reserved keys never reach the builders

    Json config = Json::object();
    config["command"] = "oracle";
    config["name"] = name;
    config["op"] = op_name;
    config["params"] = params_json(params);
    Json doc;  // assembled per oracle once defaults are resolved
    NoteBook notes;

    auto reject_n_list = [&] {
        if (!n_list_str.empty())
            throw InvalidParam("oracle '" + name + "' takes --n, not --n-list");
    };
    auto reject_n = [&] {
        if (n > 0) throw InvalidParam("oracle '" + name + "' takes --n-list, not --n");
    };
    auto reject_mu = [&] {
        if (mu_given && mu != 0.0)
            throw InvalidParam("oracle '" + name + "' is pinned at mu = 0");
    };

    auto order_oracle = [&](const std::string& want_op,
                            const std::function<double(const GalleryOperator&)>& sup_err) {
        reject_n();
        reject_mu();
        if (!op_name.empty() && op_name != want_op)
            throw InvalidParam("oracle '" + name + "' covers --op " + want_op);
        const std::vector<int> ns =
            n_list_str.empty() ? std::vector<int>{50, 100, 200} : parse_n_list(n_list_str);
        if (ns.size() < 2) throw InvalidParam("order measurement needs at least two meshes");
        config["n_list"] = Json(ns);
        config["mu"] = 0.0;
        config["out"] = out;
        doc = make_report(config);

        std::vector<double> errs;
        for (int nn : ns) {
            GalleryOperator op = build_named_at(want_op, params, {}, nn);
            notes.add(op.predicted.notes);
            errs.push_back(sup_err(op));
            Json rec = Json::object();
            rec["n"] = op.grid.n;
            rec["sup_error"] = errs.back();
            doc["records"].push_back(rec);
        }
        const std::vector<double> orders = observed_orders(ns, errs);
        const double observed = *std::min_element(orders.begin(), orders.end());
        const bool pass = observed >= 2.0 - 0.3;
        Json v = Json::object();
        v["name"] = name;
        v["declared_order"] = 2.0;
        v["observed_order"] = observed;
        v["orders"] = Json(orders);
        v["pass"] = pass;
        doc["verdicts"].push_back(v);
        doc["citations"] = notes.json();
        return finish(doc, out, t0, pass ? 0 : 3);
    };

    if (name == "dirichlet_green") {
        return order_oracle("dirichlet", [](const GalleryOperator& op) {
            const int nn = op.matrix.n;
            Vec fh(nn);
            for (int i = 0; i < nn; ++i) fh[i] = smooth_load(op.grid.coords[i]);
            const Vec v = matvec(resolvent(op.matrix, 0.0), fh);
            double e = 0.0;
            for (int i = 0; i < nn; ++i)
                e = std::max(e, std::fabs(v[i] - green_convolution(op.grid.coords[i], smooth_load)));
            return e;
        });
    }

    if (name == "thermostat_zero") {
        const double beta = params.count("beta") ? params.at("beta") : 0.2;
        return order_oracle("thermostat", [beta](const GalleryOperator& op) {
            const int nn = op.matrix.n;
            Vec fh(nn);
            for (int i = 0; i < nn; ++i) fh[i] = smooth_load(op.grid.coords[i]);
            const Vec v = matvec(resolvent(op.matrix, 0.0), fh);
            double e = 0.0;
            for (int i = 0; i < nn; ++i)
                e = std::max(e, std::fabs(v[i] - thermostat_resolvent_at_zero(
                                               smooth_load, op.grid.coords[i], beta)));
            return e;
        });
    }

    if (name == "periodic_first_order") {
        reject_n_list();
        if (!op_name.empty() && op_name != "odd_order")
            throw InvalidParam("oracle 'periodic_first_order' covers --op odd_order");
        if (params.count("ell") && params.at("ell") != 0.0)
            throw InvalidParam("oracle 'periodic_first_order' is the ell = 0 formula");
        params["ell"] = 0.0;
        const int nn = n > 0 ? n : 127;
        const double mu_used = mu_given ? mu : 1.0;
        config["n"] = nn;
        config["mu"] = mu_used;
        config["out"] = out;
        doc = make_report(config);

        GalleryOperator op = build_named_at("odd_order", params, {}, nn);
        notes.add(op.predicted.notes);
        auto wave = [](double y) {
            return 2.0 + 0.5 * std::sin(2.0 * kPi * y) + std::cos(4.0 * kPi * y) / 3.0;
        };
        // Formula first: its mu = 0 guard is a usage error, while a singular
        // discrete solve would surface as a numeric failure.
        Vec fh(op.matrix.n), ref(op.matrix.n);
        for (int i = 0; i < op.matrix.n; ++i) {
            fh[i] = wave(op.grid.coords[i]);
            ref[i] = periodic_first_order_resolvent(wave, op.grid.coords[i], mu_used);
        }
        const Vec v = matvec(resolvent(op.matrix, mu_used), fh);
        double e = 0.0;
        for (int i = 0; i < op.matrix.n; ++i) e = std::max(e, std::fabs(v[i] - ref[i]));
        Json rec = Json::object();
        rec["n"] = op.grid.n;
        rec["mu"] = mu_used;
        rec["sup_error"] = e;
        doc["records"].push_back(rec);

        const bool pass = e <= 1e-6;
        Json verdict = Json::object();
        verdict["name"] = name;
        verdict["bound"] = 1e-6;
        verdict["sup_error"] = e;
        verdict["pass"] = pass;
        doc["verdicts"].push_back(verdict);
        doc["citations"] = notes.json();
        return finish(doc, out, t0, pass ? 0 : 3);
    }

    if (name == "neumann_constant") {
        reject_n_list();
        const std::string target = op_name.empty() ? "neumann" : op_name;
        const int nn = n > 0 ? n : default_n(target);
        const double mu_used = mu_given ? mu : 0.5;
        config["op"] = target;
        config["n"] = nn;
        config["mu"] = mu_used;
        config["out"] = out;
        doc = make_report(config);

        GalleryOperator op = build_named_at(target, params, parse_edges(kDefaultEdges), nn);
        notes.add(op.predicted.notes);
        double worst_row = 0.0;
        for (int i = 0; i < op.matrix.n; ++i) {
            double s = 0.0;
            for (int j = 0; j < op.matrix.n; ++j) s += op.matrix.at(i, j);
            worst_row = std::max(worst_row, std::fabs(s));
        }
        if (worst_row > 1e-8 * std::max(1.0, max_abs(op.matrix)))
            throw InvalidParam("operator '" + target + "' does not annihilate constants");

        const double ref = neumann_constant_identity(mu_used);
        const Vec v = matvec(resolvent(op.matrix, mu_used), Vec(op.matrix.n, 1.0));
        double e = 0.0;
        for (double x : v) e = std::max(e, std::fabs(x - ref));
        Json rec = Json::object();
        rec["op"] = target;
        rec["n"] = op.grid.n;
        rec["mu"] = mu_used;
        rec["sup_error"] = e;
        doc["records"].push_back(rec);

        const bool pass = e <= 1e-8;
        Json verdict = Json::object();
        verdict["name"] = name;
        verdict["bound"] = 1e-8;
        verdict["sup_error"] = e;
        verdict["pass"] = pass;
        doc["verdicts"].push_back(verdict);
        doc["citations"] = notes.json();
        return finish(doc, out, t0, pass ? 0 : 3);
    }

    throw InvalidParam("unknown oracle '" + name + "'");
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"resolvent positivity laboratory"};
    app.require_subcommand(1);

    std::string op_name, oracle_name, suite = "all", n_list_str, out;
    std::string edges_str = kDefaultEdges;
    std::vector<std::string> param_strs;
    int n = 0, steps = 50;
    double mu_min = -0.5, mu_max = -0.01, probe_mu = 0.0, mu = 0.0;
    std::uint64_t seed = 42;
    bool as_json = false;

    CLI::App* g = app.add_subcommand("gallery", "list the operator catalogue");
    g->add_flag("--json", as_json, "emit the census as a JSON report");
    g->add_option("--out", out, "report path (stdout when omitted)");

    CLI::App* s = app.add_subcommand("scan", "classify resolvent margins over a mu grid");
    s->add_option("--op", op_name, "operator name")->required();
    s->add_option("--param", param_strs, "operator or threshold parameter k=v");
    s->add_option("--n", n, "mesh parameter (operator default when omitted)");
    s->add_option("--mu-min", mu_min, "grid start");
    s->add_option("--mu-max", mu_max, "grid end");
    s->add_option("--steps", steps, "grid points");
    s->add_option("--edges", edges_str, "graph topology a-b:length,...");
    s->add_option("--seed", seed, "echoed into the config block");
    s->add_option("--out", out, "report path; CSV lands next to it");

    CLI::App* r = app.add_subcommand("refine", "margin stability under mesh refinement");
    r->add_option("--op", op_name, "operator name")->required();
    r->add_option("--param", param_strs, "operator or threshold parameter k=v");
    r->add_option("--probe-mu", probe_mu, "probe point")->required();
    r->add_option("--n-list", n_list_str, "comma-separated meshes, ascending");
    r->add_option("--edges", edges_str, "graph topology a-b:length,...");
    r->add_option("--seed", seed, "echoed into the config block");
    r->add_option("--out", out, "report path; CSV lands next to it");

    CLI::App* c = app.add_subcommand("check", "run a structural check suite");
    c->add_option("--suite", suite,
                  "core | resolvent-identity | extension | projection | powers | "
                  "characterization | group-positivity | all");
    c->add_option("--seed", seed, "seed for the randomized suites");
    c->add_option("--out", out, "report path (stdout when omitted)");

    CLI::App* o = app.add_subcommand("oracle", "compare against a closed-form resolvent");
    o->add_option("--name", oracle_name,
                  "dirichlet_green | thermostat_zero | periodic_first_order | neumann_constant")
        ->required();
    o->add_option("--op", op_name, "operator name (oracle default when omitted)");
    o->add_option("--param", param_strs, "operator parameter k=v");
    o->add_option("--n", n, "single mesh");
    o->add_option("--n-list", n_list_str, "meshes for order measurement");
    CLI::Option* mu_opt = o->add_option("--mu,--probe-mu", mu, "resolvent point");
    o->add_option("--out", out, "report path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const auto params = parse_params(param_strs);
        if (g->parsed()) return cmd_gallery(as_json, out);
        if (s->parsed()) return cmd_scan(op_name, params, n, mu_min, mu_max, steps, edges_str, seed, out);
        if (r->parsed()) return cmd_refine(op_name, params, probe_mu, n_list_str, edges_str, seed, out);
        if (c->parsed()) return cmd_check(suite, seed, out);
        if (o->parsed())
            return cmd_oracle(oracle_name, op_name, params, n, n_list_str, mu_opt->count() > 0, mu, out);
    } catch (const InvalidParam& e) {
        std::cerr << "evlab: " << e.what() << "\n";
        return 1;
    } catch (const MuZero& e) {
        std::cerr << "evlab: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "evlab: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace evlab
