#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tlab/tables.hpp"
#include "tlab/tlx.hpp"
#include "tlab/verify.hpp"

using json = nlohmann::ordered_json;
using namespace tlab;

namespace {

const char* kind_str(ErrKind k) {
    switch (k) {
        case ErrKind::Input: return "input";
        case ErrKind::Solver: return "solver";
        default: return "internal";
    }
}

const char* kind_str(DoubleKind k) {
    switch (k) {
        case DoubleKind::Trivial: return "trivial";
        case DoubleKind::Twisted: return "twisted";
        default: return "generalised";
    }
}

json verdict_json(const Verdict& v) {
    json j;
    j["state"] = to_cstr(v.state);
    if (!v.witness.empty()) j["witness"] = v.witness;
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

TLXDocument load_document(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tlx(ss.str());
}

std::pair<int, int> parse_range(const std::string& s, const std::string& flag) {
    size_t dots = s.find("..");
    require(dots != std::string::npos && dots > 0 && dots + 2 < s.size(),
            flag + " must look like LO..HI, got \"" + s + "\"");
    try {
        size_t u1 = 0, u2 = 0;
        std::string lo_text = s.substr(0, dots), hi_text = s.substr(dots + 2);
        int lo = std::stoi(lo_text, &u1);
        int hi = std::stoi(hi_text, &u2);
        require(u1 == lo_text.size() && u2 == hi_text.size(),
                flag + ": trailing junk in \"" + s + "\"");
        return {lo, hi};
    } catch (const Error&) {
        throw;
    } catch (...) {
        fail_input(flag + ": bad range \"" + s + "\"");
    }
}

std::vector<int> parse_csv_ints(const std::string& s, size_t count, const std::string& flag) {
    std::vector<int> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(cur, &used));
            require(used == cur.size(), flag + ": trailing junk in \"" + cur + "\"");
        } catch (const Error&) {
            throw;
        } catch (...) {
            fail_input(flag + ": expected integers, got \"" + cur + "\"");
        }
    }
    require(out.size() == count,
            flag + " needs " + std::to_string(count) + " comma-separated integers");
    return out;
}

json torsion_body(const WhElement& tau) {
    json j;
    j["tau"] = tau.str();
    j["tau_inverse"] = tau.rep_inverse().str();
    j["verdict"] = verdict_json(wh_verdict(tau));
    return j;
}

int finish_with_verdict(const json& j) {
    emit(j);
    return j["verdict"]["state"] == "unknown" ? 3 : 0;
}

int cmd_torsion(const std::string& file, const std::string& map_name,
                const std::string& lens_csv, int t_cap) {
    json j;
    j["command"] = "torsion";
    ChainMap f = [&] {
        if (!lens_csv.empty()) {
            require(file.empty() && map_name.empty(),
                    "--lens replaces --file/--map, give one or the other");
            std::vector<int> p = parse_csv_ints(lens_csv, 4, "--lens");
            j["lens"] = {{"m", p[0]}, {"q", p[1]}, {"q2", p[2]}, {"a", p[3]}};
            auto g = lens_equivalence(p[0], p[1], p[2], p[3], t_cap);
            require(g.has_value(), "no lens equivalence with these parameters");
            return *g;
        }
        require(!file.empty() && !map_name.empty(), "need --file and --map (or --lens)");
        j["file"] = file;
        j["map"] = map_name;
        return load_document(file).map(map_name);
    }();
    WhElement tau = torsion_map(f, t_cap);
    j.update(torsion_body(tau));
    return finish_with_verdict(j);
}

int cmd_verify(const SuiteOptions& opt, const std::string& m_text, const std::string& n_text) {
    SuiteReport r = run_suite(opt);
    json j;
    j["command"] = "verify";
    j["suite"] = r.suite;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["m"] = m_text;
    j["n"] = n_text;
    j["passed"] = r.passed;
    j["failed"] = r.failed;
    if (r.first_failure) {
        j["first_failure"] = {{"trial", r.first_failure->trial},
                              {"law", r.first_failure->law},
                              {"detail", r.first_failure->detail},
                              {"tlx", r.first_failure->tlx}};
    } else {
        j["first_failure"] = nullptr;
    }
    emit(j);
    return r.failed == 0 ? 0 : 1;
}

int cmd_double(const std::string& file, const std::string& name, int t_cap) {
    DoubleModel d = load_document(file).build_double(name, t_cap);
    json j;
    j["command"] = "double";
    j["file"] = file;
    j["name"] = name;
    j["kind"] = kind_str(d.kind);
    j["n"] = d.thick.n;
    j["tau"] = d.tau_polarised.str();
    j["alpha_torsion"] = d.alpha_torsion.str();
    j["u"] = d.u.str();
    j["verdict"] = verdict_json(wh_verdict(d.tau_polarised));
    return finish_with_verdict(j);
}

int cmd_table(int in_flag, int tate_flag, int psi_flag) {
    for (int v : {in_flag, tate_flag, psi_flag})
        require(v == 0 || v == 1, "table flags take 0 (group is =0) or 1 (group is !=0)");
    GroupProfile p{in_flag == 0, tate_flag == 0, psi_flag == 0};
    TableRow row = existence_answers(p);
    auto cell = [](const TableCell& c) {
        return json{{"answer", to_cstr(c.answer)}, {"dims", c.dims}};
    };
    json j;
    j["command"] = "table";
    j["profile"] = {{"In_zero", p.In_zero}, {"Tate_zero", p.Tate_zero}, {"psi_zero", p.psi_zero}};
    j["hs"] = cell(row.hs);
    j["hcob"] = cell(row.hcob);
    j["hs_hcob"] = cell(row.hs_hcob);
    emit(j);
    return 0;
}

int cmd_lens(int m, int q, int q2, int a, int t_cap) {
    json j;
    j["command"] = "lens";
    j["m"] = m;
    j["q"] = q;
    j["q2"] = q2;
    j["a"] = a;
    auto f = lens_equivalence(m, q, q2, a, t_cap);
    j["exists"] = f.has_value();
    if (!f) {
        emit(j);
        return 0;
    }
    j.update(torsion_body(torsion_map(*f, t_cap)));
    return finish_with_verdict(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Whitehead torsion workbench over Z[G]"};
    app.require_subcommand(1);

    auto* t = app.add_subcommand("torsion", "torsion of a chain equivalence");
    std::string t_file, t_map, t_lens;
    int t_cap = 16;
    t->add_option("--file", t_file, "TLX document");
    t->add_option("--map", t_map, "name of a map in the document");
    t->add_option("--lens", t_lens, "built-in lens equivalence: m,q,q2,a");
    t->add_option("--t-cap", t_cap, "Laurent solver window cap");

    auto* v = app.add_subcommand("verify", "run a randomized verification suite");
    SuiteOptions opt;
    std::string v_m = "2..9", v_n = "4..9";
    v->add_option("--suite", opt.suite, "calculus | split | theoremB | parity | doubles")
        ->required();
    v->add_option("--trials", opt.trials, "number of trials");
    v->add_option("--seed", opt.seed, "PRNG seed");
    v->add_option("--m", v_m, "cyclic order range LO..HI");
    v->add_option("--n", v_n, "formal dimension range LO..HI");
    v->add_option("--jobs", opt.jobs, "worker threads (never changes the report)");
    v->add_option("--t-cap", opt.t_cap, "Laurent solver window cap");

    auto* d = app.add_subcommand("double", "build a declared double and report its torsion");
    std::string d_file, d_name;
    int d_cap = 16;
    d->add_option("--file", d_file, "TLX document")->required();
    d->add_option("--name", d_name, "double declaration name")->required();
    d->add_option("--t-cap", d_cap, "Laurent solver window cap");

    auto* tb = app.add_subcommand("table", "existence answers for a group profile");
    int tb_in = 0, tb_tate = 0, tb_psi = 0;
    tb->add_option("--In", tb_in, "0 if I_n = 0, 1 otherwise")->required();
    tb->add_option("--tate", tb_tate, "0 if the Tate group vanishes, 1 otherwise")->required();
    tb->add_option("--psi", tb_psi, "0 if psi = 0, 1 otherwise")->required();

    auto* l = app.add_subcommand("lens", "lens space equivalence and its torsion");
    int l_m = 0, l_q = 0, l_q2 = 0, l_a = 0, l_cap = 16;
    l->add_option("--m", l_m, "cyclic order")->required();
    l->add_option("--q", l_q, "first rotation parameter")->required();
    l->add_option("--q2", l_q2, "second rotation parameter")->required();
    l->add_option("--a", l_a, "covering exponent s -> s^a")->required();
    l->add_option("--t-cap", l_cap, "Laurent solver window cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (t->parsed()) return cmd_torsion(t_file, t_map, t_lens, t_cap);
        if (v->parsed()) {
            auto [m_lo, m_hi] = parse_range(v_m, "--m");
            auto [n_lo, n_hi] = parse_range(v_n, "--n");
            opt.m_lo = m_lo;
            opt.m_hi = m_hi;
            opt.n_lo = n_lo;
            opt.n_hi = n_hi;
            return cmd_verify(opt, v_m, v_n);
        }
        if (d->parsed()) return cmd_double(d_file, d_name, d_cap);
        if (tb->parsed()) return cmd_table(tb_in, tb_tate, tb_psi);
        return cmd_lens(l_m, l_q, l_q2, l_a, l_cap);
    } catch (const Error& e) {
        json j;
        j["error"] = {{"kind", kind_str(e.kind())}, {"message", e.what()}};
        std::cerr << j.dump(2) << "\n";
        return e.kind() == ErrKind::Input ? 2 : 3;
    }
}
