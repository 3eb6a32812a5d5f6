// snc-fano: verification and classification driver.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
// input (unreadable file, malformed JSON, schema violation, bad flags).

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sncfano/canonical.hpp"
#include "sncfano/dp2_classify.hpp"
#include "sncfano/json_io.hpp"
#include "sncfano/max3_search.hpp"
#include "sncfano/snc_fiber.hpp"

namespace {

using namespace sncfano;

enum class Status { Pass, Fail, Skip };

struct Check {
    std::string name;
    Status status = Status::Pass;
    Json witness;
};

struct Report {
    std::vector<std::string> command;
    std::vector<Check> checks;
    Json results = Json::object();
    std::vector<std::string> notes;

    void add(std::string name, bool passed, Json witness = nullptr) {
        checks.push_back({std::move(name), passed ? Status::Pass : Status::Fail, std::move(witness)});
    }
    void skip(std::string name, Json witness) { checks.push_back({std::move(name), Status::Skip, std::move(witness)}); }

    std::size_t count(Status s) const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == s; }));
    }
    int exit_status() const { return count(Status::Fail) == 0 ? 0 : 1; }

    Json to_json() const {
        Json checks_json = Json::array();
        for (const auto& c : checks) {
            const char* status = c.status == Status::Pass ? "pass" : c.status == Status::Fail ? "fail" : "skip";
            Json j{{"name", c.name}, {"status", status}};
            if (!c.witness.is_null()) j["witness"] = c.witness;
            checks_json.push_back(j);
        }
        Json out{{"command", command},
                 {"checks", checks_json},
                 {"results", results},
                 {"summary", {{"passed", count(Status::Pass)}, {"failed", count(Status::Fail)}, {"skipped", count(Status::Skip)}}},
                 {"exit_status", exit_status()}};
        if (!notes.empty()) out["notes"] = notes;
        return out;
    }
};

struct OutputMode {
    bool json = false;
    bool table = false;
    bool quiet = false;
};

void print_checks(const Report& r, std::ostream& os) {
    for (const auto& n : r.notes) os << "# " << n << "\n";
    for (const auto& c : r.checks) {
        const char* tag = c.status == Status::Pass ? "[PASS]" : c.status == Status::Fail ? "[FAIL]" : "[SKIP]";
        os << tag << " " << c.name;
        if (!c.witness.is_null()) os << "  " << c.witness.dump();
        os << "\n";
    }
    os << "summary: " << r.count(Status::Pass) << " passed, " << r.count(Status::Fail) << " failed, "
       << r.count(Status::Skip) << " skipped\n";
}

int emit(const Report& r, const OutputMode& mode, const std::string& table) {
    if (mode.quiet) return r.exit_status();
    if (mode.json) {
        std::cout << r.to_json().dump(2) << "\n";
    } else {
        if (mode.table && !table.empty()) std::cout << table;
        print_checks(r, std::cout);
    }
    return r.exit_status();
}

Json face_counts(const DualComplex& dc) {
    Json counts = Json::array();
    for (std::size_t m = 0; m < dc.faces.size(); ++m) counts.push_back(dc.face_count(m));
    return counts;
}

// ---- table rendering -------------------------------------------------------

std::string pair_text(const SurfacePair& p) {
    std::string out = "(" + p.surface.normalized().name() + ", ";
    for (std::size_t i = 0; i < p.boundary.size(); ++i) out += (i ? " u " : "") + p.boundary[i].label;
    return out + ")";
}

/// Components in table order: contraction type as in the classification
/// table, then surface, then boundary self-intersection.
std::vector<const Component*> table_order(const FiberComplex& f) {
    std::vector<const Component*> out;
    for (const auto& c : f.components) out.push_back(&c);
    const auto key = [](const Component* c) {
        const auto* p = c->surface_pair();
        Int self = 0;
        for (const auto& b : p->boundary) self += self_intersection(b.cls);
        return std::tuple(contraction_rank(classify_contraction(*c)), p->surface.normalized().name(), self);
    };
    std::stable_sort(out.begin(), out.end(), [&](auto* a, auto* b) { return key(a) < key(b); });
    return out;
}

std::string generic_fiber_name(const FiberComplex& f, Int degree) {
    if (degree == 9) return "P2";
    if (degree != 8) return "";
    // F1 and P1xP1 share the degree; the components decide, as in the table
    bool all_ruled = true, index_one = false;
    for (const auto& c : f.components) {
        all_ruled = all_ruled && classify_contraction(c) == ContractionType::E1;
        const auto* p = c.surface_pair();
        index_one = index_one || (p->surface.kind() == SurfaceKind::Hirzebruch && p->surface.index() == 1);
    }
    return all_ruled && index_one ? "F1" : "P1xP1";
}

std::string dp2_table(const std::vector<FiberComplex>& fibers) {
    std::ostringstream os;
    os << std::left << std::setw(4) << "#" << std::setw(56) << "components" << std::setw(70) << "contractions"
       << "X_eta (degree)\n";
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        const auto order = table_order(fibers[i]);
        std::string comps, targets;
        for (std::size_t k = 0; k < order.size(); ++k) {
            comps += (k ? " u " : "") + pair_text(*order[k]->surface_pair());
            const auto t = classify_contraction(*order[k]);
            targets += (k ? "; " : "") + std::string("f") + std::to_string(k + 1) + " " + std::string(to_string(t)) +
                       " -> " + std::string(contraction_target(t));
        }
        const auto degree = anticanonical_degree(fibers[i]);
        os << std::setw(4) << std::to_string(i + 1) << std::setw(56) << comps << std::setw(70) << targets
           << generic_fiber_name(fibers[i], degree) << " (" << degree << ")\n";
    }
    return os.str();
}

std::string max3_table(const std::vector<MaxSolution>& sols) {
    std::ostringstream os;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        os << "solution " << i + 1 << ":";
        for (const auto& c : sols[i].components) os << " " << c.to_string();
        os << "\n";
        for (const auto& c : sols[i].certificate)
            os << "  " << c.locus << "  " << std::setw(6) << std::left << c.surface << " " << std::setw(5)
               << to_string(c.identification) << (c.passed ? "d-semistable" : "NOT d-semistable") << "\n";
    }
    if (sols.empty()) os << "no solutions\n";
    return os.str();
}

// ---- commands --------------------------------------------------------------

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

FiberComplex load_fiber(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON in '" + path + "' at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    try {
        return fiber_from_json(j);
    } catch (const SchemaError& e) {
        throw InputError("schema violation in '" + path + "' at field " + (e.path().empty() ? "/" : e.path()) + ": " +
                         e.what());
    }
}

void check_simplex(Report& r, const FiberComplex& f) {
    try {
        const auto dc = build_dual_complex(f);
        const auto s = is_simplex(dc);
        r.add("is_simplex", s.is_simplex && s.dimension <= f.fiber_dim,
              {{"dimension", s.dimension}, {"face_counts", face_counts(dc)}});
    } catch (const Error& e) {
        r.add("is_simplex", false, {{"error", e.what()}});
    }
}

int cmd_check_fiber(Report& r, const std::string& path, const OutputMode& mode) {
    const auto f = load_fiber(path);
    const auto v = validate_fiber(f);
    Json violations = Json::array();
    for (const auto& x : v.violations) violations.push_back({{"code", x.code}, {"message", x.message}});
    r.add("validate_fiber", v.ok(), v.ok() ? Json(nullptr) : Json{{"violations", violations}});
    check_simplex(r, f);

    for (const auto& d : f.double_loci) {
        try {
            if (f.fiber_dim == 2) {
                const auto residual = triple_point_residual(f, d);
                r.add("triple_point " + d.id, residual == 0, {{"residual", residual}});
            } else if (f.fiber_dim == 3) {
                const auto has_data = f.component(d.a.component).bundle() && f.component(d.b.component).bundle();
                if (!has_data) {
                    r.skip("d_semistability " + d.id, {{"reason", "no threefold data on both sides"}});
                    continue;
                }
                const auto residual = dss_surface_residual(f, d);
                r.add("d_semistability " + d.id, residual.is_zero(),
                      {{"identification", std::string(to_string(d.identification))}, {"residual", residual.vec()}});
            }
        } catch (const Error& e) {
            r.add((f.fiber_dim == 2 ? "triple_point " : "d_semistability ") + d.id, false, {{"error", e.what()}});
        }
    }
    if (f.fiber_dim == 2 && v.ok()) {
        const auto degree = anticanonical_degree(f);
        r.results["anticanonical_degree"] = degree;
        r.results["generic_fiber"] = generic_fiber_name(f, degree);
    }
    if (v.ok()) r.results["canonical_form"] = to_json(canonical_form(f));
    return emit(r, mode, "");
}

int cmd_classify_dp2(Report& r, int n_max, const std::string& components, const OutputMode& mode) {
    Dp2SearchConfig cfg;
    cfg.n_max = n_max;
    if (components == "2") cfg.allow_components = {2};
    else if (components == "3") cfg.allow_components = {3};
    const auto fibers = enumerate_dp2(cfg);

    Json rows = Json::array();
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        const auto& f = fibers[i];
        const auto label = "fiber " + std::to_string(i + 1);
        const auto s = is_simplex(build_dual_complex(f));
        r.add(label + " is_simplex", s.is_simplex, {{"dimension", s.dimension}});
        bool tp = true;
        for (const auto& d : f.double_loci) tp = tp && check_triple_point(f, d);
        r.add(label + " triple_point", tp);
        Json contractions = Json::array();
        for (const auto* c : table_order(f)) {
            const auto t = classify_contraction(*c);
            contractions.push_back({{"component", c->id}, {"type", std::string(to_string(t))},
                                    {"target", std::string(contraction_target(t))}});
        }
        const auto degree = anticanonical_degree(f);
        rows.push_back({{"fiber", to_json(f)},
                        {"contractions", contractions},
                        {"anticanonical_degree", degree},
                        {"generic_fiber", generic_fiber_name(f, degree)}});
    }
    r.results["n_max"] = n_max;
    r.results["count"] = fibers.size();
    r.results["fibers"] = rows;
    return emit(r, mode, dp2_table(fibers));
}

int cmd_max3(Report& r, int bound, const std::string& cases, const OutputMode& mode) {
    Max3SearchConfig cfg;
    cfg.param_bound = bound;
    std::stringstream ss(cases);
    for (std::string tag; std::getline(ss, tag, ',');)
        if (!tag.empty()) cfg.case_filter.insert(tag);
    r.notes.push_back("assumes the families F, E2, D3, C2_1, C2_2 exhaust the components of a maximal fiber");
    const auto sols = search_maximal(cfg);

    Json out = Json::array();
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const auto f = sols[i].to_fiber();
        const auto label = "solution " + std::to_string(i + 1);
        const auto s = is_simplex(build_dual_complex(f));
        r.add(label + " is_simplex", s.is_simplex && s.dimension == 3, {{"dimension", s.dimension}});
        Json cert = Json::array();
        for (const auto& c : sols[i].certificate) {
            r.add(label + " d_semistability " + c.locus, c.passed);
            cert.push_back({{"locus", c.locus}, {"surface", c.surface},
                            {"identification", std::string(to_string(c.identification))}, {"passed", c.passed}});
        }
        Json comps = Json::array();
        for (const auto& c : sols[i].components) comps.push_back(sncfano::to_json(c));
        out.push_back({{"fiber", sncfano::to_json(f)}, {"components", comps}, {"certificate", cert}});
    }
    r.results["param_bound"] = bound;
    r.results["count"] = sols.size();
    r.results["solutions"] = out;
    return emit(r, mode, max3_table(sols));
}

int cmd_flag(Report& r, int n, int k, const OutputMode& mode) {
    const auto f = flag_degeneration(n, k);
    const auto dc = build_dual_complex(f);
    const auto s = is_simplex(dc);
    r.add("is_simplex", s.is_simplex && s.dimension == k, {{"dimension", s.dimension}, {"face_counts", face_counts(dc)}});
    const auto v = validate_fiber(f);
    r.add("validate_fiber", v.ok(), v.ok() ? Json(nullptr) : Json(v.summary()));
    r.results["fiber"] = to_json(f);
    return emit(r, mode, "");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semistable degenerations of Fano varieties: fiber checks and classification searches"};
    app.require_subcommand(1);
    OutputMode mode;
    auto* json_flag = app.add_flag("--json", mode.json, "Emit the report as JSON");
    auto* table_flag = app.add_flag("--table", mode.table, "Render results as a table");
    app.add_flag("--quiet", mode.quiet, "Print nothing; report through the exit status only");
    json_flag->excludes(table_flag);

    std::string path;
    auto* check = app.add_subcommand("check-fiber", "Validate a fiber JSON file and run every applicable check");
    check->add_option("path", path, "Fiber JSON file")->required();

    int n_max = 5;
    std::string components = "both";
    auto* dp2 = app.add_subcommand("classify-dp2", "Enumerate semistable degenerations of del Pezzo surfaces");
    dp2->add_option("--n-max", n_max, "Largest Hirzebruch index in the catalog")->check(CLI::NonNegativeNumber);
    dp2->add_option("--components", components, "Component counts to search")->check(CLI::IsMember({"2", "3", "both"}));

    int bound = 4;
    std::string cases;
    auto* max3 = app.add_subcommand("max3-search", "Search maximal degenerations of Fano threefolds");
    max3->add_option("--param-bound", bound, "Cap on every family parameter")->check(CLI::PositiveNumber);
    max3->add_option("--cases", cases, "Comma-separated family tags (F,E2,D3,C2_1,C2_2)");

    int dim = 0, k = 0;
    auto* flag = app.add_subcommand("flag-degeneration", "Fiber of the flag blow-up degeneration");
    flag->add_option("--dim", dim, "Fiber dimension (1..3)")->required();
    flag->add_option("--k", k, "Simplex dimension (0..dim)")->required();

    for (auto* sub : {check, dp2, max3, flag}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    Report report;
    for (int i = 1; i < argc; ++i) report.command.emplace_back(argv[i]);
    try {
        if (check->parsed()) return cmd_check_fiber(report, path, mode);
        if (dp2->parsed()) return cmd_classify_dp2(report, n_max, components, mode);
        if (max3->parsed()) return cmd_max3(report, bound, cases, mode);
        if (flag->parsed()) return cmd_flag(report, dim, k, mode);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sncfano::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
